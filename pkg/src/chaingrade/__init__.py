"""chaingrade: grading engine for multimodal reasoning chains.

Aggregates multi-rater step labels into gold data, drives pluggable judge
backends over fine-grained verification and scoring tasks, and computes the
step/chain correctness metrics and correlation statistics around them.
"""

__version__ = "0.1.0"
