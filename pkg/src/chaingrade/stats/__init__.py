from .core import (
    F1Result,
    KERNEL,
    Orientation,
    PairedSample,
    UndefinedStatisticError,
    accuracy,
    count_pairs,
    midranks,
    per_label_f1,
    somers_d,
    spearman_rho,
)

__all__ = [
    "F1Result",
    "KERNEL",
    "Orientation",
    "PairedSample",
    "UndefinedStatisticError",
    "accuracy",
    "count_pairs",
    "midranks",
    "per_label_f1",
    "somers_d",
    "spearman_rho",
]
