"""Label-balanced demonstration sampling for few-shot prompts."""

from __future__ import annotations

import random

from ..model import LabelTask, TASK_DOMAINS
from .prompts import Modality, Shot, ShotSet


class ShotInfeasibleError(ValueError):
    """The pool cannot satisfy label balance; lists what is missing."""

    def __init__(self, task: LabelTask, missing: dict[str, int]):
        short = ", ".join(f"{label} (need {n} more)" for label, n in missing.items())
        super().__init__(f"cannot balance {task.value} shots: {short}")
        self.missing = missing


def sample_shots(
    pool: list[Shot],
    task: LabelTask,
    k: int,
    modality: Modality = Modality.MULTIMODAL,
    seed: int = 0,
) -> ShotSet:
    """Draw k demonstrations with per-label counts differing by at most one.

    Deterministic under (seed, pool order). When k is below the label count,
    the seed also picks which labels appear at all.
    """
    if not 1 <= k <= 4:
        raise ValueError(f"shot count must be in 1..4, got {k}")
    domain = list(TASK_DOMAINS[task])
    rng = random.Random(seed)
    base, extra = divmod(k, len(domain))
    counts = {label: base for label in domain}
    for label in rng.sample(domain, extra):
        counts[label] += 1
    missing: dict[str, int] = {}
    chosen: list[Shot] = []
    for label in domain:
        need = counts[label]
        if need == 0:
            continue
        candidates = [s for s in pool if s.label == label]
        if len(candidates) < need:
            missing[label] = need - len(candidates)
        else:
            chosen.extend(rng.sample(candidates, need))
    if missing:
        raise ShotInfeasibleError(task, missing)
    rng.shuffle(chosen)
    return ShotSet(task=task, shots=chosen, modality=modality, seed=seed)
