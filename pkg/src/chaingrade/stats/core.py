"""Evaluation statistics: accuracy with invalid handling, per-label F1,
Somers' D, and Spearman rank correlation.

Pair counting runs through a compiled extension when it was built, with a
pure-Python kernel as the import-time fallback; both enumerate every pair
exactly (no approximate estimators at desk scale).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

try:
    from . import _paircount as _kernel

    KERNEL = "compiled"
except ImportError:  # extension not built; same results, slower
    from . import _paircount_py as _kernel

    KERNEL = "python"


class UndefinedStatisticError(ValueError):
    """The requested statistic has no value on this sample (degenerate denominator)."""


class Orientation(str, enum.Enum):
    PRED_DEPENDENT = "PredDependent"
    REF_DEPENDENT = "RefDependent"


@dataclass
class PairedSample:
    """Reference/prediction pairs; invalid-flagged predictions are scored 0."""

    references: np.ndarray
    predictions: np.ndarray
    invalid_flags: np.ndarray

    @classmethod
    def build(
        cls,
        references: list[float],
        predictions: list[float],
        invalid_flags: list[bool] | None = None,
    ) -> "PairedSample":
        if invalid_flags is None:
            invalid_flags = [False] * len(predictions)
        if not (len(references) == len(predictions) == len(invalid_flags)):
            raise ValueError("references, predictions, and flags must have equal length")
        return cls(
            references=np.asarray(references, dtype=np.float64),
            predictions=np.asarray(predictions, dtype=np.float64),
            invalid_flags=np.asarray(invalid_flags, dtype=bool),
        )

    def __len__(self) -> int:
        return int(self.references.shape[0])

    def effective_predictions(self) -> np.ndarray:
        preds = self.predictions.copy()
        preds[self.invalid_flags] = 0.0
        return preds

    @property
    def invalid_proportion(self) -> float:
        if len(self) == 0:
            return 0.0
        return float(np.count_nonzero(self.invalid_flags)) / len(self)


def count_pairs(ref: np.ndarray, pred: np.ndarray) -> tuple[int, int, int, int]:
    ref = np.ascontiguousarray(ref, dtype=np.float64)
    pred = np.ascontiguousarray(pred, dtype=np.float64)
    return tuple(int(v) for v in _kernel.count_pairs(ref, pred))


def somers_d(sample: PairedSample, orientation: Orientation = Orientation.PRED_DEPENDENT) -> float:
    """(C - D) over the pairs untied on the independent variable.

    PredDependent treats the prediction as the dependent variable, so the
    denominator drops pairs tied on the reference; RefDependent is the
    transpose.
    """
    n = len(sample)
    if n < 2:
        raise UndefinedStatisticError(f"Somers' D needs >= 2 items, got {n}")
    concordant, discordant, tied_ref, tied_pred = count_pairs(
        sample.references, sample.effective_predictions()
    )
    total = n * (n - 1) // 2
    if orientation is Orientation.PRED_DEPENDENT:
        denominator = total - tied_ref
        tied_side = "references"
    else:
        denominator = total - tied_pred
        tied_side = "predictions"
    if denominator == 0:
        raise UndefinedStatisticError(f"Somers' D undefined: all {tied_side} are tied")
    return (concordant - discordant) / denominator


def midranks(values: np.ndarray) -> np.ndarray:
    """Average ranks (1-based) with ties sharing their midrank."""
    values = np.asarray(values, dtype=np.float64)
    n = values.shape[0]
    order = np.argsort(values, kind="mergesort")
    ranks = np.empty(n, dtype=np.float64)
    i = 0
    while i < n:
        j = i
        while j + 1 < n and values[order[j + 1]] == values[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def spearman_rho(sample: PairedSample) -> float:
    """Pearson correlation of midranked values."""
    n = len(sample)
    if n < 2:
        raise UndefinedStatisticError(f"Spearman's rho needs >= 2 items, got {n}")
    ref_ranks = midranks(sample.references)
    pred_ranks = midranks(sample.effective_predictions())
    ref_centered = ref_ranks - ref_ranks.mean()
    pred_centered = pred_ranks - pred_ranks.mean()
    ref_var = float(ref_centered @ ref_centered)
    pred_var = float(pred_centered @ pred_centered)
    if ref_var == 0.0 or pred_var == 0.0:
        raise UndefinedStatisticError("Spearman's rho undefined: a side has zero variance")
    return float(ref_centered @ pred_centered) / (ref_var**0.5 * pred_var**0.5)


def accuracy(preds: list[str | None], golds: list[str]) -> float:
    """Fraction of exact matches; a None prediction (invalid output) never matches."""
    if len(preds) != len(golds):
        raise ValueError(f"length mismatch: {len(preds)} predictions vs {len(golds)} golds")
    if not golds:
        raise ValueError("accuracy over zero items is undefined")
    correct = sum(1 for p, g in zip(preds, golds) if p is not None and p == g)
    return correct / len(golds)


@dataclass
class F1Result:
    value: float
    precision: float
    recall: float
    support: int
    degenerate: bool  # label absent from both predictions and golds


def per_label_f1(preds: list[str | None], golds: list[str], label: str) -> F1Result:
    """One-vs-rest F1; invalid predictions count as negatives for every label."""
    if len(preds) != len(golds):
        raise ValueError(f"length mismatch: {len(preds)} predictions vs {len(golds)} golds")
    tp = fp = fn = 0
    for p, g in zip(preds, golds):
        predicted = p == label
        actual = g == label
        if predicted and actual:
            tp += 1
        elif predicted:
            fp += 1
        elif actual:
            fn += 1
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    value = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return F1Result(
        value=value,
        precision=precision,
        recall=recall,
        support=tp + fn,
        degenerate=(tp + fp + fn) == 0,
    )
