"""Step and chain correctness scores built on geometric means.

Per-step scores combine component scores (description correctness/relevance;
logic correctness/relevance/informativeness) by geometric mean, and chain
scores combine the per-step values the same way. Exact zeros short-circuit
so the log-space path never sees -inf.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .model import (
    ComponentScores,
    GoldStepLabel,
    LabelTask,
    RelevanceMode,
    SchemaError,
    StepType,
)


class ScoringMethod(str, enum.Enum):
    HOLISTIC = "holistic"
    STEPWISE = "stepwise"
    MICEVAL_TYPE = "miceval-type"
    MICEVAL_ALL = "miceval-all"


@dataclass
class StepScore:
    step_index: int
    step_type: StepType | None
    value: float
    components: ComponentScores | None = None


@dataclass
class ChainScore:
    method: ScoringMethod
    value: float
    per_step: list[StepScore]


def geo_mean(xs: list[float]) -> float:
    """Geometric mean of values in [0, 1]; exactly 0 if any input is 0.

    Uses exact log summation, so the result is identical under input
    permutation, and clamps the rounding of exp() back into [min, max].
    """
    if not xs:
        raise ValueError("geo_mean of an empty list is undefined")
    for x in xs:
        if not (0.0 <= x <= 1.0):
            raise ValueError(f"geo_mean input {x!r} is outside [0, 1]")
    if len(xs) == 1:
        return float(xs[0])
    if any(x == 0.0 for x in xs):
        return 0.0
    value = math.exp(math.fsum(math.log(x) for x in xs) / len(xs))
    return min(max(value, min(xs)), max(xs))


def step_correctness_description(scores: ComponentScores) -> float:
    return geo_mean(scores.require(ComponentScores.DESCRIPTION_FIELDS))


def step_correctness_reasoning(scores: ComponentScores) -> float:
    return geo_mean(scores.require(ComponentScores.REASONING_FIELDS))


def step_correctness_typed(step_type: StepType, scores: ComponentScores) -> float:
    """Per-step value under the type-conditioned rule; Both steps combine
    the description and reasoning formulas by geometric mean."""
    if step_type is StepType.DESCRIPTION:
        return step_correctness_description(scores)
    if step_type is StepType.REASONING:
        return step_correctness_reasoning(scores)
    return geo_mean([step_correctness_description(scores), step_correctness_reasoning(scores)])


def step_correctness_all(scores: ComponentScores) -> float:
    """Per-step value over both formula families, regardless of type."""
    return geo_mean([step_correctness_description(scores), step_correctness_reasoning(scores)])


def chain_correctness_type(steps: list[tuple[StepType, ComponentScores]]) -> ChainScore:
    if not steps:
        raise ValueError("cannot score an empty chain")
    per_step = [
        StepScore(
            step_index=i,
            step_type=step_type,
            value=step_correctness_typed(step_type, scores),
            components=scores,
        )
        for i, (step_type, scores) in enumerate(steps, start=1)
    ]
    return ChainScore(
        method=ScoringMethod.MICEVAL_TYPE,
        value=geo_mean([s.value for s in per_step]),
        per_step=per_step,
    )


def chain_correctness_all(steps: list[ComponentScores]) -> ChainScore:
    if not steps:
        raise ValueError("cannot score an empty chain")
    per_step = [
        StepScore(step_index=i, step_type=None, value=step_correctness_all(scores), components=scores)
        for i, scores in enumerate(steps, start=1)
    ]
    return ChainScore(
        method=ScoringMethod.MICEVAL_ALL,
        value=geo_mean([s.value for s in per_step]),
        per_step=per_step,
    )


def chain_of_step_values(values: list[float], method: ScoringMethod) -> ChainScore:
    """Chain score as the geometric mean of already-computed step values."""
    if not values:
        raise ValueError("cannot score an empty chain")
    per_step = [StepScore(step_index=i, step_type=None, value=v) for i, v in enumerate(values, start=1)]
    return ChainScore(method=method, value=geo_mean(values), per_step=per_step)


def normalize_score10(x: int) -> float:
    if not isinstance(x, int) or isinstance(x, bool) or not (0 <= x <= 10):
        raise ValueError(f"score must be an integer in 0..10, got {x!r}")
    return x / 10.0


#: Labels mapping to 1.0 under the human reference; everything else in the
#: task's domain maps to 0.0, except the graded 0.5 cases below.
_REFERENCE_ONES = {
    LabelTask.DESC_CORRECTNESS: ("Fully Correct",),
    LabelTask.LOGIC_CORRECTNESS: ("Correct",),
    LabelTask.LOGIC_RELEVANCE: ("Relevant",),
    LabelTask.INFORMATIVENESS: ("Informative",),
    LabelTask.MCOT_CORRECTNESS: ("Correct",),
    LabelTask.PREDICTION_CORRECTNESS: ("Correct",),
}


def human_reference_score(
    task: LabelTask,
    label: str,
    relevance_mode: RelevanceMode = RelevanceMode.LENIENT,
) -> float:
    """Map a gold label to the 0/0.5/1 reference scale.

    Only the description-correctness task has a graded 0.5 ("Partially
    Correct"); description relevance passes per the configured mode.
    Error-type tasks and step typing have no defined mapping.
    """
    if task is LabelTask.DESC_CORRECTNESS and label == "Partially Correct":
        return 0.5
    if task is LabelTask.DESC_RELEVANCE:
        if relevance_mode is RelevanceMode.STRICT:
            return 1.0 if label == "Both" else 0.0
        return 0.0 if label == "None" else 1.0
    try:
        ones = _REFERENCE_ONES[task]
    except KeyError:
        raise ValueError(f"task {task.value} has no defined reference mapping") from None
    return 1.0 if label in ones else 0.0


def verification_bit(
    value: float | str,
    threshold: float = 0.5,
    task: LabelTask | None = None,
    relevance_mode: RelevanceMode = RelevanceMode.LENIENT,
) -> int:
    """Binary verdict from a score in [0, 1] (ties round up) or from a label
    via the human reference mapping."""
    if isinstance(value, str):
        if task is None:
            raise ValueError("a label verdict needs its task to map to a bit")
        value = human_reference_score(task, value, relevance_mode)
    if not (0.0 <= value <= 1.0):
        raise ValueError(f"score {value!r} is outside [0, 1]")
    return 1 if value >= threshold else 0


def reference_components(
    gold: GoldStepLabel,
    relevance_mode: RelevanceMode = RelevanceMode.LENIENT,
) -> ComponentScores:
    """Component scores implied by a step's gold labels (human reference)."""
    kwargs: dict[str, float] = {}
    if gold.step_type in (StepType.DESCRIPTION, StepType.BOTH):
        kwargs["s_d_correct"] = human_reference_score(
            LabelTask.DESC_CORRECTNESS, gold.require(LabelTask.DESC_CORRECTNESS)
        )
        kwargs["s_d_relevant"] = human_reference_score(
            LabelTask.DESC_RELEVANCE, gold.require(LabelTask.DESC_RELEVANCE), relevance_mode
        )
    if gold.step_type in (StepType.REASONING, StepType.BOTH):
        kwargs["s_l_correct"] = human_reference_score(
            LabelTask.LOGIC_CORRECTNESS, gold.require(LabelTask.LOGIC_CORRECTNESS)
        )
        kwargs["s_l_relevant"] = human_reference_score(
            LabelTask.LOGIC_RELEVANCE, gold.require(LabelTask.LOGIC_RELEVANCE)
        )
        kwargs["s_info"] = human_reference_score(
            LabelTask.INFORMATIVENESS, gold.require(LabelTask.INFORMATIVENESS)
        )
    return ComponentScores(**kwargs)


def reference_step_value(
    gold: GoldStepLabel,
    relevance_mode: RelevanceMode = RelevanceMode.LENIENT,
) -> float:
    """Human per-step reference: type formula over the mapped gold labels."""
    if gold.validity.value != "Valid":
        raise SchemaError(f"step {gold.step_index} is not Valid")
    return step_correctness_typed(gold.step_type, reference_components(gold, relevance_mode))
