"""Core domain model: reasoning-chain records, step label taxonomies, gold rules.

A record is one image/question/chain triple. Each step of the chain is typed
(Description, Reasoning, or Both) and carries per-type labels; the chain-level
verdict is derived from the per-step labels, never stored independently.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field


class SchemaError(ValueError):
    """A record, annotation, or gold structure violates the data contract."""


class StepType(str, enum.Enum):
    DESCRIPTION = "Description"
    REASONING = "Reasoning"
    BOTH = "Both"


class RelevanceMode(str, enum.Enum):
    """How description relevance gates a good step.

    Strict requires relevance to both the image and the question; Lenient
    accepts any relevance except "None".
    """

    STRICT = "Strict"
    LENIENT = "Lenient"


class LabelTask(str, enum.Enum):
    STEP_TYPE = "StepType"
    DESC_CORRECTNESS = "DescCorrectness"
    DESC_RELEVANCE = "DescRelevance"
    DESC_ERROR_TYPE = "DescErrorType"
    LOGIC_CORRECTNESS = "LogicCorrectness"
    LOGIC_RELEVANCE = "LogicRelevance"
    INFORMATIVENESS = "Informativeness"
    LOGIC_ERROR_TYPE = "LogicErrorType"
    MCOT_CORRECTNESS = "McotCorrectness"
    PREDICTION_CORRECTNESS = "PredictionCorrectness"


#: Fixed label domain per task. Label spellings are the human-readable forms
#: used in data files, prompts, and reports alike.
TASK_DOMAINS: dict[LabelTask, tuple[str, ...]] = {
    LabelTask.STEP_TYPE: ("Description", "Reasoning", "Both"),
    LabelTask.DESC_CORRECTNESS: ("Fully Correct", "Partially Correct", "Unsupported"),
    LabelTask.DESC_RELEVANCE: ("Both", "Image Relevant", "Logic Relevant", "None"),
    LabelTask.DESC_ERROR_TYPE: (
        "Entity False",
        "Attribute False",
        "Spatial Relationship False",
        "Non-spatial Relationship False",
    ),
    LabelTask.LOGIC_CORRECTNESS: ("Correct", "Incorrect"),
    LabelTask.LOGIC_RELEVANCE: ("Relevant", "Irrelevant"),
    LabelTask.INFORMATIVENESS: ("Informative", "Uninformative"),
    LabelTask.LOGIC_ERROR_TYPE: ("Inter-step Incorrect", "Intra-step Incorrect", "Both"),
    LabelTask.MCOT_CORRECTNESS: ("Correct", "Incorrect"),
    LabelTask.PREDICTION_CORRECTNESS: ("Correct", "Incorrect"),
}

#: Tasks annotated once per chain (step_index 0), not per step.
CHAIN_LEVEL_TASKS = frozenset({LabelTask.MCOT_CORRECTNESS, LabelTask.PREDICTION_CORRECTNESS})

#: Description-side and reasoning-side task groups, in annotation order.
DESCRIPTION_TASKS = (
    LabelTask.DESC_CORRECTNESS,
    LabelTask.DESC_ERROR_TYPE,
    LabelTask.DESC_RELEVANCE,
)
REASONING_TASKS = (
    LabelTask.LOGIC_CORRECTNESS,
    LabelTask.LOGIC_ERROR_TYPE,
    LabelTask.LOGIC_RELEVANCE,
    LabelTask.INFORMATIVENESS,
)

#: Error-type tasks are annotated only when the paired correctness label is
#: one of these trigger labels.
ERROR_TRIGGERS: dict[LabelTask, tuple[LabelTask, tuple[str, ...]]] = {
    LabelTask.DESC_ERROR_TYPE: (LabelTask.DESC_CORRECTNESS, ("Partially Correct", "Unsupported")),
    LabelTask.LOGIC_ERROR_TYPE: (LabelTask.LOGIC_CORRECTNESS, ("Incorrect",)),
}

SPLITS = ("Hard", "Normal")


def tasks_for_type(step_type: StepType) -> tuple[LabelTask, ...]:
    """Per-step annotation tasks required by a step type, in stage order."""
    if step_type is StepType.DESCRIPTION:
        return DESCRIPTION_TASKS
    if step_type is StepType.REASONING:
        return REASONING_TASKS
    return DESCRIPTION_TASKS + REASONING_TASKS


def check_label(task: LabelTask, label: str) -> None:
    if label not in TASK_DOMAINS[task]:
        raise SchemaError(f"label {label!r} is not in the domain of task {task.value}")


@dataclass(frozen=True)
class StepAnnotation:
    """One rater's answer to one task; step_index 0 marks a chain-level task."""

    annotator_id: str
    step_index: int
    task: LabelTask
    label: str

    def __post_init__(self) -> None:
        check_label(self.task, self.label)
        if self.step_index < 0:
            raise SchemaError(f"step_index must be >= 0, got {self.step_index}")
        if self.step_index == 0 and self.task not in CHAIN_LEVEL_TASKS:
            raise SchemaError(
                f"step_index 0 is reserved for chain-level tasks; got step-level task {self.task.value}"
            )
        if self.step_index > 0 and self.task in CHAIN_LEVEL_TASKS:
            raise SchemaError(
                f"chain-level task {self.task.value} must use step_index 0, got {self.step_index}"
            )


class StepValidity(str, enum.Enum):
    VALID = "Valid"
    INVALID_TIE = "InvalidTie"


class ChainValidity(str, enum.Enum):
    VALID = "Valid"
    INVALID = "Invalid"


@dataclass
class GoldStepLabel:
    """Aggregated gold labels for one step."""

    step_index: int
    step_type: StepType
    labels: dict[LabelTask, str] = field(default_factory=dict)
    validity: StepValidity = StepValidity.VALID

    def __post_init__(self) -> None:
        allowed = set(tasks_for_type(self.step_type))
        for task, label in self.labels.items():
            if task not in allowed:
                raise SchemaError(
                    f"step {self.step_index}: task {task.value} is not applicable to a "
                    f"{self.step_type.value} step"
                )
            check_label(task, label)
        for err_task, (trigger_task, trigger_labels) in ERROR_TRIGGERS.items():
            if err_task in self.labels:
                trigger = self.labels.get(trigger_task)
                if trigger not in trigger_labels:
                    raise SchemaError(
                        f"step {self.step_index}: {err_task.value} present but "
                        f"{trigger_task.value} is {trigger!r}"
                    )

    def require(self, task: LabelTask) -> str:
        try:
            return self.labels[task]
        except KeyError:
            raise SchemaError(
                f"step {self.step_index} ({self.step_type.value}) is missing a "
                f"{task.value} label"
            ) from None


@dataclass
class GoldChain:
    steps: list[GoldStepLabel]
    mcot_correct: bool
    validity: ChainValidity = ChainValidity.VALID


@dataclass
class ComponentScores:
    """Per-dimension step scores on [0, 1]; presence depends on step type."""

    s_d_correct: float | None = None
    s_d_relevant: float | None = None
    s_l_correct: float | None = None
    s_l_relevant: float | None = None
    s_info: float | None = None

    DESCRIPTION_FIELDS = ("s_d_correct", "s_d_relevant")
    REASONING_FIELDS = ("s_l_correct", "s_l_relevant", "s_info")
    ALL_FIELDS = DESCRIPTION_FIELDS + REASONING_FIELDS

    def __post_init__(self) -> None:
        for name in self.ALL_FIELDS:
            value = getattr(self, name)
            if value is None:
                continue
            if not (isinstance(value, (int, float)) and math.isfinite(value) and 0.0 <= value <= 1.0):
                raise SchemaError(f"component {name} must be in [0, 1], got {value!r}")

    def require(self, names: tuple[str, ...]) -> list[float]:
        values = []
        for name in names:
            value = getattr(self, name)
            if value is None:
                raise SchemaError(f"missing component score {name}")
            values.append(float(value))
        return values


@dataclass
class McotRecord:
    """One image/question/reasoning-chain triple with its annotations."""

    id: str
    split: str
    question: str
    image_ref: str
    steps: list[str]
    source_dataset: str = ""
    generator: str = ""
    question_id: str = ""
    annotations: list[StepAnnotation] = field(default_factory=list)
    gold: GoldChain | None = None
    prediction_correct: bool | None = None

    def __post_init__(self) -> None:
        validate_record(self)

    @property
    def n_steps(self) -> int:
        return len(self.steps)

    @property
    def question_key(self) -> str:
        """Grouping key for choice ranking: explicit id, else question+image."""
        return self.question_id or f"{self.question}\x1f{self.image_ref}"


def validate_record(record: McotRecord) -> None:
    if not record.id:
        raise SchemaError("record id must be a non-empty string")
    if record.split not in SPLITS:
        raise SchemaError(f"record {record.id}: split must be one of {SPLITS}, got {record.split!r}")
    if len(record.steps) < 1:
        raise SchemaError(f"record {record.id}: a chain must have at least one step")
    seen: set[tuple[str, int, LabelTask]] = set()
    for ann in record.annotations:
        if ann.step_index > len(record.steps):
            raise SchemaError(
                f"record {record.id}: annotation references step {ann.step_index} "
                f"but the chain has {len(record.steps)} steps"
            )
        key = (ann.annotator_id, ann.step_index, ann.task)
        if key in seen:
            raise SchemaError(
                f"record {record.id}: duplicate annotation by {ann.annotator_id} for "
                f"step {ann.step_index} task {ann.task.value}"
            )
        seen.add(key)
    if record.gold is not None:
        if record.gold.validity is ChainValidity.VALID:
            indices = [g.step_index for g in record.gold.steps]
            if indices != list(range(1, len(record.steps) + 1)):
                raise SchemaError(
                    f"record {record.id}: gold step indices {indices} do not cover 1..{len(record.steps)}"
                )
        elif record.gold.steps:
            raise SchemaError(
                f"record {record.id}: an invalid gold chain must not carry step labels"
            )


def derive_step_good(gold: GoldStepLabel, relevance_mode: RelevanceMode) -> bool:
    """Whether a step counts toward a good chain under the given relevance mode.

    Description steps must be fully correct and relevant; reasoning steps must
    be correct, relevant, and informative; Both steps must satisfy both sets.
    """
    if gold.validity is not StepValidity.VALID:
        raise SchemaError(f"step {gold.step_index} is not Valid; cannot derive a good-flag")
    good = True
    if gold.step_type in (StepType.DESCRIPTION, StepType.BOTH):
        correct = gold.require(LabelTask.DESC_CORRECTNESS) == "Fully Correct"
        relevance = gold.require(LabelTask.DESC_RELEVANCE)
        if relevance_mode is RelevanceMode.STRICT:
            relevant = relevance == "Both"
        else:
            relevant = relevance != "None"
        good = good and correct and relevant
    if gold.step_type in (StepType.REASONING, StepType.BOTH):
        good = (
            good
            and gold.require(LabelTask.LOGIC_CORRECTNESS) == "Correct"
            and gold.require(LabelTask.LOGIC_RELEVANCE) == "Relevant"
            and gold.require(LabelTask.INFORMATIVENESS) == "Informative"
        )
    return good


def derive_mcot_correct(steps: list[GoldStepLabel], relevance_mode: RelevanceMode) -> bool:
    """A chain is correct iff every one of its steps is good."""
    if not steps:
        raise SchemaError("cannot judge an empty chain; n >= 1 is required")
    return all(derive_step_good(step, relevance_mode) for step in steps)
