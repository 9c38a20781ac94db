"""Prompt assembly for verification and scoring tasks.

Each task has a text template asset whose field lines are filled from the
record; few-shot settings prepend completed copies of the same template for
each demonstration. Task bodies carry only the fields their template names
(logic tasks are text-only; description tasks attach the image).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from importlib import resources

from ..model import LabelTask, McotRecord, TASK_DOMAINS

_TEMPLATE_PKG = "chaingrade.judge.templates"


class PromptError(ValueError):
    """The requested prompt cannot be built from this record/task pairing."""


class Level(str, enum.Enum):
    STEP = "StepLevel"
    MCOT = "McotLevel"


class Modality(str, enum.Enum):
    MULTIMODAL = "Multimodal"
    TEXTUAL = "Textual"


class ScoreTask(str, enum.Enum):
    """Graded 0..10 elicitation tasks (holistic, per step, or per dimension)."""

    MCOT = "McotScore"
    STEP = "StepScore"
    DESC_CORRECT = "ScoreDescCorrect"
    DESC_RELEVANT = "ScoreDescRelevant"
    LOGIC_CORRECT = "ScoreLogicCorrect"
    LOGIC_RELEVANT = "ScoreLogicRelevant"
    INFO = "ScoreInformativeness"


TaskLike = LabelTask | ScoreTask

#: Score dimension -> ComponentScores field name.
DIMENSION_FIELDS: dict[ScoreTask, str] = {
    ScoreTask.DESC_CORRECT: "s_d_correct",
    ScoreTask.DESC_RELEVANT: "s_d_relevant",
    ScoreTask.LOGIC_CORRECT: "s_l_correct",
    ScoreTask.LOGIC_RELEVANT: "s_l_relevant",
    ScoreTask.INFO: "s_info",
}

_TEMPLATE_FILES: dict[TaskLike, str] = {
    LabelTask.STEP_TYPE: "steptype.txt",
    LabelTask.DESC_CORRECTNESS: "desc_correctness.txt",
    LabelTask.DESC_RELEVANCE: "desc_relevance.txt",
    LabelTask.DESC_ERROR_TYPE: "desc_error_type.txt",
    LabelTask.LOGIC_CORRECTNESS: "logic_correctness.txt",
    LabelTask.LOGIC_RELEVANCE: "logic_relevance.txt",
    LabelTask.LOGIC_ERROR_TYPE: "logic_error_type.txt",
    LabelTask.INFORMATIVENESS: "informativeness.txt",
    LabelTask.MCOT_CORRECTNESS: "mcot_correctness.txt",
    ScoreTask.MCOT: "score_mcot.txt",
    ScoreTask.STEP: "score_step.txt",
    ScoreTask.DESC_CORRECT: "score_step.txt",
    ScoreTask.DESC_RELEVANT: "score_step.txt",
    ScoreTask.LOGIC_CORRECT: "score_step.txt",
    ScoreTask.LOGIC_RELEVANT: "score_step.txt",
    ScoreTask.INFO: "score_step.txt",
}

#: Prompt-surface aliases: rendered label -> canonical label. Only the
#: chain-correctness task answers in Yes/No terms.
SURFACE_ALIASES: dict[LabelTask, dict[str, str]] = {
    LabelTask.MCOT_CORRECTNESS: {"Yes": "Correct", "No": "Incorrect"},
}

_SYSTEM_LABEL = (
    "You are grading one aspect of a step-by-step answer about an image. "
    "Reply with exactly one label from: {labels}. Do not explain."
)
_SYSTEM_SCORE = {
    ScoreTask.MCOT: "Rate the overall correctness of the rationale for the question "
    "on a scale from 0 to 10. Reply with a single integer.",
    ScoreTask.STEP: "Rate the correctness of the current step given the question and "
    "the previous steps on a scale from 0 to 10. Reply with a single integer.",
    ScoreTask.DESC_CORRECT: "Rate how factually correct the current step's description "
    "of the image is, from 0 to 10. Reply with a single integer.",
    ScoreTask.DESC_RELEVANT: "Rate how relevant the current step's description is to the "
    "image and to answering the question, from 0 to 10. Reply with a single integer.",
    ScoreTask.LOGIC_CORRECT: "Rate how logically correct the current step is given the "
    "previous steps, from 0 to 10. Reply with a single integer.",
    ScoreTask.LOGIC_RELEVANT: "Rate how relevant the current step is to answering the "
    "question, from 0 to 10. Reply with a single integer.",
    ScoreTask.INFO: "Rate how much new, non-redundant information the current step adds "
    "over the previous steps, from 0 to 10. Reply with a single integer.",
}


def load_template(task: TaskLike) -> str:
    name = _TEMPLATE_FILES[task]
    return resources.files(_TEMPLATE_PKG).joinpath(name).read_text(encoding="utf-8")


def surface_label(task: TaskLike, label: str) -> str:
    """Canonical label -> the spelling shown in the prompt."""
    if isinstance(task, LabelTask):
        for surface, canonical in SURFACE_ALIASES.get(task, {}).items():
            if canonical == label:
                return surface
    return label


@dataclass
class ExpectedOutput:
    """What a well-formed judge response must contain."""

    kind: str  # "label" or "score"
    labels: tuple[str, ...] = ()  # canonical label domain
    aliases: dict[str, str] = field(default_factory=dict)  # extra surface -> canonical

    @classmethod
    def for_task(cls, task: TaskLike) -> "ExpectedOutput":
        if isinstance(task, ScoreTask):
            return cls(kind="score")
        return cls(
            kind="label",
            labels=TASK_DOMAINS[task],
            aliases=dict(SURFACE_ALIASES.get(task, {})),
        )


@dataclass
class Shot:
    """One few-shot demonstration: an annotated item plus its gold answer."""

    record: McotRecord
    step_index: int
    label: str  # canonical label, or "0".."10" for score tasks


@dataclass
class ShotSet:
    task: TaskLike
    shots: list[Shot]
    modality: Modality
    seed: int


@dataclass
class PromptBundle:
    task: TaskLike
    level: Level
    record_id: str
    step_index: int
    system_prompt: str
    body: str
    image_refs: list[str]
    expected: ExpectedOutput
    shot_ids: list[str] = field(default_factory=list)


def render_chain(record: McotRecord, upto: int | None = None) -> str:
    """Steps joined as "(i) text"; ``upto`` limits to steps 1..upto."""
    steps = record.steps if upto is None else record.steps[:upto]
    return " ".join(f"({i}) {text}" for i, text in enumerate(steps, start=1))


def _fill(template: str, record: McotRecord, step_index: int) -> str:
    current = record.steps[step_index - 1] if step_index >= 1 else ""
    return (
        template.replace("[image]", record.image_ref)
        .replace("[question]", record.question)
        .replace("[rationale]", render_chain(record))
        .replace("[previous steps]", render_chain(record, upto=step_index - 1))
        .replace("[current step]", current)
    )


def _complete_output_line(body: str, task: TaskLike, label: str) -> str:
    """Rewrite the template's answer line to show a demonstration's answer."""
    shown = surface_label(task, label)
    lines = body.rstrip("\n").split("\n")
    last = lines[-1]
    brace = last.find("{")
    if brace >= 0:
        lines[-1] = last[:brace] + shown
    else:
        lines[-1] = last.rstrip() + " " + shown
    return "\n".join(lines) + "\n"


def task_level(task: TaskLike) -> Level:
    if task in (LabelTask.MCOT_CORRECTNESS, ScoreTask.MCOT):
        return Level.MCOT
    return Level.STEP


def build_prompt(
    task: TaskLike,
    record: McotRecord,
    step_index: int,
    shots: ShotSet | None = None,
    level: Level | None = None,
) -> PromptBundle:
    """Assemble the full prompt for one item; ``shots=None`` is zero-shot.

    Chain-level tasks take step_index 0; step-level tasks need a valid step
    index. Demonstrations never come from the record under evaluation.
    """
    if isinstance(task, LabelTask) and task not in _TEMPLATE_FILES:
        raise PromptError(f"task {task.value} has no judge prompt (annotation-only task)")
    natural = task_level(task)
    if level is not None and level is not natural:
        raise PromptError(f"task {task_name(task)} is {natural.value}, not {level.value}")
    if natural is Level.MCOT:
        if step_index != 0:
            raise PromptError(f"chain-level task {task_name(task)} must use step_index 0")
    elif not (1 <= step_index <= record.n_steps):
        raise PromptError(
            f"step_index {step_index} out of range 1..{record.n_steps} for record {record.id}"
        )

    template = load_template(task)
    needs_image = "[image]" in template
    expected = ExpectedOutput.for_task(task)
    if isinstance(task, LabelTask):
        labels = ", ".join(surface_label(task, lb) for lb in TASK_DOMAINS[task])
        system_prompt = _SYSTEM_LABEL.format(labels=labels)
    else:
        system_prompt = _SYSTEM_SCORE[task]

    blocks: list[str] = []
    image_refs: list[str] = []
    shot_ids: list[str] = []
    if shots is not None:
        if shots.task != task:
            raise PromptError(f"shot set was sampled for {task_name(shots.task)}, not {task_name(task)}")
        for shot in shots.shots:
            if shot.record.id == record.id:
                raise PromptError(
                    f"demonstration leaks the evaluated record {record.id}"
                )
            demo_body = _fill(template, shot.record, shot.step_index)
            blocks.append(_complete_output_line(demo_body, task, shot.label))
            shot_ids.append(f"{shot.record.id}:{shot.step_index}")
            if needs_image and shots.modality is Modality.MULTIMODAL:
                image_refs.append(shot.record.image_ref)
    blocks.append(_fill(template, record, step_index))
    if needs_image:
        image_refs.append(record.image_ref)
    return PromptBundle(
        task=task,
        level=natural,
        record_id=record.id,
        step_index=step_index,
        system_prompt=system_prompt,
        body="\n".join(blocks),
        image_refs=image_refs,
        expected=expected,
        shot_ids=shot_ids,
    )


def task_name(task: TaskLike) -> str:
    return task.value
