"""Aggregate multi-rater votes into gold labels and compute agreement.

Implements majority voting with the tie-based validity filtering rules:
a step is invalid when any of its tasks ties (1:1:1, or 1:1 among the two
raters that count on a split step type), and a chain is invalid when it
contains an invalid step or when half or more of its steps have a split
step-type tally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .model import (
    ChainValidity,
    ERROR_TRIGGERS,
    GoldChain,
    GoldStepLabel,
    LabelTask,
    McotRecord,
    RelevanceMode,
    SchemaError,
    StepAnnotation,
    StepType,
    StepValidity,
    TASK_DOMAINS,
    derive_mcot_correct,
    tasks_for_type,
)


class InvalidRecordError(ValueError):
    """The record's votes cannot be aggregated into valid gold data."""

    def __init__(self, record_id: str, reasons: list[str]):
        super().__init__(f"record {record_id} is invalid: " + "; ".join(reasons))
        self.record_id = record_id
        self.reasons = reasons


@dataclass(frozen=True)
class VoteSet:
    task: LabelTask
    step_index: int
    votes: tuple[tuple[str, str], ...]  # (annotator_id, label)

    def __post_init__(self) -> None:
        raters = [annotator for annotator, _ in self.votes]
        if len(set(raters)) != len(raters):
            raise SchemaError(
                f"vote set for {self.task.value} at step {self.step_index} has a "
                "repeated annotator"
            )
        for _, label in self.votes:
            if label not in TASK_DOMAINS[self.task]:
                raise SchemaError(f"label {label!r} is not in the domain of task {self.task.value}")

    def restricted_to(self, annotators: set[str]) -> "VoteSet":
        kept = tuple(v for v in self.votes if v[0] in annotators)
        return VoteSet(task=self.task, step_index=self.step_index, votes=kept)


@dataclass
class AggregationOutcome:
    winner: str | None  # None means a tie
    tally: dict[str, int]

    @property
    def is_tie(self) -> bool:
        return self.winner is None


def aggregate_votes(vote_set: VoteSet) -> AggregationOutcome:
    """Strict-plurality majority vote; a shared maximum count is a tie."""
    if not vote_set.votes:
        raise SchemaError(f"empty vote set for task {vote_set.task.value}")
    tally: dict[str, int] = {}
    for _, label in vote_set.votes:
        tally[label] = tally.get(label, 0) + 1
    best = max(tally.values())
    leaders = [label for label, count in tally.items() if count == best]
    winner = leaders[0] if len(leaders) == 1 else None
    return AggregationOutcome(winner=winner, tally=tally)


def _tally_text(outcome: AggregationOutcome) -> str:
    return ":".join(str(c) for c in sorted(outcome.tally.values(), reverse=True))


@dataclass
class StepClassification:
    step_index: int
    validity: StepValidity
    gold: GoldStepLabel | None
    type_split: bool  # strict majority with dissent on the step-type vote (a 2:1 tally)
    reasons: list[str] = field(default_factory=list)
    tie_tasks: list[LabelTask] = field(default_factory=list)


def classify_step_validity(
    step_type_votes: VoteSet,
    subtask_votes: list[VoteSet],
) -> StepClassification:
    """Apply the invalid-step rules to one step's vote sets.

    When the step type is unanimous, every applicable subtask must avoid a
    tie. When the type is split (2:1), only the subtask votes from the two
    majority raters count, and a 1:1 between them invalidates the step.
    Error-type tasks are consulted only when the aggregated correctness label
    demands them.
    """
    index = step_type_votes.step_index
    type_outcome = aggregate_votes(step_type_votes)
    if type_outcome.is_tie:
        return StepClassification(
            step_index=index,
            validity=StepValidity.INVALID_TIE,
            gold=None,
            type_split=False,
            reasons=[f"step {index}: tie on StepType ({_tally_text(type_outcome)})"],
            tie_tasks=[LabelTask.STEP_TYPE],
        )
    step_type = StepType(type_outcome.winner)
    unanimous = type_outcome.tally[type_outcome.winner] == len(step_type_votes.votes)
    majority_raters = {a for a, label in step_type_votes.votes if label == type_outcome.winner}

    by_task = {vs.task: vs for vs in subtask_votes}
    resolved: dict[LabelTask, str] = {}
    reasons: list[str] = []
    tie_tasks: list[LabelTask] = []
    for task in tasks_for_type(step_type):
        trigger = ERROR_TRIGGERS.get(task)
        if trigger is not None:
            trigger_task, trigger_labels = trigger
            if resolved.get(trigger_task) not in trigger_labels:
                continue  # error-type label not demanded by the gold correctness
        vote_set = by_task.get(task)
        if vote_set is not None and not unanimous:
            vote_set = vote_set.restricted_to(majority_raters)
        if vote_set is None or not vote_set.votes:
            raise SchemaError(
                f"step {index}: missing {task.value} votes required for a "
                f"{step_type.value} step"
            )
        outcome = aggregate_votes(vote_set)
        if outcome.is_tie:
            reasons.append(f"step {index}: tie on {task.value} ({_tally_text(outcome)})")
            tie_tasks.append(task)
        else:
            resolved[task] = outcome.winner
    if reasons:
        return StepClassification(
            step_index=index,
            validity=StepValidity.INVALID_TIE,
            gold=None,
            type_split=not unanimous,
            reasons=reasons,
            tie_tasks=tie_tasks,
        )
    gold = GoldStepLabel(step_index=index, step_type=step_type, labels=resolved)
    return StepClassification(
        step_index=index,
        validity=StepValidity.VALID,
        gold=gold,
        type_split=not unanimous,
    )


def classify_mcot_validity(classifications: list[StepClassification]) -> tuple[ChainValidity, list[str]]:
    """Chain-level validity: any invalid step, or split step types on half or
    more of the steps, invalidates the chain."""
    reasons: list[str] = []
    for c in classifications:
        if c.validity is not StepValidity.VALID:
            reasons.extend(c.reasons)
    n = len(classifications)
    split_count = sum(1 for c in classifications if c.type_split)
    if split_count * 2 >= n and split_count > 0:
        reasons.append(f"step type split 2:1 on {split_count} of {n} steps (half or more)")
    return (ChainValidity.INVALID if reasons else ChainValidity.VALID), reasons


def collect_vote_sets(record: McotRecord) -> dict[int, dict[LabelTask, VoteSet]]:
    """Group a record's annotations into per-step, per-task vote sets."""
    grouped: dict[int, dict[LabelTask, list[tuple[str, str]]]] = {}
    for ann in record.annotations:
        grouped.setdefault(ann.step_index, {}).setdefault(ann.task, []).append(
            (ann.annotator_id, ann.label)
        )
    return {
        index: {
            task: VoteSet(task=task, step_index=index, votes=tuple(votes))
            for task, votes in tasks.items()
        }
        for index, tasks in grouped.items()
    }


def classify_record(record: McotRecord) -> tuple[ChainValidity, list[StepClassification], list[str]]:
    by_step = collect_vote_sets(record)
    classifications: list[StepClassification] = []
    for index in range(1, record.n_steps + 1):
        tasks = by_step.get(index, {})
        type_votes = tasks.get(LabelTask.STEP_TYPE)
        if type_votes is None:
            raise SchemaError(f"record {record.id}: step {index} has no StepType votes")
        subtasks = [vs for task, vs in tasks.items() if task is not LabelTask.STEP_TYPE]
        classifications.append(classify_step_validity(type_votes, subtasks))
    validity, reasons = classify_mcot_validity(classifications)
    return validity, classifications, reasons


def derive_gold(record: McotRecord, relevance_mode: RelevanceMode = RelevanceMode.LENIENT) -> GoldChain:
    """Aggregate one record's votes into a gold chain.

    The chain verdict is recomputed from the per-step gold labels; a
    reasoning step keeps whatever logic-correctness label the raters gave
    it, with no re-derivation from earlier steps.
    """
    validity, classifications, reasons = classify_record(record)
    if validity is ChainValidity.INVALID:
        raise InvalidRecordError(record.id, reasons)
    gold_steps = [c.gold for c in classifications]
    return GoldChain(
        steps=gold_steps,
        mcot_correct=derive_mcot_correct(gold_steps, relevance_mode),
        validity=ChainValidity.VALID,
    )


def aggregate_prediction_correct(record: McotRecord) -> bool | None:
    """Majority over chain-level prediction-correctness votes, if any."""
    votes = [
        (a.annotator_id, a.label)
        for a in record.annotations
        if a.task is LabelTask.PREDICTION_CORRECTNESS
    ]
    if not votes:
        return None
    outcome = aggregate_votes(
        VoteSet(task=LabelTask.PREDICTION_CORRECTNESS, step_index=0, votes=tuple(votes))
    )
    if outcome.is_tie:
        return None
    return outcome.winner == "Correct"


def aggregate_records(
    records: list[McotRecord],
    relevance_mode: RelevanceMode = RelevanceMode.LENIENT,
) -> tuple[list[McotRecord], dict]:
    """Aggregate every record's votes; invalid chains keep an in-band marker.

    Returns records sorted by id with gold populated, plus a validity report
    of counts and the tie breakdown by task.
    """
    out: list[McotRecord] = []
    ties_by_task: dict[str, int] = {}
    invalid_details: list[dict] = []
    steps_total = steps_invalid = steps_split = valid_count = 0
    for record in sorted(records, key=lambda r: r.id):
        validity, classifications, reasons = classify_record(record)
        steps_total += len(classifications)
        for c in classifications:
            if c.validity is not StepValidity.VALID:
                steps_invalid += 1
            if c.type_split:
                steps_split += 1
            for task in c.tie_tasks:
                ties_by_task[task.value] = ties_by_task.get(task.value, 0) + 1
        if validity is ChainValidity.VALID:
            gold_steps = [c.gold for c in classifications]
            gold = GoldChain(
                steps=gold_steps,
                mcot_correct=derive_mcot_correct(gold_steps, relevance_mode),
                validity=ChainValidity.VALID,
            )
            valid_count += 1
        else:
            gold = GoldChain(steps=[], mcot_correct=False, validity=ChainValidity.INVALID)
            invalid_details.append({"id": record.id, "reasons": reasons})
        out.append(
            McotRecord(
                id=record.id,
                split=record.split,
                question=record.question,
                image_ref=record.image_ref,
                steps=list(record.steps),
                source_dataset=record.source_dataset,
                generator=record.generator,
                question_id=record.question_id,
                annotations=list(record.annotations),
                gold=gold,
                prediction_correct=aggregate_prediction_correct(record),
            )
        )
    report = {
        "records_total": len(out),
        "records_valid": valid_count,
        "records_invalid": len(out) - valid_count,
        "steps_total": steps_total,
        "steps_invalid": steps_invalid,
        "steps_type_split": steps_split,
        "ties_by_task": dict(sorted(ties_by_task.items())),
        "invalid_records": invalid_details,
        "relevance_mode": relevance_mode.value,
    }
    return out, report


@dataclass
class AgreementReport:
    s_score: float
    observed_agreement: float
    category_count: int
    item_count: int
    rater_count: int


def _observed_agreement(items: list[list[str]]) -> float:
    # fsum keeps the mean exact under item permutation
    per_item = []
    for i, labels in enumerate(items):
        m = len(labels)
        if m < 2:
            raise ValueError(f"item {i} has {m} label(s); every item needs >= 2")
        agree = sum(
            1 for a in range(m) for b in range(a + 1, m) if labels[a] == labels[b]
        )
        per_item.append(agree / (m * (m - 1) / 2))
    return math.fsum(per_item) / len(per_item)


def bennett_s(items: list[list[str]], k: int) -> AgreementReport:
    """Chance-corrected agreement S = (P_o - 1/k) / (1 - 1/k).

    ``items`` holds the labels each rater assigned per item; observed
    agreement is the mean over items of the mean pairwise rater agreement,
    which reduces to the textbook two-rater formula.
    """
    if k < 2:
        raise ValueError(f"category count k must be >= 2, got {k}")
    if not items:
        raise ValueError("bennett_s needs at least one item")
    p_o = _observed_agreement(items)
    chance = 1.0 / k
    return AgreementReport(
        s_score=(p_o - chance) / (1.0 - chance),
        observed_agreement=p_o,
        category_count=k,
        item_count=len(items),
        rater_count=max(len(labels) for labels in items),
    )


#: Task groups reported alongside per-task agreement.
AGREEMENT_GROUPS: dict[str, tuple[LabelTask, ...]] = {
    "description": (
        LabelTask.DESC_CORRECTNESS,
        LabelTask.DESC_RELEVANCE,
        LabelTask.DESC_ERROR_TYPE,
    ),
    "reasoning": (
        LabelTask.LOGIC_CORRECTNESS,
        LabelTask.LOGIC_RELEVANCE,
        LabelTask.INFORMATIVENESS,
        LabelTask.LOGIC_ERROR_TYPE,
    ),
}


def pooled_s(items_with_k: list[tuple[list[str], int]]) -> AgreementReport:
    """S over items drawn from tasks with different category counts.

    The chance term becomes the mean of each item's 1/k, which reduces to
    the plain formula when all items share one domain.
    """
    if not items_with_k:
        raise ValueError("pooled_s needs at least one item")
    labels_only = [labels for labels, _ in items_with_k]
    p_o = _observed_agreement(labels_only)
    chance = sum(1.0 / k for _, k in items_with_k) / len(items_with_k)
    return AgreementReport(
        s_score=(p_o - chance) / (1.0 - chance),
        observed_agreement=p_o,
        category_count=0,
        item_count=len(items_with_k),
        rater_count=max(len(labels) for labels in labels_only),
    )


def dataset_agreement(records: list[McotRecord]) -> dict[str, AgreementReport]:
    """Per-task and per-group S over every vote set with >= 2 votes."""
    per_task: dict[LabelTask, list[list[str]]] = {}
    for record in records:
        for tasks in collect_vote_sets(record).values():
            for task, vote_set in tasks.items():
                if len(vote_set.votes) >= 2:
                    per_task.setdefault(task, []).append([label for _, label in vote_set.votes])
    out: dict[str, AgreementReport] = {}
    for task, items in sorted(per_task.items(), key=lambda kv: kv[0].value):
        out[task.value] = bennett_s(items, k=len(TASK_DOMAINS[task]))
    for group, tasks in AGREEMENT_GROUPS.items():
        pooled = [
            (labels, len(TASK_DOMAINS[task]))
            for task in tasks
            for labels in per_task.get(task, [])
        ]
        if pooled:
            out[f"group:{group}"] = pooled_s(pooled)
    return out
