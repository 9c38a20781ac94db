"""Load, validate, summarize, and export line-delimited chain datasets.

One JSON record per line, UTF-8. Required top-level fields: id, split,
question, image_ref, steps[], annotations[]. Optional: source_dataset,
generator, question_id, gold, prediction_correct, schema_version.
"""

from __future__ import annotations

import enum
import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .model import (
    ChainValidity,
    GoldChain,
    GoldStepLabel,
    LabelTask,
    McotRecord,
    SchemaError,
    StepAnnotation,
    StepType,
    StepValidity,
)

SCHEMA_VERSION = 1

_RECORD_FIELDS = {
    "id",
    "split",
    "source_dataset",
    "question",
    "question_id",
    "image_ref",
    "steps",
    "generator",
    "annotations",
    "gold",
    "prediction_correct",
    "schema_version",
}


class DatasetError(ValueError):
    """The dataset file or one of its records cannot be used."""


class EmptySplitError(DatasetError):
    """A statistics or export request selected zero records."""


class SchemaMode(str, enum.Enum):
    STRICT = "Strict"
    REPAIR = "Repair"


@dataclass
class Dataset:
    records: list[McotRecord]
    source_path: str = ""
    source_digest: str = ""
    schema_version: int = SCHEMA_VERSION
    repair_report: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.by_id = {r.id: r for r in self.records}

    def filter_split(self, split: str | None) -> list[McotRecord]:
        if split is None:
            return list(self.records)
        return [r for r in self.records if r.split == split]


@dataclass
class SplitStats:
    split: str
    question_count: int
    mcot_count: int
    step_count: int
    avg_steps: float
    description_steps: int
    reasoning_steps: int
    both_steps: int
    description_fully_correct: int
    logic_fully_correct: int
    fully_correct_mcots: int

    def to_dict(self) -> dict:
        return {
            "split": self.split,
            "question_count": self.question_count,
            "mcot_count": self.mcot_count,
            "step_count": self.step_count,
            "avg_steps": self.avg_steps,
            "description_steps": self.description_steps,
            "reasoning_steps": self.reasoning_steps,
            "both_steps": self.both_steps,
            "description_fully_correct": self.description_fully_correct,
            "logic_fully_correct": self.logic_fully_correct,
            "fully_correct_mcots": self.fully_correct_mcots,
        }


@dataclass
class RankingGroup:
    question_key: str
    question: str
    options: list[McotRecord]

    def __post_init__(self) -> None:
        verdicts = [opt.gold.mcot_correct for opt in self.options]
        if len(self.options) < 2 or not (any(verdicts) and not all(verdicts)):
            raise DatasetError(
                f"ranking group {self.question_key!r} must hold >= 2 options with at "
                "least one correct and one incorrect chain"
            )


@dataclass
class RankingSet:
    groups: list[RankingGroup]
    dropped: list[str] = field(default_factory=list)


def record_to_dict(record: McotRecord) -> dict:
    out: dict = {
        "id": record.id,
        "split": record.split,
        "question": record.question,
        "image_ref": record.image_ref,
        "steps": list(record.steps),
    }
    if record.source_dataset:
        out["source_dataset"] = record.source_dataset
    if record.question_id:
        out["question_id"] = record.question_id
    if record.generator:
        out["generator"] = record.generator
    out["annotations"] = [
        {
            "annotator_id": a.annotator_id,
            "step_index": a.step_index,
            "task": a.task.value,
            "label": a.label,
        }
        for a in record.annotations
    ]
    if record.gold is not None:
        out["gold"] = {
            "steps": [
                {
                    "step_index": g.step_index,
                    "step_type": g.step_type.value,
                    "labels": {t.value: v for t, v in sorted(g.labels.items(), key=lambda kv: kv[0].value)},
                    "validity": g.validity.value,
                }
                for g in record.gold.steps
            ],
            "mcot_correct": record.gold.mcot_correct,
            "validity": record.gold.validity.value,
        }
    if record.prediction_correct is not None:
        out["prediction_correct"] = record.prediction_correct
    return out


def record_from_dict(raw: dict) -> McotRecord:
    if not isinstance(raw, dict):
        raise SchemaError("record must be a JSON object")
    unknown = set(raw) - _RECORD_FIELDS
    if unknown:
        raise SchemaError(f"unknown record fields: {sorted(unknown)}")
    for name in ("id", "split", "question", "image_ref", "steps", "annotations"):
        if name not in raw:
            raise SchemaError(f"record is missing required field {name!r}")
    steps = raw["steps"]
    if not isinstance(steps, list) or not all(isinstance(s, str) for s in steps):
        raise SchemaError("steps must be a list of strings")
    annotations = []
    for entry in raw["annotations"]:
        try:
            task = LabelTask(entry["task"])
        except (ValueError, KeyError, TypeError):
            raise SchemaError(f"unknown annotation task in {entry!r}") from None
        annotations.append(
            StepAnnotation(
                annotator_id=str(entry["annotator_id"]),
                step_index=int(entry["step_index"]),
                task=task,
                label=str(entry["label"]),
            )
        )
    gold = None
    if raw.get("gold") is not None:
        g = raw["gold"]
        gold_steps = [
            GoldStepLabel(
                step_index=int(gs["step_index"]),
                step_type=StepType(gs["step_type"]),
                labels={LabelTask(t): str(v) for t, v in gs.get("labels", {}).items()},
                validity=StepValidity(gs.get("validity", "Valid")),
            )
            for gs in g["steps"]
        ]
        gold = GoldChain(
            steps=gold_steps,
            mcot_correct=bool(g["mcot_correct"]),
            validity=ChainValidity(g.get("validity", "Valid")),
        )
    prediction = raw.get("prediction_correct")
    if prediction is not None and not isinstance(prediction, bool):
        raise SchemaError("prediction_correct must be a boolean")
    return McotRecord(
        id=str(raw["id"]),
        split=str(raw["split"]),
        question=str(raw["question"]),
        image_ref=str(raw["image_ref"]),
        steps=list(steps),
        source_dataset=str(raw.get("source_dataset", "")),
        generator=str(raw.get("generator", "")),
        question_id=str(raw.get("question_id", "")),
        annotations=annotations,
        gold=gold,
        prediction_correct=prediction,
    )


def dumps_record(record: McotRecord) -> str:
    return json.dumps(record_to_dict(record), ensure_ascii=False)


def load_dataset(path: str | Path, schema_mode: SchemaMode = SchemaMode.STRICT) -> Dataset:
    """Parse a line-delimited dataset file.

    Strict mode rejects the whole file on the first violation; Repair mode
    drops offending records and lists them in the dataset's repair report.
    """
    path = Path(path)
    data = path.read_bytes()
    digest = hashlib.sha256(data).hexdigest()
    records: list[McotRecord] = []
    seen_ids: set[str] = set()
    report: list[str] = []
    for lineno, line in enumerate(data.decode("utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            raw = json.loads(line)
            record = record_from_dict(raw)
            if record.id in seen_ids:
                raise SchemaError(f"duplicate record id {record.id!r}")
        except (json.JSONDecodeError, SchemaError, KeyError, TypeError, ValueError) as exc:
            message = f"line {lineno}: {exc}"
            if schema_mode is SchemaMode.STRICT:
                raise DatasetError(f"{path.name}: {message}") from exc
            report.append(message)
            continue
        seen_ids.add(record.id)
        records.append(record)
    return Dataset(
        records=records,
        source_path=str(path),
        source_digest=digest,
        repair_report=report,
    )


def save_dataset(dataset: Dataset, path: str | Path) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8") as handle:
        for record in dataset.records:
            handle.write(dumps_record(record) + "\n")


def compute_split_stats(dataset: Dataset, split: str | None) -> SplitStats:
    """Summarize one split (or the whole set when split is None).

    Requires gold labels on every selected record. Both-type steps are
    counted separately and do not enter the description/logic tallies.
    """
    records = dataset.filter_split(split)
    if not records:
        raise EmptySplitError(f"split {split!r} selects no records")
    step_count = 0
    desc = reas = both = desc_full = logic_full = full_chains = 0
    questions: set[str] = set()
    for record in records:
        if record.gold is None:
            raise DatasetError(f"record {record.id} has no gold labels; aggregate first")
        questions.add(record.question_key)
        step_count += record.n_steps
        if record.gold.mcot_correct:
            full_chains += 1
        for gs in record.gold.steps:
            if gs.step_type is StepType.DESCRIPTION:
                desc += 1
                if gs.labels.get(LabelTask.DESC_CORRECTNESS) == "Fully Correct":
                    desc_full += 1
            elif gs.step_type is StepType.REASONING:
                reas += 1
                if gs.labels.get(LabelTask.LOGIC_CORRECTNESS) == "Correct":
                    logic_full += 1
            else:
                both += 1
    return SplitStats(
        split=split or "all",
        question_count=len(questions),
        mcot_count=len(records),
        step_count=step_count,
        avg_steps=step_count / len(records),
        description_steps=desc,
        reasoning_steps=reas,
        both_steps=both,
        description_fully_correct=desc_full,
        logic_fully_correct=logic_full,
        fully_correct_mcots=full_chains,
    )


def export_ranking_set(dataset: Dataset, split: str | None = None) -> RankingSet:
    """Group chains by question and keep groups usable for choice ranking.

    A group survives only if it has at least two options including at least
    one gold-correct and one gold-incorrect chain; everything else is dropped
    and reported.
    """
    grouped: dict[str, list[McotRecord]] = {}
    for record in dataset.filter_split(split):
        if record.gold is None:
            raise DatasetError(f"record {record.id} has no gold labels; aggregate first")
        grouped.setdefault(record.question_key, []).append(record)
    groups: list[RankingGroup] = []
    dropped: list[str] = []
    for key in sorted(grouped):
        options = sorted(grouped[key], key=lambda r: r.id)
        verdicts = [opt.gold.mcot_correct for opt in options]
        if len(options) < 2:
            dropped.append(f"{key}: only {len(options)} option")
        elif all(verdicts):
            dropped.append(f"{key}: all {len(options)} options gold-correct")
        elif not any(verdicts):
            dropped.append(f"{key}: all {len(options)} options gold-incorrect")
        else:
            groups.append(RankingGroup(question_key=key, question=options[0].question, options=options))
    return RankingSet(groups=groups, dropped=dropped)


def load_manifest(path: str | Path) -> dict:
    """Read a fixture manifest: expected per-split stats written by the fixture generator."""
    return json.loads(Path(path).read_text(encoding="utf-8"))
