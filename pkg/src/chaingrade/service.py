"""HTTP backend for the staged human annotation flow.

Each annotator walks their own label path per record: step type first, then
the type's tasks in order (error-type cards appear only after a triggering
correctness answer), and a chain verdict once every step is done. All state
derives from an append-only vote log, so a restart replays to the same
cursor and duplicate submissions are idempotent.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse, Response
from fastapi.staticfiles import StaticFiles

from .annotation import VoteSet, aggregate_votes, dataset_agreement
from .dataset_io import Dataset, record_to_dict
from .model import (
    ERROR_TRIGGERS,
    LabelTask,
    McotRecord,
    StepAnnotation,
    StepType,
    TASK_DOMAINS,
    tasks_for_type,
)

MAX_RATERS = 3

# 1x1 transparent PNG served when a record has no resolvable image.
_PLACEHOLDER_PNG = bytes.fromhex(
    "89504e470d0a1a0a0000000d49484452000000010000000108060000001f15c489"
    "0000000b49444154789c6360000200000500017a5eab3f0000000049454e44ae426082"
)


class StaleTokenError(ValueError):
    """The submitted card token is not the annotator's current card."""


@dataclass
class TaskCard:
    annotator_id: str
    record_id: str
    step_index: int
    task: LabelTask
    token: str
    allowed_labels: tuple[str, ...]
    context: dict
    progress: dict

    def to_dict(self) -> dict:
        return {
            "annotator_id": self.annotator_id,
            "record_id": self.record_id,
            "step_index": self.step_index,
            "task": self.task.value,
            "token": self.token,
            "allowed_labels": list(self.allowed_labels),
            "context": self.context,
            "progress": self.progress,
        }


@dataclass
class Vote:
    annotator_id: str
    record_id: str
    step_index: int
    task: LabelTask
    label: str

    def to_dict(self) -> dict:
        return {
            "annotator_id": self.annotator_id,
            "record_id": self.record_id,
            "step_index": self.step_index,
            "task": self.task.value,
            "label": self.label,
        }


def _token(annotator_id: str, record_id: str, step_index: int, task: LabelTask) -> str:
    return f"{annotator_id}:{record_id}:{step_index}:{task.value}"


def parse_token(token: str) -> tuple[str, str, int, LabelTask]:
    parts = token.rsplit(":", 3)
    if len(parts) != 4:
        raise StaleTokenError(f"malformed token {token!r}")
    try:
        return parts[0], parts[1], int(parts[2]), LabelTask(parts[3])
    except ValueError as exc:
        raise StaleTokenError(f"malformed token {token!r}") from exc


class AnnotationService:
    """Single-dataset annotation session store over an append-only vote log."""

    def __init__(self, dataset: Dataset, vote_log: str | Path, image_root: str | Path | None = None):
        self.dataset = dataset
        self.records = sorted(dataset.records, key=lambda r: r.id)
        self.vote_log = Path(vote_log)
        self.image_root = Path(image_root) if image_root else None
        self._lock = threading.Lock()
        self.votes: list[Vote] = []
        self._by_key: dict[tuple[str, str, int, LabelTask], str] = {}
        if self.vote_log.exists():
            for line in self.vote_log.read_text(encoding="utf-8").splitlines():
                if line.strip():
                    entry = json.loads(line)
                    self._apply(
                        Vote(
                            annotator_id=entry["annotator_id"],
                            record_id=entry["record_id"],
                            step_index=int(entry["step_index"]),
                            task=LabelTask(entry["task"]),
                            label=entry["label"],
                        ),
                        persist=False,
                    )

    # -- state derivation -------------------------------------------------

    def _apply(self, vote: Vote, persist: bool) -> None:
        key = (vote.annotator_id, vote.record_id, vote.step_index, vote.task)
        if key in self._by_key:
            return
        self.votes.append(vote)
        self._by_key[key] = vote.label
        if persist:
            with self.vote_log.open("a", encoding="utf-8") as handle:
                handle.write(json.dumps(vote.to_dict(), ensure_ascii=False) + "\n")

    def _annotator_votes(self, annotator_id: str, record_id: str) -> dict[tuple[int, LabelTask], str]:
        return {
            (step, task): label
            for (a, r, step, task), label in self._by_key.items()
            if a == annotator_id and r == record_id
        }

    def _started_by(self, record_id: str) -> set[str]:
        return {a for (a, r, _, _) in self._by_key if r == record_id}

    def _next_in_record(
        self, annotator_id: str, record: McotRecord
    ) -> tuple[int, LabelTask] | None:
        votes = self._annotator_votes(annotator_id, record.id)
        for index in range(1, record.n_steps + 1):
            typed = votes.get((index, LabelTask.STEP_TYPE))
            if typed is None:
                return index, LabelTask.STEP_TYPE
            for task in tasks_for_type(StepType(typed)):
                trigger = ERROR_TRIGGERS.get(task)
                if trigger is not None:
                    trigger_task, trigger_labels = trigger
                    if votes.get((index, trigger_task)) not in trigger_labels:
                        continue
                if (index, task) not in votes:
                    return index, task
        if (0, LabelTask.MCOT_CORRECTNESS) not in votes:
            return 0, LabelTask.MCOT_CORRECTNESS
        return None

    def _current_record(self, annotator_id: str) -> McotRecord | None:
        """First record (id order) the annotator is mid-way through, else the
        first unstarted record still needing raters."""
        for record in self.records:
            started = self._started_by(record.id)
            if annotator_id in started:
                if self._next_in_record(annotator_id, record) is not None:
                    return record
            elif len(started) < MAX_RATERS:
                return record
        return None

    # -- operations --------------------------------------------------------

    def next_task(self, annotator_id: str) -> TaskCard | None:
        if not annotator_id:
            raise ValueError("annotator id must be non-empty")
        with self._lock:
            record = self._current_record(annotator_id)
            if record is None:
                return None
            step_index, task = self._next_in_record(annotator_id, record)
            return self._card(annotator_id, record, step_index, task)

    def _card(self, annotator_id: str, record: McotRecord, step_index: int, task: LabelTask) -> TaskCard:
        context = {
            "image_ref": record.image_ref,
            "question": record.question,
            "steps": list(record.steps),
            "step_index": step_index,
            "current_step": record.steps[step_index - 1] if step_index >= 1 else None,
            "previous_steps": record.steps[: step_index - 1] if step_index >= 1 else [],
        }
        if task in ERROR_TRIGGERS:
            trigger_task, _ = ERROR_TRIGGERS[task]
            context["triggering_label"] = self._by_key.get(
                (annotator_id, record.id, step_index, trigger_task)
            )
        cast = sum(1 for (a, _, _, _) in self._by_key if a == annotator_id)
        return TaskCard(
            annotator_id=annotator_id,
            record_id=record.id,
            step_index=step_index,
            task=task,
            token=_token(annotator_id, record.id, step_index, task),
            allowed_labels=TASK_DOMAINS[task],
            context=context,
            progress={"votes_cast": cast, "records_total": len(self.records)},
        )

    def submit_label(self, annotator_id: str, token: str, label: str) -> dict:
        token_annotator, record_id, step_index, task = parse_token(token)
        if token_annotator != annotator_id:
            raise StaleTokenError("token belongs to a different annotator")
        with self._lock:
            key = (annotator_id, record_id, step_index, task)
            existing = self._by_key.get(key)
            if existing is not None:
                if existing == label:
                    return {"token": token, "accepted": True, "duplicate": True}
                raise StaleTokenError(f"card {token} was already answered with {existing!r}")
            record = self.dataset.by_id.get(record_id)
            if record is None:
                raise StaleTokenError(f"unknown record {record_id!r}")
            current = self._next_in_record(annotator_id, record)
            if current != (step_index, task):
                raise StaleTokenError(f"card {token} is not the current card")
            if label not in TASK_DOMAINS[task]:
                raise ValueError(f"label {label!r} is not in the domain of task {task.value}")
            self._apply(
                Vote(
                    annotator_id=annotator_id,
                    record_id=record_id,
                    step_index=step_index,
                    task=task,
                    label=label,
                ),
                persist=True,
            )
            return {"token": token, "accepted": True, "duplicate": False}

    def progress(self) -> dict:
        with self._lock:
            per_task: dict[str, int] = {}
            tie_counts: dict[str, int] = {}
            vote_sets: dict[tuple[str, int, LabelTask], list[tuple[str, str]]] = {}
            for vote in self.votes:
                per_task[vote.task.value] = per_task.get(vote.task.value, 0) + 1
                vote_sets.setdefault((vote.record_id, vote.step_index, vote.task), []).append(
                    (vote.annotator_id, vote.label)
                )
            for (_, step_index, task), votes in vote_sets.items():
                if len(votes) >= 2:
                    outcome = aggregate_votes(
                        VoteSet(task=task, step_index=step_index, votes=tuple(votes))
                    )
                    if outcome.is_tie:
                        tie_counts[task.value] = tie_counts.get(task.value, 0) + 1
            agreement = {
                name: {
                    "s_score": rep.s_score,
                    "observed_agreement": rep.observed_agreement,
                    "items": rep.item_count,
                }
                for name, rep in dataset_agreement(self.export_records()).items()
            }
            return {
                "votes": len(self.votes),
                "votes_per_task": dict(sorted(per_task.items())),
                "ties_per_task": dict(sorted(tie_counts.items())),
                "agreement": agreement,
            }

    def export_records(self) -> list[McotRecord]:
        """Records with the logged votes merged into their annotations."""
        merged: list[McotRecord] = []
        for record in self.records:
            extra = [
                StepAnnotation(
                    annotator_id=v.annotator_id,
                    step_index=v.step_index,
                    task=v.task,
                    label=v.label,
                )
                for v in self.votes
                if v.record_id == record.id
            ]
            merged.append(
                McotRecord(
                    id=record.id,
                    split=record.split,
                    question=record.question,
                    image_ref=record.image_ref,
                    steps=list(record.steps),
                    source_dataset=record.source_dataset,
                    generator=record.generator,
                    question_id=record.question_id,
                    annotations=list(record.annotations) + extra,
                    gold=record.gold,
                    prediction_correct=record.prediction_correct,
                )
            )
        return merged


def create_app(service: AnnotationService, ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="chaingrade annotation service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/api/task")
    def get_task(annotator: str = ""):
        if not annotator:
            raise HTTPException(status_code=422, detail="annotator query parameter is required")
        card = service.next_task(annotator)
        if card is None:
            return {"done": True}
        return {"done": False, "card": card.to_dict()}

    @app.post("/api/label")
    def post_label(payload: dict):
        token = payload.get("token", "")
        label = payload.get("label", "")
        annotator = payload.get("annotator", "")
        if not annotator and token:
            annotator = token.rsplit(":", 3)[0]
        try:
            return service.submit_label(annotator, token, label)
        except StaleTokenError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    @app.get("/api/progress")
    def get_progress():
        return service.progress()

    @app.get("/api/record/{record_id}")
    def get_record(record_id: str):
        record = service.dataset.by_id.get(record_id)
        if record is None:
            raise HTTPException(status_code=404, detail=f"unknown record {record_id!r}")
        return record_to_dict(record)

    @app.get("/api/image/{record_id}")
    def get_image(record_id: str):
        record = service.dataset.by_id.get(record_id)
        if record is None:
            raise HTTPException(status_code=404, detail=f"unknown record {record_id!r}")
        if service.image_root is not None:
            candidate = service.image_root / record.image_ref
            if candidate.is_file():
                return Response(content=candidate.read_bytes(), media_type="application/octet-stream")
        return Response(content=_PLACEHOLDER_PNG, media_type="image/png")

    if ui_dir is not None:
        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    @app.get("/")
    def index():
        return PlainTextResponse("chaingrade annotation service; see /api/task?annotator=<id>")

    return app
