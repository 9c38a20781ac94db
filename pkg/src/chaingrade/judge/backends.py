"""Judge backends: scripted replay tables, constants, and a remote wire client.

The remote wire format is one POST per call:
  {model, messages: [{role, text, image_refs[]}], max_tokens} -> {text}
with the bearer token taken from the JUDGE_API_TOKEN environment variable.
Scripted backends are lookup tables keyed by item and task; they must be
total over the fixture they accompany, so a miss is a configuration error.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

import httpx

from ..metrics import reference_components, reference_step_value
from ..model import ChainValidity, LabelTask, McotRecord, RelevanceMode
from .parsing import JudgeVerdict, parse_verdict
from .prompts import DIMENSION_FIELDS, PromptBundle, ScoreTask, TaskLike, task_name

DEFAULT_RETRY_LIMIT = 3


class TransportError(RuntimeError):
    """The remote judge could not be reached or answered garbage at the wire level."""


class ScriptedTableError(LookupError):
    """A scripted table has no entry for a requested item (fixture/config bug)."""


def table_key(record_id: str, step_index: int, task: TaskLike | str) -> str:
    name = task if isinstance(task, str) else task_name(task)
    return f"{record_id}|{step_index}|{name}"


@dataclass
class ScriptedBackend:
    """Replays canned responses; values are one string or a per-attempt list."""

    table: dict[str, str | list[str]]
    name: str = "scripted"

    def complete(self, bundle: PromptBundle, trial: int = 0, attempt: int = 1) -> str:
        base = table_key(bundle.record_id, bundle.step_index, bundle.task)
        entry = self.table.get(f"{base}|t{trial}", self.table.get(base))
        if entry is None:
            raise ScriptedTableError(f"scripted table has no entry for {base}")
        if isinstance(entry, str):
            return entry
        return entry[min(attempt, len(entry)) - 1]


@dataclass
class ConstantBackend:
    text: str
    name: str = "constant"

    def complete(self, bundle: PromptBundle, trial: int = 0, attempt: int = 1) -> str:
        return self.text


@dataclass
class RemoteBackend:
    endpoint: str
    model: str
    max_tokens: int = 64
    timeout: float = 60.0
    name: str = "remote"
    _client: httpx.Client | None = field(default=None, repr=False)

    def _http(self) -> httpx.Client:
        if self._client is None:
            self._client = httpx.Client(timeout=self.timeout)
        return self._client

    def complete(self, bundle: PromptBundle, trial: int = 0, attempt: int = 1) -> str:
        headers = {}
        token = os.environ.get("JUDGE_API_TOKEN")
        if token:
            headers["Authorization"] = f"Bearer {token}"
        payload = {
            "model": self.model,
            "messages": [
                {"role": "system", "text": bundle.system_prompt, "image_refs": []},
                {"role": "user", "text": bundle.body, "image_refs": bundle.image_refs},
            ],
            "max_tokens": self.max_tokens,
        }
        try:
            response = self._http().post(self.endpoint, json=payload, headers=headers)
            response.raise_for_status()
            return str(response.json()["text"])
        except (httpx.HTTPError, KeyError, ValueError) as exc:
            raise TransportError(f"judge call to {self.endpoint} failed: {exc}") from exc


JudgeBackend = ScriptedBackend | ConstantBackend | RemoteBackend


def invoke(
    backend: JudgeBackend,
    bundle: PromptBundle,
    retry_limit: int = DEFAULT_RETRY_LIMIT,
    trial: int = 0,
) -> JudgeVerdict:
    """Call the backend, reparsing and retrying invalid outputs.

    Transport failures propagate; only unparseable text is retried, and the
    verdict records how many attempts were spent.
    """
    if retry_limit < 0:
        raise ValueError("retry_limit must be >= 0")
    last = None
    for attempt in range(1, retry_limit + 2):
        text = backend.complete(bundle, trial=trial, attempt=attempt)
        verdict = parse_verdict(text, bundle.expected)
        verdict.attempts = attempt
        if not verdict.is_invalid:
            return verdict
        last = verdict
    return last


def load_scripted_table(path: str | Path) -> ScriptedBackend:
    """Read a scripted table: one JSON object per line with record_id,
    step_index, task, and response (or responses[])."""
    table: dict[str, str | list[str]] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        entry = json.loads(line)
        key = table_key(str(entry["record_id"]), int(entry["step_index"]), str(entry["task"]))
        if "trial" in entry:
            key = f"{key}|t{int(entry['trial'])}"
        value = entry["responses"] if "responses" in entry else str(entry["response"])
        table[key] = value
    return ScriptedBackend(table=table, name=f"scripted:{Path(path).name}")


def save_scripted_table(table: dict[str, str | list[str]], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as handle:
        for key in sorted(table):
            record_id, step_index, task = key.split("|")[:3]
            entry: dict = {"record_id": record_id, "step_index": int(step_index), "task": task}
            parts = key.split("|")
            if len(parts) == 4 and parts[3].startswith("t"):
                entry["trial"] = int(parts[3][1:])
            value = table[key]
            if isinstance(value, str):
                entry["response"] = value
            else:
                entry["responses"] = value
            handle.write(json.dumps(entry, ensure_ascii=False) + "\n")


def gold_echo_table(
    records: list[McotRecord],
    relevance_mode: RelevanceMode = RelevanceMode.LENIENT,
) -> dict[str, str | list[str]]:
    """A scripted table that answers every task with the gold annotation.

    Score dimensions echo the 0/5/10 human reference values; dimensions a
    step's type never annotates echo a perfect 10 so that only genuinely
    bad steps pull a chain score down.
    """
    table: dict[str, str | list[str]] = {}
    for record in records:
        gold = record.gold
        if gold is None or gold.validity is not ChainValidity.VALID:
            continue
        table[table_key(record.id, 0, LabelTask.MCOT_CORRECTNESS)] = (
            "Correct" if gold.mcot_correct else "Incorrect"
        )
        table[table_key(record.id, 0, ScoreTask.MCOT)] = "10" if gold.mcot_correct else "0"
        for step in gold.steps:
            table[table_key(record.id, step.step_index, LabelTask.STEP_TYPE)] = step.step_type.value
            for task, label in step.labels.items():
                table[table_key(record.id, step.step_index, task)] = label
            table[table_key(record.id, step.step_index, ScoreTask.STEP)] = str(
                round(reference_step_value(step, relevance_mode) * 10)
            )
            components = reference_components(step, relevance_mode)
            for dim, field_name in DIMENSION_FIELDS.items():
                value = getattr(components, field_name)
                score = 10 if value is None else round(value * 10)
                table[table_key(record.id, step.step_index, dim)] = str(score)
    return table
