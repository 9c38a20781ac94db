"""Turn raw judge text into verdicts; anything unusable is Invalid, never an error."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .prompts import ExpectedOutput

_WS = re.compile(r"\s+")
# A run of digits that is not part of a word or of a decimal number.
_INT = re.compile(r"(?<![\w.])(\d+)(?!\w|\.\d)")


@dataclass
class JudgeVerdict:
    kind: str  # "label", "score", or "invalid"
    label: str | None = None
    score: int | None = None
    raw_text: str = ""
    attempts: int = 1

    @property
    def is_invalid(self) -> bool:
        return self.kind == "invalid"


def _normalize(text: str) -> str:
    text = _WS.sub(" ", text).strip()
    return text.strip(" \t\r\n.,:;!?\"'()[]").casefold()


def parse_verdict(raw_text: str, expected: ExpectedOutput) -> JudgeVerdict:
    """Match a judge response against its expected output domain.

    Labels match case-insensitively after trimming punctuation, first
    exactly and then as whole-word mentions; a response naming two distinct
    labels is ambiguous and therefore Invalid. Scores take the first
    standalone integer, which must lie in 0..10.
    """
    if expected.kind == "score":
        match = _INT.search(raw_text)
        if match is None:
            return JudgeVerdict(kind="invalid", raw_text=raw_text)
        value = int(match.group(1))
        if not 0 <= value <= 10:
            return JudgeVerdict(kind="invalid", raw_text=raw_text)
        return JudgeVerdict(kind="score", score=value, raw_text=raw_text)

    surface_to_canonical = {label: label for label in expected.labels}
    surface_to_canonical.update(expected.aliases)
    normalized = _normalize(raw_text)
    by_normalized = {}
    for surface, canonical in surface_to_canonical.items():
        by_normalized.setdefault(_normalize(surface), canonical)
    exact = by_normalized.get(normalized)
    if exact is not None:
        return JudgeVerdict(kind="label", label=exact, raw_text=raw_text)
    mentioned: set[str] = set()
    for surface_norm, canonical in by_normalized.items():
        if re.search(rf"(?<!\w){re.escape(surface_norm)}(?!\w)", normalized):
            mentioned.add(canonical)
    if len(mentioned) == 1:
        return JudgeVerdict(kind="label", label=mentioned.pop(), raw_text=raw_text)
    return JudgeVerdict(kind="invalid", raw_text=raw_text)
