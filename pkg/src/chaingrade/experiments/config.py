"""Experiment configuration: a flat key=value text file plus CLI overrides."""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from pathlib import Path

from ..judge.prompts import Modality
from ..metrics import ScoringMethod
from ..model import LabelTask, RelevanceMode
from ..stats import Orientation

#: The nine verification tasks, in report column order.
PAIRWISE_TASKS: tuple[LabelTask, ...] = (
    LabelTask.STEP_TYPE,
    LabelTask.DESC_RELEVANCE,
    LabelTask.DESC_CORRECTNESS,
    LabelTask.DESC_ERROR_TYPE,
    LabelTask.LOGIC_RELEVANCE,
    LabelTask.LOGIC_CORRECTNESS,
    LabelTask.INFORMATIVENESS,
    LabelTask.LOGIC_ERROR_TYPE,
    LabelTask.MCOT_CORRECTNESS,
)


class ConfigError(ValueError):
    """The configuration file or overrides cannot be interpreted."""


@dataclass
class ExperimentConfig:
    dataset: str = ""
    split: str | None = None
    judge: str = ""  # "scripted:<path>", "constant:<text>", or "remote:<endpoint>,<model>"
    tasks: list[LabelTask] = field(default_factory=lambda: list(PAIRWISE_TASKS))
    shot_count: int = 0  # 0 = zero-shot; 1..4 = few-shot
    modality: Modality = Modality.MULTIMODAL
    seeds: list[int] = field(default_factory=lambda: [0])
    method: ScoringMethod = ScoringMethod.MICEVAL_ALL
    trials: int = 3
    relevance_mode: RelevanceMode = RelevanceMode.LENIENT
    orientation: Orientation = Orientation.PRED_DEPENDENT
    retry_limit: int = 3
    step_type_source: str = "judge"  # or "gold"
    per_step: bool = False
    spearman: bool = True
    max_in_flight: int = 1

    def __post_init__(self) -> None:
        if not 0 <= self.shot_count <= 4:
            raise ConfigError(f"shot_count must be in 0..4, got {self.shot_count}")
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if self.step_type_source not in ("judge", "gold"):
            raise ConfigError(f"step_type_source must be 'judge' or 'gold', got {self.step_type_source!r}")
        if not self.seeds:
            raise ConfigError("at least one seed is required")

    def echo(self) -> dict:
        """Configuration snapshot embedded in every report.

        File paths are reduced to basenames so byte-identical inputs give
        byte-identical reports regardless of where they live.
        """
        judge = self.judge
        kind, sep, rest = judge.partition(":")
        if sep and kind in ("scripted",):
            judge = f"{kind}:{Path(rest).name}"
        return {
            "dataset": Path(self.dataset).name if self.dataset else "",
            "split": self.split,
            "judge": judge,
            "tasks": [t.value for t in self.tasks],
            "shot_count": self.shot_count,
            "modality": self.modality.value,
            "seeds": list(self.seeds),
            "method": self.method.value,
            "trials": self.trials,
            "relevance_mode": self.relevance_mode.value,
            "orientation": self.orientation.value,
            "retry_limit": self.retry_limit,
            "step_type_source": self.step_type_source,
            "per_step": self.per_step,
            "spearman": self.spearman,
        }


_COERCERS = {
    "split": lambda v: None if v.lower() in ("", "all", "none") else v,
    "tasks": lambda v: [LabelTask(item.strip()) for item in v.split(",") if item.strip()],
    "shot_count": int,
    "modality": Modality,
    "seeds": lambda v: [int(item) for item in v.split(",") if item.strip()],
    "method": ScoringMethod,
    "trials": int,
    "relevance_mode": RelevanceMode,
    "orientation": Orientation,
    "retry_limit": int,
    "per_step": lambda v: v.lower() in ("1", "true", "yes"),
    "spearman": lambda v: v.lower() in ("1", "true", "yes"),
    "max_in_flight": int,
}


def parse_config_text(text: str, source: str = "<config>") -> ExperimentConfig:
    values: dict = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{source} line {lineno}: expected key = value, got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        known = {f.name for f in fields(ExperimentConfig)}
        if key not in known:
            raise ConfigError(f"{source} line {lineno}: unknown key {key!r}")
        coerce = _COERCERS.get(key, str)
        try:
            values[key] = coerce(value)
        except (ValueError, KeyError) as exc:
            raise ConfigError(f"{source} line {lineno}: bad value for {key}: {exc}") from exc
    return ExperimentConfig(**values)


def load_config(path: str | Path) -> ExperimentConfig:
    path = Path(path)
    return parse_config_text(path.read_text(encoding="utf-8"), source=path.name)
