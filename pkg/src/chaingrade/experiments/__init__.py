from .config import ConfigError, ExperimentConfig, PAIRWISE_TASKS, load_config, parse_config_text
from .report import ReportFormat, emit_report
from .runners import (
    ExperimentError,
    ExperimentReport,
    run_choice_ranking,
    run_pairwise,
    run_scoring,
    score_chain,
    usable_records,
)

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "ExperimentError",
    "ExperimentReport",
    "PAIRWISE_TASKS",
    "ReportFormat",
    "emit_report",
    "load_config",
    "parse_config_text",
    "run_choice_ranking",
    "run_pairwise",
    "run_scoring",
    "score_chain",
    "usable_records",
]
