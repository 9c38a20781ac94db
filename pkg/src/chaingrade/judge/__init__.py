from .backends import (
    ConstantBackend,
    DEFAULT_RETRY_LIMIT,
    JudgeBackend,
    RemoteBackend,
    ScriptedBackend,
    ScriptedTableError,
    TransportError,
    gold_echo_table,
    invoke,
    load_scripted_table,
    save_scripted_table,
    table_key,
)
from .parsing import JudgeVerdict, parse_verdict
from .prompts import (
    DIMENSION_FIELDS,
    ExpectedOutput,
    Level,
    Modality,
    PromptBundle,
    PromptError,
    ScoreTask,
    Shot,
    ShotSet,
    build_prompt,
    load_template,
    render_chain,
    surface_label,
    task_level,
    task_name,
)
from .shots import ShotInfeasibleError, sample_shots

__all__ = [
    "ConstantBackend",
    "DEFAULT_RETRY_LIMIT",
    "DIMENSION_FIELDS",
    "ExpectedOutput",
    "JudgeBackend",
    "JudgeVerdict",
    "Level",
    "Modality",
    "PromptBundle",
    "PromptError",
    "RemoteBackend",
    "ScoreTask",
    "ScriptedBackend",
    "ScriptedTableError",
    "Shot",
    "ShotInfeasibleError",
    "ShotSet",
    "TransportError",
    "build_prompt",
    "gold_echo_table",
    "invoke",
    "load_scripted_table",
    "load_template",
    "parse_verdict",
    "render_chain",
    "sample_shots",
    "save_scripted_table",
    "surface_label",
    "table_key",
    "task_level",
    "task_name",
]
