"""The three experiment protocols: pairwise comparison, scoring, choice ranking.

All runners iterate records in id order and key every judge call by
(record, step, task, trial), so identical inputs (in any file order) with a
scripted judge reproduce reports byte for byte. Judge calls may fan out over
a bounded thread pool (config.max_in_flight); results merge in input order,
which keeps reports deterministic regardless of completion order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .. import metrics
from ..dataset_io import Dataset, RankingSet, export_ranking_set
from ..judge import (
    JudgeBackend,
    ScoreTask,
    Shot,
    ShotSet,
    TransportError,
    build_prompt,
    invoke,
    sample_shots,
)
from ..metrics import ScoringMethod, geo_mean, normalize_score10
from ..model import (
    ChainValidity,
    ComponentScores,
    GoldStepLabel,
    LabelTask,
    McotRecord,
    StepType,
    TASK_DOMAINS,
)
from ..stats import (
    Orientation,
    PairedSample,
    UndefinedStatisticError,
    accuracy,
    per_label_f1,
    somers_d,
    spearman_rho,
)
from .config import ExperimentConfig


class ExperimentError(RuntimeError):
    """The experiment cannot proceed; partial traces ride along when present."""

    def __init__(self, message: str, partial_traces: list | None = None):
        super().__init__(message)
        self.partial_traces = partial_traces or []


@dataclass
class ExperimentReport:
    kind: str
    config: dict
    metadata: dict
    tables: dict
    traces: list

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "config": self.config,
            "metadata": self.metadata,
            "tables": self.tables,
            "traces": self.traces,
        }


def _mean(values: list[float]) -> float:
    """Mean over runs; identical runs collapse exactly (no rounding drift)."""
    if all(v == values[0] for v in values):
        return values[0]
    return sum(values) / len(values)


def usable_records(dataset: Dataset, split: str | None) -> list[McotRecord]:
    """Valid-gold records of the split, in id order."""
    records = [
        r
        for r in dataset.filter_split(split)
        if r.gold is not None and r.gold.validity is ChainValidity.VALID
    ]
    records.sort(key=lambda r: r.id)
    if not records:
        raise ExperimentError(f"no records with valid gold labels in split {split!r}")
    return records


def _map_ordered(config: ExperimentConfig, fn, jobs: list):
    """Apply fn over jobs, optionally through a bounded pool, keeping order."""
    if config.max_in_flight > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=config.max_in_flight) as pool:
            return list(pool.map(fn, jobs))
    return [fn(job) for job in jobs]


# ---------------------------------------------------------------------------
# pairwise comparison


def _gold_label(record: McotRecord, step: GoldStepLabel | None, task: LabelTask) -> str | None:
    if task is LabelTask.MCOT_CORRECTNESS:
        return "Correct" if record.gold.mcot_correct else "Incorrect"
    if task is LabelTask.STEP_TYPE:
        return step.step_type.value
    return step.labels.get(task)


def _pairwise_items(records: list[McotRecord], task: LabelTask) -> list[tuple[McotRecord, int, str]]:
    """(record, step_index, gold label) triples the task is evaluated on.

    Error-type tasks cover only steps whose gold correctness demanded an
    error label; chain-level tasks cover whole records.
    """
    items: list[tuple[McotRecord, int, str]] = []
    for record in records:
        if task is LabelTask.MCOT_CORRECTNESS:
            items.append((record, 0, _gold_label(record, None, task)))
            continue
        for step in record.gold.steps:
            gold = _gold_label(record, step, task)
            if gold is not None:
                items.append((record, step.step_index, gold))
    return items


def run_pairwise(config: ExperimentConfig, dataset: Dataset, backend: JudgeBackend) -> ExperimentReport:
    records = usable_records(dataset, config.split)
    runs = [(seed, trial) for seed in config.seeds for trial in range(config.trials)]
    tables: dict = {"tasks": {}}
    traces: list = []
    task_accuracies: list[float] = []
    for task in config.tasks:
        items = _pairwise_items(records, task)
        if not items:
            tables["tasks"][task.value] = {"n_items": 0, "skipped": "no gold items"}
            continue
        pool = [Shot(record=r, step_index=i, label=g) for r, i, g in items]
        golds = [gold for _, _, gold in items]
        item_traces = [
            {"record_id": r.id, "step_index": i, "task": task.value, "gold": g, "runs": []}
            for r, i, g in items
        ]
        # prompts depend on the seed (shots) but not on the trial
        bundles_by_seed: dict[int, list] = {}
        for seed in config.seeds:
            bundles = []
            for record, step_index, _ in items:
                shots: ShotSet | None = None
                if config.shot_count >= 1:
                    eligible = [s for s in pool if s.record.id != record.id]
                    shots = sample_shots(eligible, task, config.shot_count, config.modality, seed)
                bundles.append(build_prompt(task, record, step_index, shots=shots))
            bundles_by_seed[seed] = bundles
        run_accuracies: list[float] = []
        run_preds: list[list[str | None]] = []
        invalid_calls = 0
        for seed, trial in runs:
            try:
                verdicts = _map_ordered(
                    config,
                    lambda bundle: invoke(backend, bundle, retry_limit=config.retry_limit, trial=trial),
                    bundles_by_seed[seed],
                )
            except TransportError as exc:
                raise ExperimentError(
                    f"judge transport failure during {task.value}: {exc}", partial_traces=traces
                ) from exc
            preds: list[str | None] = []
            for pos, verdict in enumerate(verdicts):
                label = None if verdict.is_invalid else verdict.label
                invalid_calls += verdict.is_invalid
                preds.append(label)
                item_traces[pos]["runs"].append(
                    {
                        "seed": seed,
                        "trial": trial,
                        "label": label,
                        "invalid": verdict.is_invalid,
                        "attempts": verdict.attempts,
                    }
                )
            run_preds.append(preds)
            run_accuracies.append(accuracy(preds, golds))
        mean_accuracy = _mean(run_accuracies)
        per_label: dict = {}
        for label in TASK_DOMAINS[task]:
            results = [per_label_f1(preds, golds, label) for preds in run_preds]
            per_label[label] = {
                "f1": _mean([r.value for r in results]),
                "precision": _mean([r.precision for r in results]),
                "recall": _mean([r.recall for r in results]),
                "support": results[0].support,
                "degenerate": all(r.degenerate for r in results),
            }
        total_calls = len(items) * len(runs)
        tables["tasks"][task.value] = {
            "accuracy": mean_accuracy,
            "invalid_proportion": invalid_calls / total_calls,
            "n_items": len(items),
            "n_calls": total_calls,
            "per_label_f1": per_label,
        }
        task_accuracies.append(mean_accuracy)
        traces.extend(item_traces)
    if task_accuracies:
        tables["average_accuracy"] = _mean(task_accuracies)
    return ExperimentReport(
        kind="pairwise",
        config=config.echo(),
        metadata=_metadata(records, runs),
        tables=tables,
        traces=traces,
    )


# ---------------------------------------------------------------------------
# scoring evaluation


_TYPE_DIMENSIONS: dict[StepType, tuple[ScoreTask, ...]] = {
    StepType.DESCRIPTION: (ScoreTask.DESC_CORRECT, ScoreTask.DESC_RELEVANT),
    StepType.REASONING: (ScoreTask.LOGIC_CORRECT, ScoreTask.LOGIC_RELEVANT, ScoreTask.INFO),
    StepType.BOTH: (
        ScoreTask.DESC_CORRECT,
        ScoreTask.DESC_RELEVANT,
        ScoreTask.LOGIC_CORRECT,
        ScoreTask.LOGIC_RELEVANT,
        ScoreTask.INFO,
    ),
}

_DIM_TO_FIELD = {
    ScoreTask.DESC_CORRECT: "s_d_correct",
    ScoreTask.DESC_RELEVANT: "s_d_relevant",
    ScoreTask.LOGIC_CORRECT: "s_l_correct",
    ScoreTask.LOGIC_RELEVANT: "s_l_relevant",
    ScoreTask.INFO: "s_info",
}


@dataclass
class _ChainPrediction:
    value: float
    invalid: bool
    steps: list[dict] = field(default_factory=list)
    invalid_calls: int = 0
    total_calls: int = 0


def _ask_score(backend, config, record, step_index, task, trial) -> tuple[float, bool]:
    bundle = build_prompt(task, record, step_index)
    verdict = invoke(backend, bundle, retry_limit=config.retry_limit, trial=trial)
    if verdict.is_invalid:
        return 0.0, True
    return normalize_score10(verdict.score), False


def score_chain(
    config: ExperimentConfig,
    backend: JudgeBackend,
    record: McotRecord,
    method: ScoringMethod,
    trial: int,
) -> _ChainPrediction:
    """One chain-level prediction; invalid judge outputs score 0 and flag the chain."""
    if method is ScoringMethod.HOLISTIC:
        value, invalid = _ask_score(backend, config, record, 0, ScoreTask.MCOT, trial)
        return _ChainPrediction(
            value=value, invalid=invalid, invalid_calls=int(invalid), total_calls=1
        )
    step_values: list[float] = []
    steps: list[dict] = []
    invalid_calls = total_calls = 0
    chain_invalid = False
    for step in record.gold.steps:
        index = step.step_index
        if method is ScoringMethod.STEPWISE:
            value, invalid = _ask_score(backend, config, record, index, ScoreTask.STEP, trial)
            total_calls += 1
            invalid_calls += int(invalid)
            chain_invalid = chain_invalid or invalid
            step_values.append(value)
            steps.append({"step_index": index, "value": value, "invalid": invalid})
            continue
        if method is ScoringMethod.MICEVAL_TYPE:
            if config.step_type_source == "gold":
                step_type = step.step_type
            else:
                bundle = build_prompt(LabelTask.STEP_TYPE, record, index)
                verdict = invoke(backend, bundle, retry_limit=config.retry_limit, trial=trial)
                total_calls += 1
                if verdict.is_invalid:
                    # no usable type: the whole chain prediction is invalid
                    invalid_calls += 1
                    return _ChainPrediction(
                        value=0.0,
                        invalid=True,
                        steps=steps,
                        invalid_calls=invalid_calls,
                        total_calls=total_calls,
                    )
                step_type = StepType(verdict.label)
            dims = _TYPE_DIMENSIONS[step_type]
        else:  # MICEVAL_ALL
            step_type = None
            dims = _TYPE_DIMENSIONS[StepType.BOTH]
        kwargs: dict[str, float] = {}
        step_invalid = False
        for dim in dims:
            value, invalid = _ask_score(backend, config, record, index, dim, trial)
            total_calls += 1
            invalid_calls += int(invalid)
            step_invalid = step_invalid or invalid
            kwargs[_DIM_TO_FIELD[dim]] = value
        components = ComponentScores(**kwargs)
        if method is ScoringMethod.MICEVAL_TYPE:
            value = metrics.step_correctness_typed(step_type, components)
        else:
            value = metrics.step_correctness_all(components)
        chain_invalid = chain_invalid or step_invalid
        step_values.append(value)
        steps.append(
            {
                "step_index": index,
                "step_type": step_type.value if step_type else None,
                "value": value,
                "components": kwargs,
                "invalid": step_invalid,
            }
        )
    return _ChainPrediction(
        value=geo_mean(step_values),
        invalid=chain_invalid,
        steps=steps,
        invalid_calls=invalid_calls,
        total_calls=total_calls,
    )


def _correlation_cell(
    refs: list[float],
    preds: list[float],
    flags: list[bool],
    orientation: Orientation,
    want_spearman: bool,
) -> dict:
    sample = PairedSample.build(refs, preds, flags)
    cell: dict = {"n": len(refs), "invalid_proportion": sample.invalid_proportion}
    try:
        cell["somers_d"] = somers_d(sample, orientation)
    except UndefinedStatisticError as exc:
        cell["somers_d"] = None
        cell["somers_d_error"] = str(exc)
    if want_spearman:
        try:
            cell["spearman"] = spearman_rho(sample)
        except UndefinedStatisticError as exc:
            cell["spearman"] = None
            cell["spearman_error"] = str(exc)
    return cell


def _mean_cells(cells: list[dict]) -> dict:
    """Average correlation cells across trials; an error in any trial wins."""
    out = dict(cells[0])
    for key in ("somers_d", "spearman"):
        if key in out:
            values = [c.get(key) for c in cells]
            out[key] = None if any(v is None for v in values) else _mean(values)
            errors = [c.get(f"{key}_error") for c in cells if c.get(f"{key}_error")]
            if errors:
                out[f"{key}_error"] = errors[0]
    return out


def run_scoring(config: ExperimentConfig, dataset: Dataset, backend: JudgeBackend) -> ExperimentReport:
    records = usable_records(dataset, config.split)
    method = config.method
    trials = list(range(config.trials))
    predictions: list[list[_ChainPrediction]] = []  # [trial][record]
    for trial in trials:
        try:
            predictions.append(
                _map_ordered(
                    config,
                    lambda record: score_chain(config, backend, record, method, trial),
                    records,
                )
            )
        except TransportError as exc:
            partial = _scoring_traces(records, predictions, trials)
            raise ExperimentError(
                f"judge transport failure during scoring: {exc}", partial_traces=partial
            ) from exc

    chain_groups: dict[str, dict[int, tuple[list, list, list]]] = {}
    step_groups: dict[str, dict[int, tuple[list, list, list]]] = {}
    invalid_calls = total_calls = 0

    def push(groups, key, trial, ref, pred, flag):
        refs, preds, flags = groups.setdefault(key, {}).setdefault(trial, ([], [], []))
        refs.append(ref)
        preds.append(pred)
        flags.append(flag)

    for position, record in enumerate(records):
        reference = 1.0 if record.gold.mcot_correct else 0.0
        for trial in trials:
            prediction = predictions[trial][position]
            invalid_calls += prediction.invalid_calls
            total_calls += prediction.total_calls
            push(chain_groups, "overall", trial, reference, prediction.value, prediction.invalid)
            push(
                chain_groups,
                f"split:{record.split}",
                trial,
                reference,
                prediction.value,
                prediction.invalid,
            )
            if config.per_step and method is not ScoringMethod.HOLISTIC:
                for step_trace, gold_step in zip(prediction.steps, record.gold.steps):
                    step_ref = metrics.reference_step_value(gold_step, config.relevance_mode)
                    push(step_groups, "overall", trial, step_ref, step_trace["value"], step_trace["invalid"])
                    push(
                        step_groups,
                        f"type:{gold_step.step_type.value}",
                        trial,
                        step_ref,
                        step_trace["value"],
                        step_trace["invalid"],
                    )

    def collapse(groups) -> dict:
        table = {}
        for key in sorted(groups):
            cells = [
                _correlation_cell(*groups[key][trial], config.orientation, config.spearman)
                for trial in trials
            ]
            table[key] = _mean_cells(cells)
        return table

    tables = {
        "method": method.value,
        "correlations": collapse(chain_groups),
        "invalid_call_proportion": (invalid_calls / total_calls) if total_calls else 0.0,
    }
    if config.per_step and step_groups:
        tables["per_step_correlations"] = collapse(step_groups)
    return ExperimentReport(
        kind="scoring",
        config=config.echo(),
        metadata=_metadata(records, [(s, t) for s in config.seeds for t in trials]),
        tables=tables,
        traces=_scoring_traces(records, predictions, trials),
    )


def _scoring_traces(records, predictions, trials) -> list:
    traces = []
    for position, record in enumerate(records):
        entries = []
        for trial in trials:
            if trial >= len(predictions) or position >= len(predictions[trial]):
                continue
            prediction = predictions[trial][position]
            entries.append(
                {
                    "trial": trial,
                    "prediction": prediction.value,
                    "invalid": prediction.invalid,
                    "steps": prediction.steps,
                }
            )
        traces.append(
            {
                "record_id": record.id,
                "split": record.split,
                "reference": 1.0 if record.gold.mcot_correct else 0.0,
                "trials": entries,
            }
        )
    return traces


# ---------------------------------------------------------------------------
# choice ranking


def run_choice_ranking(
    config: ExperimentConfig,
    dataset: Dataset,
    backend: JudgeBackend,
    ranking: RankingSet | None = None,
) -> ExperimentReport:
    records = usable_records(dataset, config.split)
    if ranking is None:
        subset = Dataset(records=records)
        ranking = export_ranking_set(subset)
    if not ranking.groups:
        raise ExperimentError("ranking set is empty; nothing to rank")
    trials = list(range(config.trials))
    flat_options = [option for group in ranking.groups for option in group.options]
    scores_by_trial: list[list[float]] = []
    for trial in trials:
        try:
            chains = _map_ordered(
                config,
                lambda option: score_chain(config, backend, option, config.method, trial),
                flat_options,
            )
        except TransportError as exc:
            raise ExperimentError(
                f"judge transport failure during ranking: {exc}", partial_traces=[]
            ) from exc
        scores_by_trial.append([c.value for c in chains])

    traces: list = []
    per_trial_correct = [0] * len(trials)
    cursor = 0
    for group in ranking.groups:
        span = slice(cursor, cursor + len(group.options))
        cursor += len(group.options)
        group_trace: dict = {
            "question_key": group.question_key,
            "options": [
                {"record_id": opt.id, "gold_correct": opt.gold.mcot_correct}
                for opt in group.options
            ],
            "trials": [],
        }
        for trial in trials:
            scores = scores_by_trial[trial][span]
            best = max(scores)
            picked = scores.index(best)  # ties break to the lowest option index
            tie = scores.count(best) > 1
            correct = group.options[picked].gold.mcot_correct
            per_trial_correct[trial] += int(correct)
            group_trace["trials"].append(
                {
                    "trial": trial,
                    "scores": scores,
                    "picked": group.options[picked].id,
                    "tie": tie,
                    "correct": correct,
                }
            )
        traces.append(group_trace)
    accuracies = [count / len(ranking.groups) for count in per_trial_correct]
    tables = {
        "method": config.method.value,
        "accuracy": _mean(accuracies),
        "n_questions": len(ranking.groups),
        "n_options": len(flat_options),
        "dropped_groups": list(ranking.dropped),
    }
    return ExperimentReport(
        kind="ranking",
        config=config.echo(),
        metadata=_metadata(records, [(s, t) for s in config.seeds for t in trials]),
        tables=tables,
        traces=traces,
    )


def _metadata(records: list[McotRecord], runs: list[tuple[int, int]]) -> dict:
    return {
        "n_records": len(records),
        "runs": [{"seed": seed, "trial": trial} for seed, trial in runs],
        "split_pooling": "overall correlations pool items across splits",
    }
