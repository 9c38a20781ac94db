"""Single entrypoint: validate/aggregate datasets, serve annotation, run experiments.

Exit codes: 0 success, 1 runtime failure (cause on stderr), 2 usage error.
All randomness flows from --seed / --seeds; reports embed only basenames of
input paths so identical inputs produce identical bytes wherever they live.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import dataset_io
from .annotation import aggregate_records, dataset_agreement
from .dataset_io import Dataset, SchemaMode, load_dataset, save_dataset
from .experiments import (
    ExperimentConfig,
    ExperimentReport,
    ReportFormat,
    emit_report,
    load_config,
    run_choice_ranking,
    run_pairwise,
    run_scoring,
)
from .judge import ConstantBackend, RemoteBackend, gold_echo_table, load_scripted_table
from .judge.backends import ScriptedBackend
from .metrics import ScoringMethod
from .model import RelevanceMode
from .stats import Orientation


@dataclasses.dataclass
class CommandResult:
    exit_code: int
    summary: str = ""
    report_path: str | None = None


def make_backend(spec: str, dataset: Dataset | None = None, relevance_mode=RelevanceMode.LENIENT):
    kind, _, rest = spec.partition(":")
    if kind == "scripted":
        return load_scripted_table(rest)
    if kind == "constant":
        return ConstantBackend(text=rest)
    if kind == "gold-echo":
        if dataset is None:
            raise ValueError("gold-echo judge needs a dataset")
        return ScriptedBackend(table=gold_echo_table(dataset.records, relevance_mode), name="gold-echo")
    if kind == "remote":
        endpoint, _, model = rest.partition(",")
        if not endpoint or not model:
            raise ValueError("remote judge spec must be remote:<endpoint>,<model>")
        return RemoteBackend(endpoint=endpoint, model=model)
    raise ValueError(f"unknown judge spec {spec!r}; use scripted:, constant:, gold-echo, or remote:")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chaingrade")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a dataset file against the schema")
    p.add_argument("dataset")
    p.add_argument("--mode", choices=["strict", "repair"], default="strict")

    p = sub.add_parser("aggregate", help="majority-vote gold labels with validity filtering")
    p.add_argument("dataset")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--report", help="validity report path (default <output>.report.json)")
    p.add_argument("--votes", help="vote log to merge into the dataset before aggregating")
    p.add_argument("--relevance-mode", choices=[m.value for m in RelevanceMode], default=None)

    p = sub.add_parser("stats", help="per-split dataset statistics")
    p.add_argument("dataset")
    p.add_argument("--split", default=None)
    p.add_argument("--agreement", action="store_true", help="also report inter-rater agreement")

    p = sub.add_parser("serve-annotation", help="run the annotation HTTP backend")
    p.add_argument("dataset")
    p.add_argument("--votes", required=True, help="append-only vote log path")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8008)
    p.add_argument("--image-root", default=None)
    p.add_argument("--ui-dir", default=None, help="serve a built workbench at /ui")

    for name in ("pairwise", "score", "rank"):
        p = sub.add_parser(name, help=f"run the {name} experiment")
        p.add_argument("--config", help="key = value experiment config file")
        p.add_argument("--dataset")
        p.add_argument("--judge", help="scripted:<path> | constant:<text> | gold-echo | remote:<endpoint>,<model>")
        p.add_argument("--split")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--seeds", default=None, help="comma-separated seed list")
        p.add_argument("--trials", type=int, default=None)
        p.add_argument("--shots", type=int, default=None)
        p.add_argument("--relevance-mode", choices=[m.value for m in RelevanceMode], default=None)
        p.add_argument("--orientation", choices=[o.value for o in Orientation], default=None)
        p.add_argument("--retry-limit", type=int, default=None)
        p.add_argument("-o", "--output", help="structured report path (default stdout)")
        if name == "score":
            p.add_argument(
                "--method",
                choices=[m.value for m in ScoringMethod],
                default=None,
            )
            p.add_argument("--step-type-source", choices=["judge", "gold"], default=None)
            p.add_argument("--per-step", action="store_true", default=None)
        if name == "rank":
            p.add_argument(
                "--method",
                choices=[m.value for m in ScoringMethod],
                default=None,
            )

    p = sub.add_parser("report", help="re-emit a structured report in another format")
    p.add_argument("report")
    p.add_argument("--format", choices=[f.value for f in ReportFormat], default="md")
    p.add_argument("-o", "--output")

    return parser


def _experiment_config(args: argparse.Namespace) -> ExperimentConfig:
    config = load_config(args.config) if args.config else ExperimentConfig()
    overrides: dict = {}
    if args.dataset:
        overrides["dataset"] = args.dataset
    if args.judge:
        overrides["judge"] = args.judge
    if args.split:
        overrides["split"] = None if args.split.lower() == "all" else args.split
    if args.seeds is not None:
        overrides["seeds"] = [int(s) for s in args.seeds.split(",") if s.strip()]
    elif args.seed is not None:
        overrides["seeds"] = [args.seed]
    if args.trials is not None:
        overrides["trials"] = args.trials
    if args.shots is not None:
        overrides["shot_count"] = args.shots
    if args.relevance_mode is not None:
        overrides["relevance_mode"] = RelevanceMode(args.relevance_mode)
    if args.orientation is not None:
        overrides["orientation"] = Orientation(args.orientation)
    if args.retry_limit is not None:
        overrides["retry_limit"] = args.retry_limit
    if getattr(args, "method", None):
        overrides["method"] = ScoringMethod(args.method)
    if getattr(args, "step_type_source", None):
        overrides["step_type_source"] = args.step_type_source
    if getattr(args, "per_step", None):
        overrides["per_step"] = True
    return dataclasses.replace(config, **overrides)


def _write_report(report: ExperimentReport, output: str | None) -> str | None:
    payload = emit_report(report, ReportFormat.STRUCTURED)
    if output:
        Path(output).write_bytes(payload)
        return output
    sys.stdout.write(payload.decode("utf-8"))
    return None


def dispatch(argv: list[str]) -> CommandResult:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage/help
        return CommandResult(exit_code=int(exc.code or 0))
    try:
        return _run(args)
    except Exception as exc:  # runtime failure: report cause, exit 1
        print(f"chaingrade: error: {exc}", file=sys.stderr)
        return CommandResult(exit_code=1, summary=str(exc))


def _run(args: argparse.Namespace) -> CommandResult:
    if args.command == "validate":
        mode = SchemaMode.STRICT if args.mode == "strict" else SchemaMode.REPAIR
        dataset = load_dataset(args.dataset, mode)
        summary = f"{len(dataset.records)} records ok"
        if dataset.repair_report:
            summary += f"; dropped {len(dataset.repair_report)}: " + "; ".join(dataset.repair_report)
            print(summary)
            return CommandResult(exit_code=1, summary=summary)
        print(summary)
        return CommandResult(exit_code=0, summary=summary)

    if args.command == "aggregate":
        dataset = load_dataset(args.dataset, SchemaMode.STRICT)
        records = dataset.records
        if args.votes:
            from .service import AnnotationService

            service = AnnotationService(dataset, vote_log=args.votes)
            records = service.export_records()
        mode = RelevanceMode(args.relevance_mode) if args.relevance_mode else RelevanceMode.LENIENT
        aggregated, report = aggregate_records(records, mode)
        out = Dataset(records=aggregated)
        save_dataset(out, args.output)
        report_path = args.report or f"{args.output}.report.json"
        Path(report_path).write_text(
            json.dumps(report, ensure_ascii=False, sort_keys=True, indent=2) + "\n",
            encoding="utf-8",
        )
        summary = (
            f"{report['records_valid']} valid / {report['records_invalid']} invalid records; "
            f"{report['steps_invalid']} invalid steps"
        )
        print(summary)
        return CommandResult(exit_code=0, summary=summary, report_path=report_path)

    if args.command == "stats":
        dataset = load_dataset(args.dataset, SchemaMode.STRICT)
        usable = [
            r for r in dataset.records
            if r.gold is not None and r.gold.validity.value == "Valid"
        ]
        subset = Dataset(records=usable)
        splits = [args.split] if args.split else sorted({r.split for r in usable})
        out: dict = {}
        for split in splits:
            out[split or "all"] = dataset_io.compute_split_stats(subset, split).to_dict()
        if args.agreement:
            out["agreement"] = {
                name: {"s_score": rep.s_score, "observed_agreement": rep.observed_agreement,
                       "items": rep.item_count}
                for name, rep in dataset_agreement(dataset.records).items()
            }
        print(json.dumps(out, ensure_ascii=False, sort_keys=True, indent=2))
        return CommandResult(exit_code=0, summary=f"stats over {len(usable)} records")

    if args.command == "serve-annotation":
        import uvicorn

        from .service import AnnotationService, create_app

        dataset = load_dataset(args.dataset, SchemaMode.STRICT)
        service = AnnotationService(dataset, vote_log=args.votes, image_root=args.image_root)
        uvicorn.run(create_app(service, ui_dir=args.ui_dir), host=args.host, port=args.port)
        return CommandResult(exit_code=0, summary="server stopped")

    if args.command in ("pairwise", "score", "rank"):
        config = _experiment_config(args)
        if not config.dataset:
            raise ValueError("no dataset given (use --dataset or a config file)")
        if not config.judge:
            raise ValueError("no judge given (use --judge or a config file)")
        dataset = load_dataset(config.dataset, SchemaMode.STRICT)
        backend = make_backend(config.judge, dataset, config.relevance_mode)
        if args.command == "pairwise":
            report = run_pairwise(config, dataset, backend)
            summary = f"pairwise over {report.metadata['n_records']} records"
        elif args.command == "score":
            report = run_scoring(config, dataset, backend)
            summary = f"scoring ({config.method.value}) over {report.metadata['n_records']} records"
        else:
            report = run_choice_ranking(config, dataset, backend)
            summary = (
                f"ranking accuracy {report.tables['accuracy']:.3f} "
                f"over {report.tables['n_questions']} questions"
            )
        path = _write_report(report, args.output)
        if path:
            print(summary + f" -> {path}")
        return CommandResult(exit_code=0, summary=summary, report_path=path)

    if args.command == "report":
        raw = json.loads(Path(args.report).read_text(encoding="utf-8"))
        report = ExperimentReport(**raw)
        payload = emit_report(report, ReportFormat(args.format))
        if args.output:
            Path(args.output).write_bytes(payload)
        else:
            sys.stdout.write(payload.decode("utf-8"))
        return CommandResult(exit_code=0, summary=f"emitted {args.format}", report_path=args.output)

    raise ValueError(f"unhandled command {args.command!r}")


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]).exit_code)


if __name__ == "__main__":
    main()
