"""Regenerate the checked-in golden reports from the bundled fixtures.

Run from the repo root after make_fixtures.py:  python fixtures/make_goldens.py

The goldens freeze full CLI runs (scripted judge, three trials, seed 0) and
guard against any behavior drift; regenerate them only after an intentional,
reviewed change to report content.
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from chaingrade.cli import dispatch  # noqa: E402

HERE = Path(__file__).resolve().parent
GOLDEN = HERE / "golden"

DATASET = str(HERE / "chains_synthetic.jsonl")
JUDGE = f"scripted:{HERE / 'judge_noisy.jsonl'}"
COMMON = ["--dataset", DATASET, "--judge", JUDGE, "--trials", "3", "--seed", "0"]


def main() -> None:
    GOLDEN.mkdir(exist_ok=True)
    runs = [(["pairwise", *COMMON], "pairwise.json")]
    for method in ("holistic", "stepwise", "miceval-type", "miceval-all"):
        runs.append((["score", *COMMON, "--method", method], f"score_{method}.json"))
    runs.append((["rank", *COMMON, "--method", "miceval-all"], "rank.json"))
    for argv, name in runs:
        result = dispatch(argv + ["-o", str(GOLDEN / name)])
        assert result.exit_code == 0, (argv, result.summary)
        print("wrote", GOLDEN / name)


if __name__ == "__main__":
    main()
