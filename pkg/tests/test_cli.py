import json

import pytest

from chaingrade.cli import dispatch, make_backend
from chaingrade.dataset_io import SchemaMode, load_dataset
from chaingrade.judge import ConstantBackend, RemoteBackend, ScriptedBackend

from conftest import FIXTURES

DATASET = str(FIXTURES / "chains_synthetic.jsonl")
VOTES = str(FIXTURES / "votes_30.jsonl")


class TestValidate:
    def test_good_file_exits_zero(self, capsys):
        result = dispatch(["validate", DATASET])
        assert result.exit_code == 0
        assert "20 records ok" in capsys.readouterr().out

    def test_missing_file_exits_one(self, capsys):
        result = dispatch(["validate", "no-such-file.jsonl"])
        assert result.exit_code == 1
        assert "error" in capsys.readouterr().err

    def test_repair_mode_reports_drops(self, tmp_path, capsys):
        path = tmp_path / "broken.jsonl"
        good = {"id": "a", "split": "Hard", "question": "?", "image_ref": "n", "steps": ["s"], "annotations": []}
        path.write_text(json.dumps(good) + "\n{bad\n", encoding="utf-8")
        result = dispatch(["validate", str(path), "--mode", "repair"])
        assert result.exit_code == 1
        assert "dropped 1" in capsys.readouterr().out

    def test_unknown_flag_exits_two(self, capsys):
        assert dispatch(["validate", DATASET, "--wat"]).exit_code == 2

    def test_unknown_command_exits_two(self):
        assert dispatch(["frobnicate"]).exit_code == 2


class TestAggregateCommand:
    def test_matches_expected_files_byte_for_byte(self, tmp_path, capsys):
        out = tmp_path / "gold.jsonl"
        report = tmp_path / "report.json"
        result = dispatch(["aggregate", VOTES, "-o", str(out), "--report", str(report)])
        assert result.exit_code == 0
        assert out.read_bytes() == (FIXTURES / "votes_30_expected.jsonl").read_bytes()
        assert report.read_bytes() == (FIXTURES / "votes_30_expected_report.json").read_bytes()
        assert "22 valid / 8 invalid" in capsys.readouterr().out


class TestStatsCommand:
    def test_prints_split_stats(self, capsys):
        result = dispatch(["stats", DATASET, "--split", "Hard"])
        assert result.exit_code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["Hard"]["mcot_count"] == 10

    def test_agreement_flag(self, capsys):
        result = dispatch(["stats", DATASET, "--agreement"])
        assert result.exit_code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["agreement"]["StepType"]["s_score"] == 1.0


class TestExperimentCommands:
    def test_pairwise_writes_report(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        result = dispatch(
            ["pairwise", "--dataset", DATASET, "--judge", "gold-echo", "--trials", "1", "-o", str(out)]
        )
        assert result.exit_code == 0
        payload = json.loads(out.read_text())
        assert payload["tables"]["average_accuracy"] == 1.0
        assert payload["config"]["dataset"] == "chains_synthetic.jsonl"

    @pytest.mark.parametrize("method", ["holistic", "stepwise", "miceval-type", "miceval-all"])
    def test_score_all_methods(self, tmp_path, method):
        out = tmp_path / f"{method}.json"
        result = dispatch(
            [
                "score", "--dataset", DATASET,
                "--judge", f"scripted:{FIXTURES / 'judge_noisy.jsonl'}",
                "--method", method, "--trials", "1", "-o", str(out),
            ]
        )
        assert result.exit_code == 0
        payload = json.loads(out.read_text())
        assert payload["tables"]["method"] == method
        assert "split:Hard" in payload["tables"]["correlations"]
        assert "split:Normal" in payload["tables"]["correlations"]

    def test_rank_with_config_file(self, tmp_path, capsys):
        cfg = tmp_path / "exp.cfg"
        cfg.write_text(
            f"dataset = {DATASET}\njudge = gold-echo\ntrials = 1\nmethod = miceval-all\n",
            encoding="utf-8",
        )
        out = tmp_path / "rank.json"
        result = dispatch(["rank", "--config", str(cfg), "-o", str(out)])
        assert result.exit_code == 0
        assert json.loads(out.read_text())["tables"]["accuracy"] == 1.0

    def test_missing_judge_is_runtime_error(self, capsys):
        assert dispatch(["pairwise", "--dataset", DATASET]).exit_code == 1

    def test_report_reemission(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        dispatch(["score", "--dataset", DATASET, "--judge", "gold-echo",
                  "--method", "stepwise", "--trials", "1", "-o", str(out)])
        result = dispatch(["report", str(out), "--format", "md"])
        assert result.exit_code == 0
        assert "Somers' D" in capsys.readouterr().out
        result = dispatch(["report", str(out), "--format", "csv", "-o", str(tmp_path / "r.csv")])
        assert result.exit_code == 0
        assert (tmp_path / "r.csv").read_text().startswith("section,key,metric,value")


class TestMakeBackend:
    def test_scripted(self):
        backend = make_backend(f"scripted:{FIXTURES / 'judge_noisy.jsonl'}")
        assert isinstance(backend, ScriptedBackend)

    def test_constant(self):
        assert isinstance(make_backend("constant:Correct"), ConstantBackend)

    def test_gold_echo_requires_dataset(self):
        with pytest.raises(ValueError):
            make_backend("gold-echo")
        dataset = load_dataset(FIXTURES / "chains_synthetic.jsonl", SchemaMode.STRICT)
        assert isinstance(make_backend("gold-echo", dataset), ScriptedBackend)

    def test_remote_spec(self):
        backend = make_backend("remote:http://judge.local/v1,big-model")
        assert isinstance(backend, RemoteBackend)
        assert backend.model == "big-model"
        with pytest.raises(ValueError):
            make_backend("remote:missing-model")

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            make_backend("wat:??")


class TestEndToEndDeterminism:
    def test_same_argv_same_bytes(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        argv = ["pairwise", "--dataset", DATASET, "--judge", "gold-echo", "--trials", "2"]
        assert dispatch(argv + ["-o", str(a)]).exit_code == 0
        assert dispatch(argv + ["-o", str(b)]).exit_code == 0
        assert a.read_bytes() == b.read_bytes()

    def test_record_permutation_same_bytes(self, tmp_path):
        lines = (FIXTURES / "chains_synthetic.jsonl").read_text(encoding="utf-8").strip().splitlines()
        permuted = tmp_path / "chains_synthetic.jsonl"  # same basename for the config echo
        permuted.write_text("\n".join(reversed(lines)) + "\n", encoding="utf-8")
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        dispatch(["rank", "--dataset", DATASET, "--judge", "gold-echo", "--trials", "1", "-o", str(a)])
        dispatch(["rank", "--dataset", str(permuted), "--judge", "gold-echo", "--trials", "1", "-o", str(b)])
        assert a.read_bytes() == b.read_bytes()
