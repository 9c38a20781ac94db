import json
import random

import pytest

from chaingrade.dataset_io import (
    Dataset,
    DatasetError,
    EmptySplitError,
    SchemaMode,
    compute_split_stats,
    dumps_record,
    export_ranking_set,
    load_dataset,
    load_manifest,
    record_from_dict,
    record_to_dict,
    save_dataset,
)
from chaingrade.model import SchemaError

from conftest import FIXTURES


@pytest.fixture(scope="module")
def synthetic():
    return load_dataset(FIXTURES / "chains_synthetic.jsonl", SchemaMode.STRICT)


@pytest.fixture(scope="module")
def manifest():
    return load_manifest(FIXTURES / "chains_synthetic.manifest.json")


class TestLoad:
    def test_well_formed_fixture(self, synthetic):
        assert len(synthetic.records) == 20
        assert synthetic.source_digest
        assert not synthetic.repair_report

    def test_round_trip_identical(self, synthetic, tmp_path):
        out = tmp_path / "copy.jsonl"
        save_dataset(synthetic, out)
        reloaded = load_dataset(out, SchemaMode.STRICT)
        for a, b in zip(synthetic.records, reloaded.records):
            assert record_to_dict(a) == record_to_dict(b)

    def test_chain_task_at_step_level_rejected_with_task_name(self, tmp_path):
        bad = {
            "id": "x1",
            "split": "Hard",
            "question": "?",
            "image_ref": "none",
            "steps": ["a"],
            "annotations": [
                {"annotator_id": "a1", "step_index": 1, "task": "McotCorrectness", "label": "Correct"}
            ],
        }
        path = tmp_path / "bad.jsonl"
        path.write_text(json.dumps(bad) + "\n", encoding="utf-8")
        with pytest.raises(DatasetError, match="McotCorrectness"):
            load_dataset(path, SchemaMode.STRICT)

    def test_strict_rejects_on_first_violation_with_line_number(self, tmp_path):
        lines = [
            json.dumps({"id": "a", "split": "Hard", "question": "?", "image_ref": "n", "steps": ["s"], "annotations": []}),
            "{not json",
        ]
        path = tmp_path / "broken.jsonl"
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        with pytest.raises(DatasetError, match="line 2"):
            load_dataset(path, SchemaMode.STRICT)

    def test_repair_drops_and_reports(self, tmp_path):
        good = {"id": "a", "split": "Hard", "question": "?", "image_ref": "n", "steps": ["s"], "annotations": []}
        dup = dict(good)
        other = dict(good, id="b")
        path = tmp_path / "dup.jsonl"
        path.write_text("\n".join(json.dumps(x) for x in [good, dup, other]) + "\n", encoding="utf-8")
        dataset = load_dataset(path, SchemaMode.REPAIR)
        assert [r.id for r in dataset.records] == ["a", "b"]
        assert len(dataset.repair_report) == 1
        assert "duplicate" in dataset.repair_report[0]

    def test_duplicate_id_rejected_in_strict(self, tmp_path):
        good = {"id": "a", "split": "Hard", "question": "?", "image_ref": "n", "steps": ["s"], "annotations": []}
        path = tmp_path / "dup.jsonl"
        path.write_text(json.dumps(good) + "\n" + json.dumps(good) + "\n", encoding="utf-8")
        with pytest.raises(DatasetError, match="duplicate"):
            load_dataset(path, SchemaMode.STRICT)

    def test_unknown_field_rejected(self):
        with pytest.raises(SchemaError, match="unknown record fields"):
            record_from_dict({"id": "a", "split": "Hard", "question": "?", "image_ref": "n",
                              "steps": ["s"], "annotations": [], "anotations": []})

    def test_label_outside_domain_rejected(self):
        with pytest.raises(SchemaError):
            record_from_dict(
                {
                    "id": "a", "split": "Hard", "question": "?", "image_ref": "n", "steps": ["s"],
                    "annotations": [
                        {"annotator_id": "a1", "step_index": 1, "task": "StepType", "label": "Wibble"}
                    ],
                }
            )


class TestSplitStats:
    def test_single_record(self, synthetic):
        record = synthetic.by_id["r07"]  # 2 steps
        stats = compute_split_stats(Dataset(records=[record]), "Hard")
        assert stats.mcot_count == 1
        assert stats.step_count == 2
        assert stats.avg_steps == 2.0

    def test_matches_manifest(self, synthetic, manifest):
        for split, expected in manifest["splits"].items():
            stats = compute_split_stats(synthetic, split)
            assert stats.question_count == expected["question_count"]
            assert stats.mcot_count == expected["mcot_count"]
            assert stats.step_count == expected["step_count"]
            assert stats.avg_steps == pytest.approx(expected["avg_steps"])
            assert stats.description_steps == expected["description_steps"]
            assert stats.reasoning_steps == expected["reasoning_steps"]
            assert stats.both_steps == expected["both_steps"]
            assert stats.description_fully_correct == expected["description_fully_correct"]
            assert stats.logic_fully_correct == expected["logic_fully_correct"]
            assert stats.fully_correct_mcots == expected["fully_correct_mcots"]

    def test_component_counts_sum_to_step_count(self, synthetic):
        stats = compute_split_stats(synthetic, None)
        assert stats.description_steps + stats.reasoning_steps + stats.both_steps == stats.step_count

    def test_permutation_invariance(self, synthetic):
        records = list(synthetic.records)
        random.Random(0).shuffle(records)
        shuffled = compute_split_stats(Dataset(records=records), "Normal")
        assert shuffled == compute_split_stats(synthetic, "Normal")

    def test_empty_split_error(self, synthetic):
        with pytest.raises(EmptySplitError):
            compute_split_stats(synthetic, "NoSuchSplit")

    def test_missing_gold_error(self):
        raw = {"id": "a", "split": "Hard", "question": "?", "image_ref": "n", "steps": ["s"], "annotations": []}
        dataset = Dataset(records=[record_from_dict(raw)])
        with pytest.raises(DatasetError, match="gold"):
            compute_split_stats(dataset, "Hard")


class TestRankingSet:
    def test_fixture_groups_match_manifest(self, synthetic, manifest):
        ranking = export_ranking_set(synthetic)
        assert len(ranking.groups) == manifest["ranking"]["valid_groups"]
        option_count = sum(len(g.options) for g in ranking.groups)
        assert option_count == manifest["ranking"]["total_options_in_valid_groups"]

    def test_every_group_satisfies_the_rule(self, synthetic):
        for group in export_ranking_set(synthetic).groups:
            verdicts = [o.gold.mcot_correct for o in group.options]
            assert len(verdicts) >= 2
            assert any(verdicts) and not all(verdicts)

    def test_all_correct_group_dropped_and_reported(self, synthetic):
        ranking = export_ranking_set(synthetic)
        assert any("gold-correct" in entry for entry in ranking.dropped)
        assert any("only 1 option" in entry for entry in ranking.dropped)

    def test_serialization_is_stable(self, synthetic):
        lines_a = [dumps_record(r) for r in synthetic.records]
        lines_b = [dumps_record(r) for r in synthetic.records]
        assert lines_a == lines_b
