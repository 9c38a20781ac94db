import pytest
from hypothesis import given, strategies as st

from chaingrade.model import (
    ComponentScores,
    GoldStepLabel,
    LabelTask,
    McotRecord,
    RelevanceMode,
    SchemaError,
    StepAnnotation,
    StepType,
    TASK_DOMAINS,
    derive_mcot_correct,
    derive_step_good,
)

T = LabelTask


def desc_step(correctness="Fully Correct", relevance="Both", index=1, error=None):
    labels = {T.DESC_CORRECTNESS: correctness, T.DESC_RELEVANCE: relevance}
    if error:
        labels[T.DESC_ERROR_TYPE] = error
    return GoldStepLabel(step_index=index, step_type=StepType.DESCRIPTION, labels=labels)


def reas_step(correctness="Correct", relevance="Relevant", info="Informative", index=1, error=None):
    labels = {
        T.LOGIC_CORRECTNESS: correctness,
        T.LOGIC_RELEVANCE: relevance,
        T.INFORMATIVENESS: info,
    }
    if error:
        labels[T.LOGIC_ERROR_TYPE] = error
    return GoldStepLabel(step_index=index, step_type=StepType.REASONING, labels=labels)


class TestDeriveStepGood:
    def test_fully_correct_relevant_description(self):
        assert derive_step_good(desc_step(), RelevanceMode.LENIENT) is True

    def test_uninformative_reasoning_step_is_not_good(self):
        step = reas_step(info="Uninformative")
        assert derive_step_good(step, RelevanceMode.LENIENT) is False
        assert derive_step_good(step, RelevanceMode.STRICT) is False

    def test_image_relevant_only_depends_on_mode(self):
        step = desc_step(relevance="Image Relevant")
        assert derive_step_good(step, RelevanceMode.STRICT) is False
        assert derive_step_good(step, RelevanceMode.LENIENT) is True

    @pytest.mark.parametrize("relevance", TASK_DOMAINS[T.DESC_RELEVANCE])
    @pytest.mark.parametrize("correctness", TASK_DOMAINS[T.DESC_CORRECTNESS])
    def test_description_rule_table(self, correctness, relevance):
        # enumerate the whole rule table against a literal re-statement
        error = None if correctness == "Fully Correct" else "Entity False"
        step = desc_step(correctness, relevance, error=error)
        for mode in RelevanceMode:
            relevant = relevance == "Both" if mode is RelevanceMode.STRICT else relevance != "None"
            expected = (correctness == "Fully Correct") and relevant
            assert derive_step_good(step, mode) is expected

    def test_both_step_requires_both_sides(self):
        labels = {
            T.DESC_CORRECTNESS: "Fully Correct",
            T.DESC_RELEVANCE: "Both",
            T.LOGIC_CORRECTNESS: "Incorrect",
            T.LOGIC_ERROR_TYPE: "Intra-step Incorrect",
            T.LOGIC_RELEVANCE: "Relevant",
            T.INFORMATIVENESS: "Informative",
        }
        step = GoldStepLabel(step_index=1, step_type=StepType.BOTH, labels=labels)
        assert derive_step_good(step, RelevanceMode.LENIENT) is False

    def test_missing_label_names_the_task(self):
        step = GoldStepLabel(
            step_index=2,
            step_type=StepType.DESCRIPTION,
            labels={T.DESC_CORRECTNESS: "Fully Correct"},
        )
        with pytest.raises(SchemaError, match="DescRelevance"):
            derive_step_good(step, RelevanceMode.LENIENT)

    def test_strict_good_implies_lenient_good(self):
        for relevance in TASK_DOMAINS[T.DESC_RELEVANCE]:
            step = desc_step(relevance=relevance)
            if derive_step_good(step, RelevanceMode.STRICT):
                assert derive_step_good(step, RelevanceMode.LENIENT)


class TestDeriveMcotCorrect:
    def test_all_good(self):
        steps = [desc_step(index=1), reas_step(index=2)]
        assert derive_mcot_correct(steps, RelevanceMode.LENIENT) is True

    def test_inter_step_error_spoils_the_chain(self):
        steps = [
            desc_step(index=1),
            reas_step(index=2, correctness="Incorrect", error="Inter-step Incorrect"),
            reas_step(index=3),
        ]
        assert derive_mcot_correct(steps, RelevanceMode.LENIENT) is False

    def test_empty_chain_is_an_error(self):
        with pytest.raises(SchemaError):
            derive_mcot_correct([], RelevanceMode.LENIENT)

    @given(st.lists(st.booleans(), min_size=1, max_size=5))
    def test_matches_conjunction_oracle(self, goods):
        steps = [
            desc_step(index=i) if good else reas_step(index=i, info="Uninformative")
            for i, good in enumerate(goods, start=1)
        ]
        assert derive_mcot_correct(steps, RelevanceMode.LENIENT) is all(goods)

    @given(st.lists(st.booleans(), min_size=1, max_size=5), st.integers(min_value=0, max_value=4))
    def test_flipping_a_step_to_bad_never_fixes_the_chain(self, goods, position):
        position %= len(goods)
        before = all(goods)
        goods[position] = False
        steps = [
            desc_step(index=i) if good else desc_step(index=i, relevance="None")
            for i, good in enumerate(goods, start=1)
        ]
        after = derive_mcot_correct(steps, RelevanceMode.LENIENT)
        assert not (before is False and after is True)


class TestInvariants:
    def test_label_domain_closure(self):
        with pytest.raises(SchemaError):
            StepAnnotation(annotator_id="a", step_index=1, task=T.LOGIC_CORRECTNESS, label="Maybe")

    def test_chain_task_requires_index_zero(self):
        with pytest.raises(SchemaError):
            StepAnnotation(annotator_id="a", step_index=1, task=T.MCOT_CORRECTNESS, label="Correct")
        with pytest.raises(SchemaError):
            StepAnnotation(annotator_id="a", step_index=0, task=T.DESC_CORRECTNESS, label="Unsupported")

    def test_error_label_needs_trigger(self):
        with pytest.raises(SchemaError):
            GoldStepLabel(
                step_index=1,
                step_type=StepType.DESCRIPTION,
                labels={
                    T.DESC_CORRECTNESS: "Fully Correct",
                    T.DESC_RELEVANCE: "Both",
                    T.DESC_ERROR_TYPE: "Entity False",
                },
            )

    def test_type_excludes_foreign_tasks(self):
        with pytest.raises(SchemaError):
            GoldStepLabel(
                step_index=1,
                step_type=StepType.DESCRIPTION,
                labels={T.LOGIC_CORRECTNESS: "Correct"},
            )

    def test_component_scores_bounds(self):
        with pytest.raises(SchemaError):
            ComponentScores(s_d_correct=1.5)
        scores = ComponentScores(s_d_correct=0.5, s_d_relevant=1.0)
        assert scores.require(ComponentScores.DESCRIPTION_FIELDS) == [0.5, 1.0]
        with pytest.raises(SchemaError):
            scores.require(ComponentScores.REASONING_FIELDS)

    def test_record_needs_one_step(self):
        with pytest.raises(SchemaError):
            McotRecord(id="x", split="Hard", question="?", image_ref="none", steps=[])

    def test_annotation_out_of_range(self):
        with pytest.raises(SchemaError, match="references step 5"):
            McotRecord(
                id="x",
                split="Hard",
                question="?",
                image_ref="none",
                steps=["a"],
                annotations=[
                    StepAnnotation(annotator_id="a", step_index=5, task=T.STEP_TYPE, label="Description")
                ],
            )

    def test_duplicate_annotation_rejected(self):
        ann = StepAnnotation(annotator_id="a", step_index=1, task=T.STEP_TYPE, label="Description")
        with pytest.raises(SchemaError, match="duplicate"):
            McotRecord(
                id="x", split="Hard", question="?", image_ref="none", steps=["a"],
                annotations=[ann, ann],
            )
