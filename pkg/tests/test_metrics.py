import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from chaingrade.metrics import (
    ScoringMethod,
    chain_correctness_all,
    chain_correctness_type,
    chain_of_step_values,
    geo_mean,
    human_reference_score,
    normalize_score10,
    reference_components,
    reference_step_value,
    step_correctness_all,
    step_correctness_description,
    step_correctness_reasoning,
    step_correctness_typed,
    verification_bit,
)
from chaingrade.model import (
    ComponentScores,
    GoldStepLabel,
    LabelTask,
    RelevanceMode,
    SchemaError,
    StepType,
)

from oracles import product_root

unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


def comp(d_c=None, d_r=None, l_c=None, l_r=None, info=None) -> ComponentScores:
    return ComponentScores(
        s_d_correct=d_c, s_d_relevant=d_r, s_l_correct=l_c, s_l_relevant=l_r, s_info=info
    )


class TestGeoMean:
    def test_identity_on_ones(self):
        assert geo_mean([1.0, 1.0]) == 1.0

    def test_zero_annihilates(self):
        assert geo_mean([0.0, 0.9]) == 0.0

    def test_known_value(self):
        assert geo_mean([0.5, 0.8]) == pytest.approx(0.632456, abs=1e-6)
        assert geo_mean([0.5, 0.8]) == pytest.approx(product_root([0.5, 0.8]), abs=1e-12)

    def test_empty_and_out_of_range(self):
        with pytest.raises(ValueError):
            geo_mean([])
        with pytest.raises(ValueError):
            geo_mean([1.2])
        with pytest.raises(ValueError):
            geo_mean([-0.1])

    @given(st.lists(unit, min_size=1, max_size=8))
    @settings(max_examples=300, deadline=None)
    def test_bounds_and_permutation(self, xs):
        value = geo_mean(xs)
        assert min(xs) - 1e-12 <= value <= max(xs) + 1e-12
        shuffled = list(xs)
        random.Random(0).shuffle(shuffled)
        assert geo_mean(shuffled) == pytest.approx(value, abs=1e-12)
        assert geo_mean([xs[0]]) == xs[0]

    @given(st.lists(unit, min_size=1, max_size=8), st.floats(min_value=0.01, max_value=1.0))
    @settings(max_examples=300, deadline=None)
    def test_homogeneity(self, xs, c):
        scaled = geo_mean([c * x for x in xs])
        assert scaled == pytest.approx(c * geo_mean(xs), abs=1e-9)


class TestStepFormulas:
    def test_description_formula(self):
        assert step_correctness_description(comp(d_c=1.0, d_r=1.0)) == 1.0
        assert step_correctness_description(comp(d_c=0.5, d_r=1.0)) == pytest.approx(
            math.sqrt(0.5), abs=1e-6
        )
        assert step_correctness_description(comp(d_c=0.9, d_r=0.0)) == 0.0

    def test_reasoning_formula(self):
        assert step_correctness_reasoning(comp(l_c=0.9, l_r=0.9, info=0.9)) == pytest.approx(0.9)
        assert step_correctness_reasoning(comp(l_c=1.0, l_r=1.0, info=0.0)) == 0.0
        assert step_correctness_reasoning(comp(l_c=0.8, l_r=0.9, info=1.0)) == pytest.approx(
            0.72 ** (1 / 3), abs=1e-6
        )
        assert step_correctness_reasoning(comp(l_c=0.8, l_r=0.9, info=1.0)) == pytest.approx(
            0.896281, abs=1e-6
        )

    def test_missing_component_errors(self):
        with pytest.raises(SchemaError):
            step_correctness_description(comp(d_c=0.5))
        with pytest.raises(SchemaError):
            step_correctness_reasoning(comp(l_c=0.5, l_r=0.5))

    def test_both_step_combines_the_two_formulas(self):
        scores = comp(d_c=0.5, d_r=1.0, l_c=0.8, l_r=0.9, info=1.0)
        expected = product_root([product_root([0.5, 1.0]), product_root([0.8, 0.9, 1.0])])
        assert step_correctness_typed(StepType.BOTH, scores) == pytest.approx(expected, abs=1e-12)
        assert step_correctness_all(scores) == pytest.approx(expected, abs=1e-12)


class TestChainScores:
    def test_type_conditioned_chain(self):
        # description step value 1.0, reasoning step value 0.64 -> sqrt(0.64) = 0.8
        steps = [
            (StepType.DESCRIPTION, comp(d_c=1.0, d_r=1.0)),
            (StepType.REASONING, comp(l_c=0.64, l_r=0.64, info=0.64)),
        ]
        score = chain_correctness_type(steps)
        assert score.per_step[1].value == pytest.approx(0.64, abs=1e-12)
        assert score.value == pytest.approx(0.8, abs=1e-6)
        assert score.method is ScoringMethod.MICEVAL_TYPE

    def test_single_description_step(self):
        score = chain_correctness_type([(StepType.DESCRIPTION, comp(d_c=1.0, d_r=1.0))])
        assert score.value == 1.0

    def test_chain_all_nested_form(self):
        steps = [comp(d_c=0.9, d_r=0.8, l_c=0.7, l_r=1.0, info=0.6)]
        expected = product_root([product_root([0.9, 0.8]), product_root([0.7, 1.0, 0.6])])
        assert chain_correctness_all(steps).value == pytest.approx(expected, abs=1e-12)
        assert chain_correctness_all([comp(1.0, 1.0, 1.0, 1.0, 1.0)]).value == 1.0
        assert chain_correctness_all([comp(1.0, 1.0, 1.0, 1.0, 0.0)]).value == 0.0

    def test_chain_type_errors_without_components_for_type(self):
        with pytest.raises(SchemaError):
            chain_correctness_type([(StepType.REASONING, comp(d_c=1.0, d_r=1.0))])

    def test_empty_chain_is_an_error(self):
        with pytest.raises(ValueError):
            chain_correctness_type([])
        with pytest.raises(ValueError):
            chain_correctness_all([])
        with pytest.raises(ValueError):
            chain_of_step_values([], ScoringMethod.STEPWISE)

    def test_all_description_reduction(self):
        steps = [(StepType.DESCRIPTION, comp(d_c=0.7, d_r=0.9)) for _ in range(3)]
        chained = chain_correctness_type(steps).value
        direct = geo_mean([step_correctness_description(comp(d_c=0.7, d_r=0.9))] * 3)
        assert chained == pytest.approx(direct, abs=1e-12)

    def test_matches_product_root_oracle_on_random_chains(self):
        rng = random.Random(97)
        for _ in range(200):
            n = rng.randint(1, 6)
            typed_steps = []
            all_steps = []
            for _ in range(n):
                step_type = rng.choice(list(StepType))
                scores = comp(
                    d_c=rng.random(), d_r=rng.random(),
                    l_c=rng.random(), l_r=rng.random(), info=rng.random(),
                )
                typed_steps.append((step_type, scores))
                all_steps.append(scores)
            typed_expected = product_root(
                [
                    {
                        StepType.DESCRIPTION: lambda s: product_root([s.s_d_correct, s.s_d_relevant]),
                        StepType.REASONING: lambda s: product_root([s.s_l_correct, s.s_l_relevant, s.s_info]),
                        StepType.BOTH: lambda s: product_root(
                            [
                                product_root([s.s_d_correct, s.s_d_relevant]),
                                product_root([s.s_l_correct, s.s_l_relevant, s.s_info]),
                            ]
                        ),
                    }[st_](sc)
                    for st_, sc in typed_steps
                ]
            )
            assert chain_correctness_type(typed_steps).value == pytest.approx(typed_expected, abs=1e-6)
            all_expected = product_root(
                [
                    product_root(
                        [
                            product_root([s.s_d_correct, s.s_d_relevant]),
                            product_root([s.s_l_correct, s.s_l_relevant, s.s_info]),
                        ]
                    )
                    for s in all_steps
                ]
            )
            assert chain_correctness_all(all_steps).value == pytest.approx(all_expected, abs=1e-6)


class TestMappings:
    def test_normalize_score10(self):
        assert normalize_score10(10) == 1.0
        assert normalize_score10(0) == 0.0
        assert normalize_score10(7) == 0.7
        for bad in (-1, 11, 5.5, True):
            with pytest.raises(ValueError):
                normalize_score10(bad)

    def test_human_reference_mapping(self):
        assert human_reference_score(LabelTask.DESC_CORRECTNESS, "Partially Correct") == 0.5
        assert human_reference_score(LabelTask.DESC_CORRECTNESS, "Fully Correct") == 1.0
        assert human_reference_score(LabelTask.DESC_CORRECTNESS, "Unsupported") == 0.0
        assert human_reference_score(LabelTask.LOGIC_CORRECTNESS, "Incorrect") == 0.0
        assert human_reference_score(LabelTask.INFORMATIVENESS, "Informative") == 1.0
        assert human_reference_score(LabelTask.MCOT_CORRECTNESS, "Correct") == 1.0

    def test_relevance_mapping_follows_mode(self):
        task = LabelTask.DESC_RELEVANCE
        assert human_reference_score(task, "Image Relevant", RelevanceMode.LENIENT) == 1.0
        assert human_reference_score(task, "Image Relevant", RelevanceMode.STRICT) == 0.0
        assert human_reference_score(task, "Both", RelevanceMode.STRICT) == 1.0
        assert human_reference_score(task, "None", RelevanceMode.LENIENT) == 0.0

    def test_error_type_tasks_have_no_mapping(self):
        with pytest.raises(ValueError):
            human_reference_score(LabelTask.DESC_ERROR_TYPE, "Entity False")
        with pytest.raises(ValueError):
            human_reference_score(LabelTask.STEP_TYPE, "Both")

    def test_verification_bit(self):
        assert verification_bit("Correct", task=LabelTask.LOGIC_CORRECTNESS) == 1
        assert verification_bit(0.49) == 0
        assert verification_bit(0.5) == 1  # ties round up
        assert verification_bit("Partially Correct", task=LabelTask.DESC_CORRECTNESS) == 1

    def test_reference_components_and_step_value(self):
        gold = GoldStepLabel(
            step_index=1,
            step_type=StepType.DESCRIPTION,
            labels={
                LabelTask.DESC_CORRECTNESS: "Partially Correct",
                LabelTask.DESC_ERROR_TYPE: "Entity False",
                LabelTask.DESC_RELEVANCE: "Both",
            },
        )
        scores = reference_components(gold)
        assert scores.s_d_correct == 0.5 and scores.s_d_relevant == 1.0
        assert scores.s_l_correct is None
        assert reference_step_value(gold) == pytest.approx(math.sqrt(0.5), abs=1e-12)
