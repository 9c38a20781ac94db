"""Build the checked-in synthetic fixtures.

Run from the repo root:  python fixtures/make_fixtures.py

Outputs (all deterministic):
  chains_synthetic.jsonl           20 gold-labeled records, 2 splits, ranking groups
  chains_synthetic.manifest.json   expected stats, counted here (not by the package)
  votes_30.jsonl                    30 vote-only records covering the validity rules
  votes_30_expected.jsonl           hand-declared gold for votes_30 (aggregate must match)
  votes_30_expected_report.json     hand-counted validity report for votes_30
  judge_noisy.jsonl                 scripted judge: mix of gold, wrong, garbage answers
  judge_30garbage.jsonl             scripted judge with exactly-planted garbage share
  judge_30garbage.manifest.json     planted counts per task for hand-checking
  pairwise.cfg                      sample experiment config for the CLI

Expected outcomes in this file are declared by hand, case by case; the
package's aggregation/metric code is never consulted when writing the
expected files.
"""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from chaingrade.dataset_io import Dataset, dumps_record, record_to_dict  # noqa: E402
from chaingrade.judge.backends import save_scripted_table, table_key  # noqa: E402
from chaingrade.judge.prompts import ScoreTask  # noqa: E402
from chaingrade.model import (  # noqa: E402
    ChainValidity,
    GoldChain,
    GoldStepLabel,
    LabelTask,
    McotRecord,
    StepAnnotation,
    StepType,
    TASK_DOMAINS,
)

HERE = Path(__file__).resolve().parent

T = LabelTask
D, R, B = StepType.DESCRIPTION, StepType.REASONING, StepType.BOTH

# Shorthand for labels
FC, PC, UN = "Fully Correct", "Partially Correct", "Unsupported"
BOTH, IMG, LOG, NONE = "Both", "Image Relevant", "Logic Relevant", "None"
ENT, ATT, SPA, NSP = (
    "Entity False",
    "Attribute False",
    "Spatial Relationship False",
    "Non-spatial Relationship False",
)
COR, INC = "Correct", "Incorrect"
REL, IRR = "Relevant", "Irrelevant"
INF, UNI = "Informative", "Uninformative"
ITR, IRA = "Inter-step Incorrect", "Intra-step Incorrect"


# ---------------------------------------------------------------------------
# 1. The 20-record experiment fixture.
#
# Each step: (step_type, {task: label}, good_flag) where good_flag is judged
# here, by hand, from the definitions (description steps: fully correct and
# relevant under the lenient reading; reasoning steps: correct, relevant,
# informative; Both steps: both conditions).

STEP_TEXTS = [
    "The image shows {}.",
    "There is {} near the center.",
    "This suggests {}.",
    "Therefore the answer involves {}.",
    "It can be seen that {}.",
]

FILLERS = [
    "a red ball on the grass",
    "a wooden table with two cups",
    "a tall clock by the road",
    "a dog behind a laptop",
    "two magnets facing each other",
    "a bus in the rain",
    "a striped quilt on the bed",
    "a plate of sliced fruit",
    "a flag waving in the wind",
    "a giraffe beside short trees",
]


def _step_text(record_index: int, step_index: int) -> str:
    template = STEP_TEXTS[(record_index + step_index) % len(STEP_TEXTS)]
    return template.format(FILLERS[(record_index * 3 + step_index) % len(FILLERS)])


def d_good():
    return (D, {T.DESC_CORRECTNESS: FC, T.DESC_RELEVANCE: BOTH}, True)


def r_good():
    return (R, {T.LOGIC_CORRECTNESS: COR, T.LOGIC_RELEVANCE: REL, T.INFORMATIVENESS: INF}, True)


def b_good():
    return (
        B,
        {
            T.DESC_CORRECTNESS: FC,
            T.DESC_RELEVANCE: BOTH,
            T.LOGIC_CORRECTNESS: COR,
            T.LOGIC_RELEVANCE: REL,
            T.INFORMATIVENESS: INF,
        },
        True,
    )


def d_bad(correctness=PC, error=ATT, relevance=BOTH):
    labels = {T.DESC_CORRECTNESS: correctness, T.DESC_RELEVANCE: relevance}
    if correctness in (PC, UN):
        labels[T.DESC_ERROR_TYPE] = error
    good = correctness == FC and relevance != NONE
    return (D, labels, good)


def r_bad(correctness=INC, error=ITR, relevance=REL, info=INF):
    labels = {T.LOGIC_CORRECTNESS: correctness, T.LOGIC_RELEVANCE: relevance, T.INFORMATIVENESS: info}
    if correctness == INC:
        labels[T.LOGIC_ERROR_TYPE] = error
    good = correctness == COR and relevance == REL and info == INF
    return (R, labels, good)


# (id, split, question_id, question, [steps...], prediction_correct)
RECORDS = [
    ("r01", "Hard", "q1", "Why is the clock there?",
     [d_good(), r_good(), r_good()], True),
    ("r02", "Hard", "q1", "Why is the clock there?",
     [d_bad(PC, ENT), r_good(), r_bad(INC, ITR)], False),
    ("r03", "Hard", "q2", "Is the dog right of the laptop?",
     [d_good(), d_good(), r_good()], True),
    ("r04", "Hard", "q2", "Is the dog right of the laptop?",
     [d_bad(UN, SPA), r_bad(INC, IRA)], False),
    ("r05", "Hard", "q2", "Is the dog right of the laptop?",
     [d_bad(PC, ATT, IMG), r_bad(COR, None, IRR), r_good()], False),
    ("r06", "Hard", "q3", "Do the magnets attract or repel?",
     [d_good(), b_good(), r_good(), r_good()], True),
    ("r07", "Hard", "q3", "Do the magnets attract or repel?",
     [d_good(), r_good()], True),
    ("r08", "Hard", "q3", "Do the magnets attract or repel?",
     [d_bad(UN, ENT), r_bad(INC, "Both"), r_bad(COR, None, REL, UNI)], False),
    ("r09", "Hard", "q4", "What is behind the bus?",
     [d_bad(FC, None, NONE), r_good()], False),
    ("r10", "Hard", "q4", "What is behind the bus?",
     [d_good(), d_good(), r_good(), r_good(), r_good()], True),
    ("r11", "Normal", "q5", "What color are the suitcases?",
     [d_good(), r_good()], True),
    ("r12", "Normal", "q5", "What color are the suitcases?",
     [b_good(), r_good()], True),
    ("r13", "Normal", "q6", "Is it a box?",
     [d_good(), r_good(), r_good()], True),
    ("r14", "Normal", "q7", "What fruit is on the plate?",
     [d_good(), d_good(), r_good()], True),
    ("r15", "Normal", "q7", "What fruit is on the plate?",
     [d_bad(PC, SPA), r_bad(INC, ITR), r_bad(COR, None, REL, UNI)], False),
    ("r16", "Normal", "q8", "Is the wind blowing the flag?",
     [d_bad(PC, NSP, LOG), r_bad(INC, IRA)], False),
    ("r17", "Normal", "q8", "Is the wind blowing the flag?",
     [d_good(), r_good(), r_good()], True),
    ("r18", "Normal", "q9", "Are the trees taller than the giraffes?",
     [d_bad(UN, ATT), r_bad(INC, "Both", IRR), d_bad(FC, None, IMG)], False),
    ("r19", "Normal", "q10", "What is this container?",
     [d_bad(UN, NSP, LOG), b_good(), r_bad(COR, None, REL, UNI)], False),
    ("r20", "Normal", "q11", "What will happen next?",
     [d_bad(PC, ENT, NONE), r_bad(INC, ITR, IRR, UNI)], False),
]

RATERS = ("a1", "a2", "a3")


def build_record(index: int, spec) -> tuple[McotRecord, bool]:
    rid, split, question_id, question, steps, prediction = spec
    texts = [_step_text(index, i) for i in range(len(steps))]
    gold_steps = []
    annotations = []
    all_good = True
    for i, (step_type, labels, good) in enumerate(steps, start=1):
        all_good = all_good and good
        gold_steps.append(GoldStepLabel(step_index=i, step_type=step_type, labels=dict(labels)))
        for rater in RATERS:
            annotations.append(
                StepAnnotation(annotator_id=rater, step_index=i, task=T.STEP_TYPE, label=step_type.value)
            )
            for task, label in labels.items():
                annotations.append(
                    StepAnnotation(annotator_id=rater, step_index=i, task=task, label=label)
                )
    for rater in RATERS:
        annotations.append(
            StepAnnotation(
                annotator_id=rater,
                step_index=0,
                task=T.MCOT_CORRECTNESS,
                label=COR if all_good else INC,
            )
        )
    record = McotRecord(
        id=rid,
        split=split,
        question=question,
        image_ref="none",
        steps=texts,
        source_dataset="synthetic",
        generator="fixturegen",
        question_id=question_id,
        annotations=annotations,
        gold=GoldChain(steps=gold_steps, mcot_correct=all_good, validity=ChainValidity.VALID),
        prediction_correct=prediction,
    )
    return record, all_good


def write_synthetic() -> list[McotRecord]:
    records = []
    manifest: dict = {"splits": {}, "ranking": {}}
    per_split: dict[str, dict] = {}
    good_by_question: dict[str, list[bool]] = {}
    split_by_question: dict[str, str] = {}
    for index, spec in enumerate(RECORDS):
        record, all_good = build_record(index, spec)
        records.append(record)
        split = per_split.setdefault(
            record.split,
            {
                "question_count": set(),
                "mcot_count": 0,
                "step_count": 0,
                "description_steps": 0,
                "reasoning_steps": 0,
                "both_steps": 0,
                "description_fully_correct": 0,
                "logic_fully_correct": 0,
                "fully_correct_mcots": 0,
            },
        )
        split["question_count"].add(record.question_id)
        split["mcot_count"] += 1
        split["step_count"] += record.n_steps
        split["fully_correct_mcots"] += int(all_good)
        for step_type, labels, _ in spec[4]:
            if step_type is D:
                split["description_steps"] += 1
                if labels[T.DESC_CORRECTNESS] == FC:
                    split["description_fully_correct"] += 1
            elif step_type is R:
                split["reasoning_steps"] += 1
                if labels[T.LOGIC_CORRECTNESS] == COR:
                    split["logic_fully_correct"] += 1
            else:
                split["both_steps"] += 1
        good_by_question.setdefault(record.question_id, []).append(all_good)
        split_by_question[record.question_id] = record.split
    for split, cells in per_split.items():
        cells["question_count"] = len(cells["question_count"])
        cells["avg_steps"] = cells["step_count"] / cells["mcot_count"]
        manifest["splits"][split] = cells
    valid_groups = {
        q: flags
        for q, flags in good_by_question.items()
        if len(flags) >= 2 and any(flags) and not all(flags)
    }
    manifest["ranking"] = {
        "valid_groups": len(valid_groups),
        "valid_group_questions": sorted(valid_groups),
        "total_questions": len(good_by_question),
        "total_options_in_valid_groups": sum(len(v) for v in valid_groups.values()),
    }
    manifest["good_records"] = sorted(r.id for r, spec in zip(records, RECORDS) if r.gold.mcot_correct)
    with (HERE / "chains_synthetic.jsonl").open("w", encoding="utf-8") as handle:
        for record in records:
            handle.write(dumps_record(record) + "\n")
    (HERE / "chains_synthetic.manifest.json").write_text(
        json.dumps(manifest, ensure_ascii=False, sort_keys=True, indent=2) + "\n",
        encoding="utf-8",
    )
    return records


# ---------------------------------------------------------------------------
# 2. The 30-case vote fixture with hand-declared expected outcomes.
#
# Vote notation: per step, a dict task -> [labels by rater in RATERS order];
# a vote list may name raters explicitly as (rater, label) for partial votes.
# Expected outcome per case: either ("invalid", [reason strings]) or
# ("valid", [per-step (type, labels)], mcot_correct).

def V(task, *labels):
    return task, list(labels)


CASES: list[dict] = []


def case(rid, steps, expected, prediction_votes=None, chain_votes=None, n_raters=3):
    CASES.append(
        {
            "id": rid,
            "steps": steps,
            "expected": expected,
            "prediction_votes": prediction_votes,
            "chain_votes": chain_votes,
            "n_raters": n_raters,
        }
    )


# -- unanimous description, all good -> valid, correct
case(
    "v01",
    [{T.STEP_TYPE: ["Description"] * 3, T.DESC_CORRECTNESS: [FC, FC, FC], T.DESC_RELEVANCE: [BOTH] * 3}],
    ("valid", [(D, {T.DESC_CORRECTNESS: FC, T.DESC_RELEVANCE: BOTH})], True),
)
# -- 2:1 on a subtask still aggregates -> valid, correct
case(
    "v02",
    [{T.STEP_TYPE: ["Description"] * 3, T.DESC_CORRECTNESS: [FC, FC, PC], T.DESC_RELEVANCE: [BOTH] * 3}],
    ("valid", [(D, {T.DESC_CORRECTNESS: FC, T.DESC_RELEVANCE: BOTH})], True),
)
# -- majority Partially Correct triggers the error task -> valid, incorrect
case(
    "v03",
    [
        {
            T.STEP_TYPE: ["Description"] * 3,
            T.DESC_CORRECTNESS: [PC, PC, FC],
            T.DESC_ERROR_TYPE: [("a1", ENT), ("a2", ENT)],
            T.DESC_RELEVANCE: [BOTH, BOTH, IMG],
        }
    ],
    ("valid", [(D, {T.DESC_CORRECTNESS: PC, T.DESC_ERROR_TYPE: ENT, T.DESC_RELEVANCE: BOTH})], False),
)
# -- 1:1:1 tie on a subtask of a unanimous-type step -> invalid
case(
    "v04",
    [
        {
            T.STEP_TYPE: ["Description"] * 3,
            T.DESC_CORRECTNESS: [FC, FC, FC],
            T.DESC_RELEVANCE: [BOTH, IMG, NONE],
        }
    ],
    ("invalid", ["step 1: tie on DescRelevance (1:1:1)"]),
)
# -- one 2:1 step among three; the majority pair agrees -> valid
case(
    "v05",
    [
        {T.STEP_TYPE: ["Description"] * 3, T.DESC_CORRECTNESS: [FC] * 3, T.DESC_RELEVANCE: [BOTH] * 3},
        {
            T.STEP_TYPE: ["Description", "Description", "Reasoning"],
            T.DESC_CORRECTNESS: [("a1", FC), ("a2", FC)],
            T.DESC_RELEVANCE: [("a1", BOTH), ("a2", BOTH)],
            T.LOGIC_CORRECTNESS: [("a3", COR)],
            T.LOGIC_RELEVANCE: [("a3", REL)],
            T.INFORMATIVENESS: [("a3", INF)],
        },
        {T.STEP_TYPE: ["Reasoning"] * 3, T.LOGIC_CORRECTNESS: [COR] * 3, T.LOGIC_RELEVANCE: [REL] * 3, T.INFORMATIVENESS: [INF] * 3},
    ],
    (
        "valid",
        [
            (D, {T.DESC_CORRECTNESS: FC, T.DESC_RELEVANCE: BOTH}),
            (D, {T.DESC_CORRECTNESS: FC, T.DESC_RELEVANCE: BOTH}),
            (R, {T.LOGIC_CORRECTNESS: COR, T.LOGIC_RELEVANCE: REL, T.INFORMATIVENESS: INF}),
        ],
        True,
    ),
)
# -- 2:1 type and the majority pair splits 1:1 -> invalid
case(
    "v06",
    [
        {T.STEP_TYPE: ["Description"] * 3, T.DESC_CORRECTNESS: [FC] * 3, T.DESC_RELEVANCE: [BOTH] * 3},
        {
            T.STEP_TYPE: ["Reasoning", "Reasoning", "Description"],
            T.LOGIC_CORRECTNESS: [("a1", COR), ("a2", INC)],
            T.LOGIC_RELEVANCE: [("a1", REL), ("a2", REL)],
            T.INFORMATIVENESS: [("a1", INF), ("a2", INF)],
            T.DESC_CORRECTNESS: [("a3", FC)],
            T.DESC_RELEVANCE: [("a3", BOTH)],
        },
        {T.STEP_TYPE: ["Reasoning"] * 3, T.LOGIC_CORRECTNESS: [COR] * 3, T.LOGIC_RELEVANCE: [REL] * 3, T.INFORMATIVENESS: [INF] * 3},
    ],
    ("invalid", ["step 2: tie on LogicCorrectness (1:1)"]),
)
# -- four steps, one 2:1 tally (1 < 2 = half of 4) -> valid
case(
    "v07",
    [
        {T.STEP_TYPE: ["Description"] * 3, T.DESC_CORRECTNESS: [FC] * 3, T.DESC_RELEVANCE: [BOTH] * 3},
        {T.STEP_TYPE: ["Reasoning"] * 3, T.LOGIC_CORRECTNESS: [COR] * 3, T.LOGIC_RELEVANCE: [REL] * 3, T.INFORMATIVENESS: [INF] * 3},
        {
            T.STEP_TYPE: ["Reasoning", "Reasoning", "Both"],
            T.LOGIC_CORRECTNESS: [("a1", COR), ("a2", COR)],
            T.LOGIC_RELEVANCE: [("a1", REL), ("a2", REL)],
            T.INFORMATIVENESS: [("a1", INF), ("a2", INF)],
        },
        {T.STEP_TYPE: ["Description"] * 3, T.DESC_CORRECTNESS: [FC] * 3, T.DESC_RELEVANCE: [BOTH] * 3},
    ],
    (
        "valid",
        [
            (D, {T.DESC_CORRECTNESS: FC, T.DESC_RELEVANCE: BOTH}),
            (R, {T.LOGIC_CORRECTNESS: COR, T.LOGIC_RELEVANCE: REL, T.INFORMATIVENESS: INF}),
            (R, {T.LOGIC_CORRECTNESS: COR, T.LOGIC_RELEVANCE: REL, T.INFORMATIVENESS: INF}),
            (D, {T.DESC_CORRECTNESS: FC, T.DESC_RELEVANCE: BOTH}),
        ],
        True,
    ),
)
# -- four steps, two 2:1 tallies (2 >= half of 4) -> invalid chain
case(
    "v08",
    [
        {T.STEP_TYPE: ["Description"] * 3, T.DESC_CORRECTNESS: [FC] * 3, T.DESC_RELEVANCE: [BOTH] * 3},
        {
            T.STEP_TYPE: ["Reasoning", "Reasoning", "Description"],
            T.LOGIC_CORRECTNESS: [("a1", COR), ("a2", COR)],
            T.LOGIC_RELEVANCE: [("a1", REL), ("a2", REL)],
            T.INFORMATIVENESS: [("a1", INF), ("a2", INF)],
        },
        {
            T.STEP_TYPE: ["Description", "Both", "Description"],
            T.DESC_CORRECTNESS: [("a1", FC), ("a3", FC)],
            T.DESC_RELEVANCE: [("a1", BOTH), ("a3", BOTH)],
        },
        {T.STEP_TYPE: ["Reasoning"] * 3, T.LOGIC_CORRECTNESS: [COR] * 3, T.LOGIC_RELEVANCE: [REL] * 3, T.INFORMATIVENESS: [INF] * 3},
    ],
    ("invalid", ["step type split 2:1 on 2 of 4 steps (half or more)"]),
)
# -- unanimous reasoning chain, all good -> correct
case(
    "v09",
    [{T.STEP_TYPE: ["Reasoning"] * 3, T.LOGIC_CORRECTNESS: [COR] * 3, T.LOGIC_RELEVANCE: [REL] * 3, T.INFORMATIVENESS: [INF] * 3}],
    ("valid", [(R, {T.LOGIC_CORRECTNESS: COR, T.LOGIC_RELEVANCE: REL, T.INFORMATIVENESS: INF})], True),
)
# -- correct and relevant but majority uninformative -> incorrect chain
case(
    "v10",
    [{T.STEP_TYPE: ["Reasoning"] * 3, T.LOGIC_CORRECTNESS: [COR] * 3, T.LOGIC_RELEVANCE: [REL] * 3, T.INFORMATIVENESS: [UNI, UNI, INF]}],
    ("valid", [(R, {T.LOGIC_CORRECTNESS: COR, T.LOGIC_RELEVANCE: REL, T.INFORMATIVENESS: UNI})], False),
)
# -- incorrect logic with agreeing error type -> incorrect chain
case(
    "v11",
    [
        {
            T.STEP_TYPE: ["Reasoning"] * 3,
            T.LOGIC_CORRECTNESS: [INC, INC, COR],
            T.LOGIC_ERROR_TYPE: [("a1", ITR), ("a2", ITR)],
            T.LOGIC_RELEVANCE: [REL] * 3,
            T.INFORMATIVENESS: [INF] * 3,
        }
    ],
    (
        "valid",
        [(R, {T.LOGIC_CORRECTNESS: INC, T.LOGIC_ERROR_TYPE: ITR, T.LOGIC_RELEVANCE: REL, T.INFORMATIVENESS: INF})],
        False,
    ),
)
# -- Both-type step, all aspects good -> correct
case(
    "v12",
    [
        {
            T.STEP_TYPE: ["Both"] * 3,
            T.DESC_CORRECTNESS: [FC] * 3,
            T.DESC_RELEVANCE: [BOTH] * 3,
            T.LOGIC_CORRECTNESS: [COR] * 3,
            T.LOGIC_RELEVANCE: [REL] * 3,
            T.INFORMATIVENESS: [INF] * 3,
        }
    ],
    (
        "valid",
        [
            (
                B,
                {
                    T.DESC_CORRECTNESS: FC,
                    T.DESC_RELEVANCE: BOTH,
                    T.LOGIC_CORRECTNESS: COR,
                    T.LOGIC_RELEVANCE: REL,
                    T.INFORMATIVENESS: INF,
                },
            )
        ],
        True,
    ),
)
# -- Both-type step failing only its logic side -> incorrect chain
case(
    "v13",
    [
        {
            T.STEP_TYPE: ["Both"] * 3,
            T.DESC_CORRECTNESS: [FC] * 3,
            T.DESC_RELEVANCE: [BOTH] * 3,
            T.LOGIC_CORRECTNESS: [INC] * 3,
            T.LOGIC_ERROR_TYPE: [IRA] * 3,
            T.LOGIC_RELEVANCE: [REL] * 3,
            T.INFORMATIVENESS: [INF] * 3,
        }
    ],
    (
        "valid",
        [
            (
                B,
                {
                    T.DESC_CORRECTNESS: FC,
                    T.DESC_RELEVANCE: BOTH,
                    T.LOGIC_CORRECTNESS: INC,
                    T.LOGIC_ERROR_TYPE: IRA,
                    T.LOGIC_RELEVANCE: REL,
                    T.INFORMATIVENESS: INF,
                },
            )
        ],
        False,
    ),
)
# -- 1:1:1 on the step type itself -> invalid
case(
    "v14",
    [
        {
            T.STEP_TYPE: ["Description", "Reasoning", "Both"],
            T.DESC_CORRECTNESS: [("a1", FC), ("a3", FC)],
            T.DESC_RELEVANCE: [("a1", BOTH), ("a3", BOTH)],
            T.LOGIC_CORRECTNESS: [("a2", COR), ("a3", COR)],
            T.LOGIC_RELEVANCE: [("a2", REL), ("a3", REL)],
            T.INFORMATIVENESS: [("a2", INF), ("a3", INF)],
        }
    ],
    ("invalid", ["step 1: tie on StepType (1:1:1)"]),
)
# -- partially correct description mid-chain; later logic steps stay Correct
case(
    "v15",
    [
        {T.STEP_TYPE: ["Description"] * 3, T.DESC_CORRECTNESS: [FC] * 3, T.DESC_RELEVANCE: [BOTH] * 3},
        {
            T.STEP_TYPE: ["Description"] * 3,
            T.DESC_CORRECTNESS: [PC] * 3,
            T.DESC_ERROR_TYPE: [ATT] * 3,
            T.DESC_RELEVANCE: [BOTH] * 3,
        },
        {T.STEP_TYPE: ["Reasoning"] * 3, T.LOGIC_CORRECTNESS: [COR] * 3, T.LOGIC_RELEVANCE: [REL] * 3, T.INFORMATIVENESS: [INF] * 3},
        {T.STEP_TYPE: ["Reasoning"] * 3, T.LOGIC_CORRECTNESS: [COR] * 3, T.LOGIC_RELEVANCE: [REL] * 3, T.INFORMATIVENESS: [INF] * 3},
    ],
    (
        "valid",
        [
            (D, {T.DESC_CORRECTNESS: FC, T.DESC_RELEVANCE: BOTH}),
            (D, {T.DESC_CORRECTNESS: PC, T.DESC_ERROR_TYPE: ATT, T.DESC_RELEVANCE: BOTH}),
            (R, {T.LOGIC_CORRECTNESS: COR, T.LOGIC_RELEVANCE: REL, T.INFORMATIVENESS: INF}),
            (R, {T.LOGIC_CORRECTNESS: COR, T.LOGIC_RELEVANCE: REL, T.INFORMATIVENESS: INF}),
        ],
        False,
    ),
)
# -- image-relevant-only description: good under the lenient default
case(
    "v16",
    [{T.STEP_TYPE: ["Description"] * 3, T.DESC_CORRECTNESS: [FC] * 3, T.DESC_RELEVANCE: [IMG] * 3}],
    ("valid", [(D, {T.DESC_CORRECTNESS: FC, T.DESC_RELEVANCE: IMG})], True),
)
# -- relevance None fails either mode -> incorrect
case(
    "v17",
    [{T.STEP_TYPE: ["Description"] * 3, T.DESC_CORRECTNESS: [FC] * 3, T.DESC_RELEVANCE: [NONE] * 3}],
    ("valid", [(D, {T.DESC_CORRECTNESS: FC, T.DESC_RELEVANCE: NONE})], False),
)
# -- unsupported description with spatial error -> incorrect
case(
    "v18",
    [
        {
            T.STEP_TYPE: ["Description"] * 3,
            T.DESC_CORRECTNESS: [UN] * 3,
            T.DESC_ERROR_TYPE: [SPA] * 3,
            T.DESC_RELEVANCE: [IMG] * 3,
        }
    ],
    ("valid", [(D, {T.DESC_CORRECTNESS: UN, T.DESC_ERROR_TYPE: SPA, T.DESC_RELEVANCE: IMG})], False),
)
# -- demanded error task ties 1:1 -> invalid
case(
    "v19",
    [
        {
            T.STEP_TYPE: ["Description"] * 3,
            T.DESC_CORRECTNESS: [PC, PC, FC],
            T.DESC_ERROR_TYPE: [("a1", ENT), ("a2", ATT)],
            T.DESC_RELEVANCE: [BOTH] * 3,
        }
    ],
    ("invalid", ["step 1: tie on DescErrorType (1:1)"]),
)
# -- 2:1 type: the excluded minority vote must not rescue a 1:1 pair
case(
    "v20",
    [
        {T.STEP_TYPE: ["Description"] * 3, T.DESC_CORRECTNESS: [FC] * 3, T.DESC_RELEVANCE: [BOTH] * 3},
        {
            T.STEP_TYPE: ["Description", "Description", "Both"],
            T.DESC_CORRECTNESS: [FC, PC, PC],  # majority pair a1/a2 splits; a3 is excluded
            T.DESC_ERROR_TYPE: [("a2", ENT), ("a3", ENT)],
            T.DESC_RELEVANCE: [BOTH, BOTH, BOTH],
            T.LOGIC_CORRECTNESS: [("a3", COR)],
            T.LOGIC_RELEVANCE: [("a3", REL)],
            T.INFORMATIVENESS: [("a3", INF)],
        },
        {T.STEP_TYPE: ["Reasoning"] * 3, T.LOGIC_CORRECTNESS: [COR] * 3, T.LOGIC_RELEVANCE: [REL] * 3, T.INFORMATIVENESS: [INF] * 3},
    ],
    ("invalid", ["step 2: tie on DescCorrectness (1:1)"]),
)
# -- 2:1 type with a clean majority pair inside a 3-step chain -> valid
case(
    "v21",
    [
        {T.STEP_TYPE: ["Description"] * 3, T.DESC_CORRECTNESS: [FC] * 3, T.DESC_RELEVANCE: [BOTH] * 3},
        {
            T.STEP_TYPE: ["Description", "Description", "Reasoning"],
            T.DESC_CORRECTNESS: [("a1", PC), ("a2", PC)],
            T.DESC_ERROR_TYPE: [("a1", ENT), ("a2", ENT)],
            T.DESC_RELEVANCE: [("a1", BOTH), ("a2", BOTH)],
            T.LOGIC_CORRECTNESS: [("a3", COR)],
            T.LOGIC_RELEVANCE: [("a3", REL)],
            T.INFORMATIVENESS: [("a3", INF)],
        },
        {T.STEP_TYPE: ["Reasoning"] * 3, T.LOGIC_CORRECTNESS: [COR] * 3, T.LOGIC_RELEVANCE: [REL] * 3, T.INFORMATIVENESS: [INF] * 3},
    ],
    (
        "valid",
        [
            (D, {T.DESC_CORRECTNESS: FC, T.DESC_RELEVANCE: BOTH}),
            (D, {T.DESC_CORRECTNESS: PC, T.DESC_ERROR_TYPE: ENT, T.DESC_RELEVANCE: BOTH}),
            (R, {T.LOGIC_CORRECTNESS: COR, T.LOGIC_RELEVANCE: REL, T.INFORMATIVENESS: INF}),
        ],
        False,
    ),
)
# -- chain verdict is derived from steps, not from the chain-level votes
case(
    "v22",
    [{T.STEP_TYPE: ["Description"] * 3, T.DESC_CORRECTNESS: [FC] * 3, T.DESC_RELEVANCE: [BOTH] * 3}],
    ("valid", [(D, {T.DESC_CORRECTNESS: FC, T.DESC_RELEVANCE: BOTH})], True),
    prediction_votes=[COR, COR, INC],
    chain_votes=[INC, INC, INC],
)
# -- prediction-correctness 1:1 tie leaves the field unset
case(
    "v23",
    [{T.STEP_TYPE: ["Description"] * 3, T.DESC_CORRECTNESS: [FC] * 3, T.DESC_RELEVANCE: [BOTH] * 3}],
    ("valid", [(D, {T.DESC_CORRECTNESS: FC, T.DESC_RELEVANCE: BOTH})], True),
    prediction_votes=[("a1", COR), ("a2", INC)],
)
# -- two raters only, unanimous -> valid
case(
    "v24",
    [{T.STEP_TYPE: [("a1", "Description"), ("a2", "Description")], T.DESC_CORRECTNESS: [("a1", FC), ("a2", FC)], T.DESC_RELEVANCE: [("a1", BOTH), ("a2", BOTH)]}],
    ("valid", [(D, {T.DESC_CORRECTNESS: FC, T.DESC_RELEVANCE: BOTH})], True),
    n_raters=2,
)
# -- two raters splitting 1:1 -> invalid
case(
    "v25",
    [{T.STEP_TYPE: [("a1", "Description"), ("a2", "Description")], T.DESC_CORRECTNESS: [("a1", FC), ("a2", PC)], T.DESC_RELEVANCE: [("a1", BOTH), ("a2", BOTH)]}],
    ("invalid", ["step 1: tie on DescCorrectness (1:1)"]),
    n_raters=2,
)
# -- five unanimous steps with one bad one -> incorrect chain
case(
    "v26",
    [
        {T.STEP_TYPE: ["Description"] * 3, T.DESC_CORRECTNESS: [FC] * 3, T.DESC_RELEVANCE: [BOTH] * 3},
        {T.STEP_TYPE: ["Description"] * 3, T.DESC_CORRECTNESS: [FC] * 3, T.DESC_RELEVANCE: [LOG] * 3},
        {T.STEP_TYPE: ["Reasoning"] * 3, T.LOGIC_CORRECTNESS: [COR] * 3, T.LOGIC_RELEVANCE: [REL] * 3, T.INFORMATIVENESS: [INF] * 3},
        {T.STEP_TYPE: ["Reasoning"] * 3, T.LOGIC_CORRECTNESS: [COR] * 3, T.LOGIC_RELEVANCE: [IRR] * 3, T.INFORMATIVENESS: [INF] * 3},
        {T.STEP_TYPE: ["Reasoning"] * 3, T.LOGIC_CORRECTNESS: [COR] * 3, T.LOGIC_RELEVANCE: [REL] * 3, T.INFORMATIVENESS: [INF] * 3},
    ],
    (
        "valid",
        [
            (D, {T.DESC_CORRECTNESS: FC, T.DESC_RELEVANCE: BOTH}),
            (D, {T.DESC_CORRECTNESS: FC, T.DESC_RELEVANCE: LOG}),
            (R, {T.LOGIC_CORRECTNESS: COR, T.LOGIC_RELEVANCE: REL, T.INFORMATIVENESS: INF}),
            (R, {T.LOGIC_CORRECTNESS: COR, T.LOGIC_RELEVANCE: IRR, T.INFORMATIVENESS: INF}),
            (R, {T.LOGIC_CORRECTNESS: COR, T.LOGIC_RELEVANCE: REL, T.INFORMATIVENESS: INF}),
        ],
        False,
    ),
)
# -- 2:1 Both-majority step: majority pair annotates everything -> valid
case(
    "v27",
    [
        {T.STEP_TYPE: ["Description"] * 3, T.DESC_CORRECTNESS: [FC] * 3, T.DESC_RELEVANCE: [BOTH] * 3},
        {
            T.STEP_TYPE: ["Both", "Both", "Description"],
            T.DESC_CORRECTNESS: [FC, FC, FC],
            T.DESC_RELEVANCE: [BOTH, BOTH, BOTH],
            T.LOGIC_CORRECTNESS: [("a1", COR), ("a2", COR)],
            T.LOGIC_RELEVANCE: [("a1", REL), ("a2", REL)],
            T.INFORMATIVENESS: [("a1", INF), ("a2", INF)],
        },
        {T.STEP_TYPE: ["Reasoning"] * 3, T.LOGIC_CORRECTNESS: [COR] * 3, T.LOGIC_RELEVANCE: [REL] * 3, T.INFORMATIVENESS: [INF] * 3},
    ],
    (
        "valid",
        [
            (D, {T.DESC_CORRECTNESS: FC, T.DESC_RELEVANCE: BOTH}),
            (
                B,
                {
                    T.DESC_CORRECTNESS: FC,
                    T.DESC_RELEVANCE: BOTH,
                    T.LOGIC_CORRECTNESS: COR,
                    T.LOGIC_RELEVANCE: REL,
                    T.INFORMATIVENESS: INF,
                },
            ),
            (R, {T.LOGIC_CORRECTNESS: COR, T.LOGIC_RELEVANCE: REL, T.INFORMATIVENESS: INF}),
        ],
        True,
    ),
)
# -- 2:1 Both-majority with a partially correct description side -> incorrect
case(
    "v28",
    [
        {T.STEP_TYPE: ["Description"] * 3, T.DESC_CORRECTNESS: [FC] * 3, T.DESC_RELEVANCE: [BOTH] * 3},
        {
            T.STEP_TYPE: ["Both", "Both", "Description"],
            T.DESC_CORRECTNESS: [PC, PC, FC],
            T.DESC_ERROR_TYPE: [("a1", ATT), ("a2", ATT)],
            T.DESC_RELEVANCE: [BOTH, BOTH, BOTH],
            T.LOGIC_CORRECTNESS: [("a1", COR), ("a2", COR)],
            T.LOGIC_RELEVANCE: [("a1", REL), ("a2", REL)],
            T.INFORMATIVENESS: [("a1", INF), ("a2", INF)],
        },
        {T.STEP_TYPE: ["Reasoning"] * 3, T.LOGIC_CORRECTNESS: [COR] * 3, T.LOGIC_RELEVANCE: [REL] * 3, T.INFORMATIVENESS: [INF] * 3},
    ],
    (
        "valid",
        [
            (D, {T.DESC_CORRECTNESS: FC, T.DESC_RELEVANCE: BOTH}),
            (
                B,
                {
                    T.DESC_CORRECTNESS: PC,
                    T.DESC_ERROR_TYPE: ATT,
                    T.DESC_RELEVANCE: BOTH,
                    T.LOGIC_CORRECTNESS: COR,
                    T.LOGIC_RELEVANCE: REL,
                    T.INFORMATIVENESS: INF,
                },
            ),
            (R, {T.LOGIC_CORRECTNESS: COR, T.LOGIC_RELEVANCE: REL, T.INFORMATIVENESS: INF}),
        ],
        False,
    ),
)
# -- both chain rules fire: an invalid step plus too many split tallies
case(
    "v29",
    [
        {
            T.STEP_TYPE: ["Description", "Description", "Reasoning"],
            T.DESC_CORRECTNESS: [("a1", FC), ("a2", PC)],
            T.DESC_ERROR_TYPE: [("a2", ENT)],
            T.DESC_RELEVANCE: [("a1", BOTH), ("a2", BOTH)],
            T.LOGIC_CORRECTNESS: [("a3", COR)],
            T.LOGIC_RELEVANCE: [("a3", REL)],
            T.INFORMATIVENESS: [("a3", INF)],
        },
        {
            T.STEP_TYPE: ["Reasoning", "Reasoning", "Description"],
            T.LOGIC_CORRECTNESS: [("a1", COR), ("a2", COR)],
            T.LOGIC_RELEVANCE: [("a1", REL), ("a2", REL)],
            T.INFORMATIVENESS: [("a1", INF), ("a2", INF)],
            T.DESC_CORRECTNESS: [("a3", FC)],
            T.DESC_RELEVANCE: [("a3", BOTH)],
        },
    ],
    (
        "invalid",
        [
            "step 1: tie on DescCorrectness (1:1)",
            "step type split 2:1 on 2 of 2 steps (half or more)",
        ],
    ),
)
# -- a correct three-type chain -> correct
case(
    "v30",
    [
        {T.STEP_TYPE: ["Description"] * 3, T.DESC_CORRECTNESS: [FC] * 3, T.DESC_RELEVANCE: [BOTH] * 3},
        {T.STEP_TYPE: ["Reasoning"] * 3, T.LOGIC_CORRECTNESS: [COR] * 3, T.LOGIC_RELEVANCE: [REL] * 3, T.INFORMATIVENESS: [INF] * 3},
        {
            T.STEP_TYPE: ["Both"] * 3,
            T.DESC_CORRECTNESS: [FC] * 3,
            T.DESC_RELEVANCE: [BOTH] * 3,
            T.LOGIC_CORRECTNESS: [COR] * 3,
            T.LOGIC_RELEVANCE: [REL] * 3,
            T.INFORMATIVENESS: [INF] * 3,
        },
    ],
    (
        "valid",
        [
            (D, {T.DESC_CORRECTNESS: FC, T.DESC_RELEVANCE: BOTH}),
            (R, {T.LOGIC_CORRECTNESS: COR, T.LOGIC_RELEVANCE: REL, T.INFORMATIVENESS: INF}),
            (
                B,
                {
                    T.DESC_CORRECTNESS: FC,
                    T.DESC_RELEVANCE: BOTH,
                    T.LOGIC_CORRECTNESS: COR,
                    T.LOGIC_RELEVANCE: REL,
                    T.INFORMATIVENESS: INF,
                },
            ),
        ],
        True,
    ),
)


def _votes_to_annotations(step_index: int, task: LabelTask, votes, n_raters: int) -> list[StepAnnotation]:
    out = []
    if votes and isinstance(votes[0], tuple):
        for rater, label in votes:
            out.append(StepAnnotation(annotator_id=rater, step_index=step_index, task=task, label=label))
    else:
        assert len(votes) == n_raters, f"need {n_raters} votes for {task} at step {step_index}"
        for rater, label in zip(RATERS[:n_raters], votes):
            out.append(StepAnnotation(annotator_id=rater, step_index=step_index, task=task, label=label))
    return out


def write_votes() -> None:
    input_lines = []
    expected_lines = []
    ties_by_task: dict[str, int] = {}
    invalid_records: list[dict] = []
    steps_total = steps_invalid = steps_split = valid_count = 0
    for case_index, spec in enumerate(CASES):
        rid = spec["id"]
        n_raters = spec["n_raters"]
        steps = spec["steps"]
        annotations: list[StepAnnotation] = []
        for i, tasks in enumerate(steps, start=1):
            for task, votes in tasks.items():
                annotations.extend(_votes_to_annotations(i, task, votes, n_raters))
        if spec["chain_votes"] is not None:
            annotations.extend(_votes_to_annotations(0, T.MCOT_CORRECTNESS, spec["chain_votes"], n_raters))
        if spec["prediction_votes"] is not None:
            annotations.extend(
                _votes_to_annotations(0, T.PREDICTION_CORRECTNESS, spec["prediction_votes"], n_raters)
            )
        texts = [_step_text(case_index, i) for i in range(len(steps))]
        record = McotRecord(
            id=rid,
            split="Hard" if case_index % 2 == 0 else "Normal",
            question=f"Synthetic validity question {case_index + 1}?",
            image_ref="none",
            steps=texts,
            source_dataset="synthetic",
            annotations=annotations,
        )
        input_lines.append(dumps_record(record))

        # hand-declared expectation -> expected aggregate output
        expected = spec["expected"]
        steps_total += len(steps)
        # count split tallies by hand from the declared votes
        for tasks in steps:
            type_votes = tasks[T.STEP_TYPE]
            labels = [v[1] if isinstance(v, tuple) else v for v in type_votes]
            tally = sorted((labels.count(x) for x in set(labels)), reverse=True)
            if len(tally) > 1 and tally[0] > tally[1]:
                steps_split += 1
        if expected[0] == "invalid":
            reasons = expected[1]
            invalid_records.append({"id": rid, "reasons": reasons})
            gold = GoldChain(steps=[], mcot_correct=False, validity=ChainValidity.INVALID)
            for reason in reasons:
                if "tie on" in reason:
                    steps_invalid += 1
                    task_name = reason.split("tie on ")[1].split(" ")[0]
                    ties_by_task[task_name] = ties_by_task.get(task_name, 0) + 1
        else:
            _, gold_steps, mcot_correct = expected
            gold = GoldChain(
                steps=[
                    GoldStepLabel(step_index=i, step_type=st, labels=dict(lbls))
                    for i, (st, lbls) in enumerate(gold_steps, start=1)
                ],
                mcot_correct=mcot_correct,
                validity=ChainValidity.VALID,
            )
            valid_count += 1
        prediction = None
        if spec["prediction_votes"] is not None:
            votes = [v[1] if isinstance(v, tuple) else v for v in spec["prediction_votes"]]
            correct, incorrect = votes.count(COR), votes.count(INC)
            if correct > incorrect:
                prediction = True
            elif incorrect > correct:
                prediction = False
        expected_record = McotRecord(
            id=record.id,
            split=record.split,
            question=record.question,
            image_ref=record.image_ref,
            steps=list(record.steps),
            source_dataset=record.source_dataset,
            annotations=list(record.annotations),
            gold=gold,
            prediction_correct=prediction,
        )
        expected_lines.append(dumps_record(expected_record))

    (HERE / "votes_30.jsonl").write_text("\n".join(input_lines) + "\n", encoding="utf-8")
    (HERE / "votes_30_expected.jsonl").write_text("\n".join(expected_lines) + "\n", encoding="utf-8")
    report = {
        "records_total": len(CASES),
        "records_valid": valid_count,
        "records_invalid": len(CASES) - valid_count,
        "steps_total": steps_total,
        "steps_invalid": steps_invalid,
        "steps_type_split": steps_split,
        "ties_by_task": dict(sorted(ties_by_task.items())),
        "invalid_records": invalid_records,
        "relevance_mode": "Lenient",
    }
    (HERE / "votes_30_expected_report.json").write_text(
        json.dumps(report, ensure_ascii=False, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )


# ---------------------------------------------------------------------------
# 3. Scripted judge tables for the 20-record fixture.


def _pairwise_items(records: list[McotRecord]):
    """(record, step_index, task, gold_label) for every judgeable item."""
    items = []
    for record in records:
        items.append((record.id, 0, T.MCOT_CORRECTNESS, COR if record.gold.mcot_correct else INC))
        for step in record.gold.steps:
            items.append((record.id, step.step_index, T.STEP_TYPE, step.step_type.value))
            for task, label in sorted(step.labels.items(), key=lambda kv: kv[0].value):
                items.append((record.id, step.step_index, task, label))
    return items


def _wrong_label(task: LabelTask, gold: str) -> str:
    domain = TASK_DOMAINS[task]
    return domain[(domain.index(gold) + 1) % len(domain)]


def _score_items(records: list[McotRecord]):
    """Gold-reference scores for every scoring task, echoing the 0/5/10 mapping."""
    items = []
    for record in records:
        items.append((record.id, 0, ScoreTask.MCOT, 10 if record.gold.mcot_correct else 0))
        for step in record.gold.steps:
            ref = {}
            dc = step.labels.get(T.DESC_CORRECTNESS)
            if dc is not None:
                ref["ScoreDescCorrect"] = {FC: 10, PC: 5, UN: 0}[dc]
                ref["ScoreDescRelevant"] = 0 if step.labels[T.DESC_RELEVANCE] == NONE else 10
            lc = step.labels.get(T.LOGIC_CORRECTNESS)
            if lc is not None:
                ref["ScoreLogicCorrect"] = 10 if lc == COR else 0
                ref["ScoreLogicRelevant"] = 10 if step.labels[T.LOGIC_RELEVANCE] == REL else 0
                ref["ScoreInformativeness"] = 10 if step.labels[T.INFORMATIVENESS] == INF else 0
            # dimensions the step's type does not annotate echo a perfect 10
            for dim in ("ScoreDescCorrect", "ScoreDescRelevant", "ScoreLogicCorrect",
                        "ScoreLogicRelevant", "ScoreInformativeness"):
                items.append((record.id, step.step_index, ScoreTask(dim), ref.get(dim, 10)))
            # plain per-step score: a rough graded value from the same references
            typed = [v for k, v in ref.items()]
            step_score = min(typed) if typed else 10
            items.append((record.id, step.step_index, ScoreTask.STEP, step_score))
    return items


GARBAGE = ["I cannot tell from this.", "Banana banana banana.", "42 is the answer to everything."]
DECOR = ["{}", "I think it is {}.", "Answer: {}", "The step is {}, in my view."]


def write_judge_tables(records: list[McotRecord]) -> None:
    rng = random.Random(42)
    # noisy table: mostly gold, some wrong, some garbage, some decorated text
    noisy: dict[str, str | list[str]] = {}
    for rid, step_index, task, gold in _pairwise_items(records):
        roll = rng.random()
        if roll < 0.62:
            answer = gold
        elif roll < 0.85:
            answer = _wrong_label(task, gold)
        else:
            noisy[table_key(rid, step_index, task)] = rng.choice(GARBAGE)
            continue
        if task is T.MCOT_CORRECTNESS:
            answer = {"Correct": "Yes", "Incorrect": "No"}[answer]
        noisy[table_key(rid, step_index, task)] = rng.choice(DECOR).format(answer)
    for rid, step_index, task, gold10 in _score_items(records):
        roll = rng.random()
        if roll < 0.7:
            value = gold10
        elif roll < 0.92:
            value = max(0, min(10, gold10 + rng.choice([-3, -2, -1, 1, 2, 3])))
        else:
            noisy[table_key(rid, step_index, task)] = rng.choice(GARBAGE)
            continue
        noisy[table_key(rid, step_index, task)] = rng.choice(["{}", "Score: {}/10", "{} out of 10"]).format(value)
    save_scripted_table(noisy, HERE / "judge_noisy.jsonl")

    # exactly-planted garbage table: per pairwise task, round(0.3 * n) items
    # answer garbage (always, so retries exhaust); the rest echo gold.
    garbage_table: dict[str, str | list[str]] = {}
    manifest: dict = {"planted": {}}
    by_task: dict[str, list] = {}
    for rid, step_index, task, gold in _pairwise_items(records):
        by_task.setdefault(task.value, []).append((rid, step_index, task, gold))
    for task_name in sorted(by_task):
        items = by_task[task_name]
        n = len(items)
        n_garbage = round(0.3 * n)
        garbage_ids = set(range(0, n_garbage))  # first items in id order
        hits = []
        for pos, (rid, step_index, task, gold) in enumerate(items):
            if pos in garbage_ids:
                garbage_table[table_key(rid, step_index, task)] = "???"
                hits.append(f"{rid}:{step_index}")
            else:
                answer = {"Correct": "Yes", "Incorrect": "No"}[gold] if task is T.MCOT_CORRECTNESS else gold
                garbage_table[table_key(rid, step_index, task)] = answer
        manifest["planted"][task_name] = {
            "n_items": n,
            "n_garbage": n_garbage,
            "garbage_items": hits,
            "expected_invalid_proportion": n_garbage / n,
            "expected_accuracy": (n - n_garbage) / n,
        }
    for rid, step_index, task, gold10 in _score_items(records):
        garbage_table[table_key(rid, step_index, task)] = str(gold10)
    save_scripted_table(garbage_table, HERE / "judge_30garbage.jsonl")
    (HERE / "judge_30garbage.manifest.json").write_text(
        json.dumps(manifest, ensure_ascii=False, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )


def write_config() -> None:
    (HERE / "pairwise.cfg").write_text(
        "# sample experiment configuration\n"
        "dataset = fixtures/chains_synthetic.jsonl\n"
        "judge = scripted:fixtures/judge_noisy.jsonl\n"
        "trials = 3\n"
        "seeds = 0\n"
        "relevance_mode = Lenient\n"
        "orientation = PredDependent\n",
        encoding="utf-8",
    )


def main() -> None:
    records = write_synthetic()
    write_votes()
    write_judge_tables(records)
    write_config()
    print("fixtures written to", HERE)


if __name__ == "__main__":
    main()
