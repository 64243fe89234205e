"""
Pairwise judging with randomized presentation order, and win-rate matrices.

The judge sees two answers as A and B. Which method is shown first is drawn from
a RNG seeded by the run seed, the item id and the method pair, so reruns present
the same order while different seeds counterbalance position bias.
"""

import random
import re
from collections import defaultdict
from enum import Enum
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from src.benchmark.models import K2A, QaItem
from src.config.templates import render
from src.errors import InputError, JudgeParseError
from src.eval.criteria import (
    OVERALL,
    TaskType,
    criteria_descriptions,
    dimensions_for,
    task_family,
)
from src.logger import get_logger
from src.rag.chat import ChatClient
from src.rag.pipeline import AnswerRecord, Method

logger = get_logger()

# Row/column order of every win-rate matrix.
METHOD_ORDER: Tuple[Method, ...] = (Method.TC, Method.VN, Method.KG)

TASK_DESCRIPTIONS = {"GSM": "global sensemaking", K2A: "maintenance-action"}

_MARKUP = re.compile(r"[*_`]")
_VERDICT_LINE = re.compile(
    r"^\s*(?:[-•>]|\d+[.)])?\s*(?P<name>[A-Za-z][A-Za-z ]*?)\s*:\s*\[?\s*"
    r"(?:answer\s+)?(?P<verdict>A|B|TIE)\b\s*\]?",
    re.IGNORECASE,
)


class Verdict(str, Enum):
    A = "A"
    B = "B"
    TIE = "TIE"


class PairwiseResult(BaseModel):
    question_id: str
    family: str
    method_a: Method = Field(..., description="Method shown as Answer A")
    method_b: Method = Field(..., description="Method shown as Answer B")
    verdicts: Dict[str, Verdict] = Field(..., description="Dimension -> A, B or TIE")
    transcript_id: Optional[str] = None

    def winner(self, dimension: str) -> Optional[Method]:
        """The winning method on one dimension, ``None`` for a tie."""
        verdict = self.verdicts[dimension]
        if verdict is Verdict.A:
            return self.method_a
        if verdict is Verdict.B:
            return self.method_b
        return None

    @property
    def winners(self) -> Dict[str, Optional[Method]]:
        return {dimension: self.winner(dimension) for dimension in self.verdicts}


def presentation_order(
    question_id: str, first: Method, second: Method, rng_seed: int
) -> Tuple[Method, Method]:
    """
    Decide which of two methods is shown as Answer A.

    The draw depends only on the seed, the item and the unordered pair.
    """
    low, high = sorted((Method(first), Method(second)), key=METHOD_ORDER.index)
    rng = random.Random(f"{rng_seed}:{question_id}:{low.value}:{high.value}")
    return (high, low) if rng.random() < 0.5 else (low, high)


def render_pairwise_prompt(
    item: QaItem, answer_a: AnswerRecord, answer_b: AnswerRecord, task_type: TaskType
) -> str:
    family = task_family(task_type)
    criteria = criteria_descriptions(family)
    reference_block = ""
    if family == K2A:
        if not (item.gold_answer or "").strip():
            raise InputError(f"K2A item {item.id} has no gold answer")
        reference_block = f"Ground Truth Answer: {item.gold_answer}\n"
    return render(
        "judge_pairwise",
        task_description=TASK_DESCRIPTIONS[family],
        question=item.question,
        reference_block=reference_block,
        answer_a=answer_a.answer,
        answer_b=answer_b.answer,
        criteria_list="\n".join(f"- {name}: {text}" for name, text in criteria),
        output_format="\n".join(
            f"{name}: [A|B|TIE] - [explanation]" for name, _ in criteria
        ),
    )


def parse_pairwise_output(
    text: str, task_type: TaskType, transcript_id: Optional[str] = None
) -> Dict[str, Verdict]:
    """
    Read one A/B/TIE verdict per criterion plus the overall verdict.

    Raises:
        JudgeParseError: If any dimension has no verdict
    """
    dimensions = dimensions_for(task_type)
    wanted = {" ".join(d.lower().split()): d for d in dimensions}
    verdicts: Dict[str, Verdict] = {}
    for raw_line in (text or "").splitlines():
        match = _VERDICT_LINE.match(_MARKUP.sub("", raw_line))
        if not match:
            continue
        label = " ".join(match.group("name").lower().split())
        dimension = wanted.get(label)
        if dimension is not None and dimension not in verdicts:
            verdicts[dimension] = Verdict(match.group("verdict").upper())

    missing = [d for d in dimensions if d not in verdicts]
    if missing:
        raise JudgeParseError(
            f"pairwise verdict missing for {', '.join(missing)}",
            raw_text=text,
            transcript_id=transcript_id,
        )
    return {d: verdicts[d] for d in dimensions}


def judge_pairwise(
    item: QaItem,
    answer_a: AnswerRecord,
    answer_b: AnswerRecord,
    judge: ChatClient,
    rng_seed: int,
) -> PairwiseResult:
    """
    Compare two methods' answers to one question.

    The arguments' order does not matter: the presentation order comes from
    :func:`presentation_order`, and verdicts are attributed back to methods.

    Raises:
        InputError: If the answers belong to different questions or share a method
        JudgeParseError: If the verdict cannot be read, carrying the transcript id
    """
    if answer_a.question_id != item.id or answer_b.question_id != item.id:
        raise InputError(f"pairwise answers must both address item {item.id}")
    if answer_a.method == answer_b.method:
        raise InputError(f"pairwise comparison of {answer_a.method.value} with itself")

    by_method = {answer_a.method: answer_a, answer_b.method: answer_b}
    first, second = presentation_order(item.id, answer_a.method, answer_b.method, rng_seed)
    prompt = render_pairwise_prompt(item, by_method[first], by_method[second], item.qtype)
    response = judge.ask(prompt)
    verdicts = parse_pairwise_output(response.text, item.qtype, response.transcript_id)
    result = PairwiseResult(
        question_id=item.id,
        family=item.family,
        method_a=first,
        method_b=second,
        verdicts=verdicts,
        transcript_id=response.transcript_id,
    )
    logger.debug(
        f"Pairwise {item.id} {first.value} vs {second.value}: overall "
        f"{verdicts[OVERALL].value}"
    )
    return result


def method_pairs(methods: Sequence[Method] = METHOD_ORDER) -> List[Tuple[Method, Method]]:
    ordered = sorted({Method(m) for m in methods}, key=METHOD_ORDER.index)
    return list(combinations(ordered, 2))


Cell = Optional[float]


class WinRateMatrix(BaseModel):
    methods: List[Method]
    dimensions: List[str]
    win_rate: Dict[str, Dict[Method, Dict[Method, Cell]]] = Field(
        ..., description="dimension -> row method -> column method -> share of row wins"
    )
    tie_rate: Dict[str, Dict[Method, Dict[Method, Cell]]]
    ties: Dict[str, Dict[Method, Dict[Method, int]]]
    comparisons: Dict[Method, Dict[Method, int]]

    def rate(self, dimension: str, row: Method, column: Method) -> Cell:
        return self.win_rate[dimension][Method(row)][Method(column)]


def win_rate_matrix(
    results: Iterable[PairwiseResult],
    methods: Sequence[Method] = METHOD_ORDER,
    dimensions: Optional[Sequence[str]] = None,
) -> WinRateMatrix:
    """
    Tally pairwise outcomes into row-over-column win rates per dimension.

    W[a][b] counts wins of a over b divided by all comparisons of the pair, so
    W[a][b] + W[b][a] + tie_rate[a][b] is 1. The diagonal and pairs that were
    never compared stay ``None``.
    """
    results = list(results)
    axis = [Method(m) for m in methods]
    if dimensions is None:
        dimensions = dimensions_for(results[0].family) if results else [OVERALL]
    dimensions = list(dimensions)

    wins: Dict[str, Dict[Tuple[Method, Method], int]] = defaultdict(lambda: defaultdict(int))
    ties: Dict[str, Dict[Tuple[Method, Method], int]] = defaultdict(lambda: defaultdict(int))
    compared: Dict[frozenset, int] = defaultdict(int)

    for result in results:
        pair = frozenset((result.method_a, result.method_b))
        compared[pair] += 1
        for dimension in dimensions:
            if dimension not in result.verdicts:
                raise InputError(
                    f"pairwise result for {result.question_id} has no '{dimension}' verdict"
                )
            winner = result.winner(dimension)
            if winner is None:
                ties[dimension][(result.method_a, result.method_b)] += 1
                ties[dimension][(result.method_b, result.method_a)] += 1
            else:
                loser = result.method_b if winner == result.method_a else result.method_a
                wins[dimension][(winner, loser)] += 1

    def cell(count: int, row: Method, column: Method) -> Cell:
        total = compared[frozenset((row, column))]
        if row == column or total == 0:
            return None
        return count / total

    return WinRateMatrix(
        methods=axis,
        dimensions=dimensions,
        win_rate={
            d: {r: {c: cell(wins[d][(r, c)], r, c) for c in axis} for r in axis}
            for d in dimensions
        },
        tie_rate={
            d: {r: {c: cell(ties[d][(r, c)], r, c) for c in axis} for r in axis}
            for d in dimensions
        },
        ties={d: {r: {c: ties[d][(r, c)] for c in axis} for r in axis} for d in dimensions},
        comparisons={
            r: {c: (0 if r == c else compared[frozenset((r, c))]) for c in axis} for r in axis
        },
    )
