"""Absolute LLM-as-judge scoring: prompt rendering and output parsing."""

import re
from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from src.benchmark.models import K2A, QaItem
from src.config.templates import render
from src.errors import InputError, JudgeParseError
from src.eval.criteria import OVERALL_LABELS, TaskType, criteria_for, task_family
from src.logger import get_logger
from src.rag.chat import ChatClient
from src.rag.pipeline import AnswerRecord, Method

logger = get_logger()

MIN_SCORE = 1
MAX_SCORE = 5
DISCREPANCY_TOLERANCE = 0.5

JUDGE_TEMPLATES = {"GSM": "judge_gsm", K2A: "judge_k2a"}

# Markdown emphasis and code markers judges like to sprinkle around labels.
_MARKUP = re.compile(r"[*_`]")

_SCORE_LINE = re.compile(
    r"""^\s*(?:[-•>]|\d+[.)])?\s*
    (?P<name>[A-Za-z][A-Za-z ]*?)\s*:\s*
    \[?\s*(?P<score>[-+]?\d+(?:\.\d+)?)\s*(?:/\s*5(?:\.0)?)?\s*\]?
    (?:\s*[-–—:]?\s*(?P<explanation>.*))?$""",
    re.VERBOSE,
)


class CriterionScore(BaseModel):
    criterion: str
    score: int = Field(..., ge=MIN_SCORE, le=MAX_SCORE)
    explanation: str = ""


class JudgeReport(BaseModel):
    question_id: str = ""
    method: Optional[Method] = None
    family: str
    scores: List[CriterionScore] = Field(..., description="In the family's criterion order")
    overall: float = Field(..., ge=MIN_SCORE, le=MAX_SCORE)
    stated_overall: Optional[float] = None
    mean_score: float
    discrepancy: bool = Field(
        False, description="Stated overall differs from the criterion mean by more than 0.5"
    )
    transcript_id: Optional[str] = None

    def score_of(self, criterion: str) -> int:
        for entry in self.scores:
            if entry.criterion == criterion:
                return entry.score
        raise KeyError(criterion)


def _normalize_label(name: str) -> str:
    return " ".join(name.split()).lower()


def render_judge_prompt(item: QaItem, answer: AnswerRecord, task_type: TaskType) -> str:
    """
    Fill the family's judge template with the question, answer and, for K2A, the gold answer.

    Raises:
        InputError: If the task type does not match the item, the answer belongs to
            another question, or a K2A item has no gold answer
    """
    family = task_family(task_type)
    if family != item.family:
        raise InputError(f"item {item.id} is {item.family}, cannot judge it as {family}")
    if answer.question_id != item.id:
        raise InputError(f"answer for {answer.question_id} does not belong to item {item.id}")
    if family == K2A:
        if not (item.gold_answer or "").strip():
            raise InputError(f"K2A item {item.id} has no gold answer")
        return render(
            JUDGE_TEMPLATES[K2A],
            question=item.question,
            ground_truth=item.gold_answer,
            predicted=answer.answer,
        )
    return render(JUDGE_TEMPLATES[family], question=item.question, answer=answer.answer)


def parse_judge_output(
    text: str,
    task_type: TaskType,
    question_id: str = "",
    method: Optional[Method] = None,
    transcript_id: Optional[str] = None,
) -> JudgeReport:
    """
    Extract the five criterion scores and the optional overall line.

    Labels match case-insensitively; bracketed scores, ``/5`` suffixes and bold
    markers are tolerated. The report is either complete or not produced at all.

    Raises:
        JudgeParseError: If a criterion is missing, a score is not an integer in
            1..5, a criterion is scored twice with different values, or the stated
            overall lies outside 1..5
    """
    family = task_family(task_type)
    criteria = criteria_for(family)
    wanted = {_normalize_label(name): name for name in criteria}
    found: Dict[str, CriterionScore] = {}
    stated: Optional[float] = None

    def fail(message: str) -> JudgeParseError:
        return JudgeParseError(message, raw_text=text, transcript_id=transcript_id)

    for raw_line in (text or "").splitlines():
        match = _SCORE_LINE.match(_MARKUP.sub("", raw_line))
        if not match:
            continue
        label = _normalize_label(match.group("name"))
        value = float(match.group("score"))

        if label in wanted:
            name = wanted[label]
            if not value.is_integer():
                raise fail(f"{name} score {match.group('score')} is not an integer")
            if not MIN_SCORE <= value <= MAX_SCORE:
                raise fail(f"{name} score {match.group('score')} is outside 1-5")
            entry = CriterionScore(
                criterion=name,
                score=int(value),
                explanation=(match.group("explanation") or "").strip(),
            )
            previous = found.get(name)
            if previous is not None and previous.score != entry.score:
                raise fail(f"{name} is scored twice ({previous.score} and {entry.score})")
            found.setdefault(name, entry)
        elif label in OVERALL_LABELS and stated is None:
            if not MIN_SCORE <= value <= MAX_SCORE:
                raise fail(f"overall score {match.group('score')} is outside 1-5")
            stated = value

    missing = [name for name in criteria if name not in found]
    if missing:
        raise fail(f"judge output lacks {len(missing)} criterion line(s): {', '.join(missing)}")

    scores = [found[name] for name in criteria]
    mean_score = sum(s.score for s in scores) / len(scores)
    discrepancy = stated is not None and abs(stated - mean_score) > DISCREPANCY_TOLERANCE
    if discrepancy:
        logger.warning(
            f"Judge overall {stated} for {question_id or 'answer'} differs from "
            f"criterion mean {mean_score:.2f}"
        )
    return JudgeReport(
        question_id=question_id,
        method=method,
        family=family,
        scores=scores,
        overall=stated if stated is not None else mean_score,
        stated_overall=stated,
        mean_score=mean_score,
        discrepancy=discrepancy,
        transcript_id=transcript_id,
    )


def judge_absolute(item: QaItem, answer: AnswerRecord, judge: ChatClient) -> JudgeReport:
    """Score one answer with the judge model."""
    prompt = render_judge_prompt(item, answer, item.qtype)
    response = judge.ask(prompt)
    report = parse_judge_output(
        response.text,
        item.qtype,
        question_id=item.id,
        method=answer.method,
        transcript_id=response.transcript_id,
    )
    logger.debug(f"Judged {item.id}/{answer.method.value}: overall {report.overall:.2f}")
    return report
