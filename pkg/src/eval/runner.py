from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Sequence, Tuple, TypeVar, Union

from pydantic import BaseModel, Field

from src.benchmark.models import Benchmark
from src.errors import InputError, JudgeParseError, TransportError
from src.eval.judge import JudgeReport, judge_absolute
from src.eval.pairwise import METHOD_ORDER, PairwiseResult, judge_pairwise, method_pairs
from src.logger import get_logger
from src.rag.chat import ChatClient
from src.rag.pipeline import AnswerRecord, Method

logger = get_logger()

T = TypeVar("T")


class JudgingRun(BaseModel):
    reports: List[JudgeReport] = Field(default_factory=list)
    pairwise: List[PairwiseResult] = Field(default_factory=list)
    failures: List[str] = Field(default_factory=list)


def index_answers(answers: Sequence[AnswerRecord]) -> Dict[str, Dict[Method, AnswerRecord]]:
    """question id -> method -> answer; a later duplicate replaces an earlier one."""
    indexed: Dict[str, Dict[Method, AnswerRecord]] = {}
    for answer in answers:
        indexed.setdefault(answer.question_id, {})[answer.method] = answer
    return indexed


def _settle(
    label: str, task: Callable[[], T]
) -> Tuple[str, Union[T, Exception]]:
    try:
        return label, task()
    except (JudgeParseError, TransportError, InputError) as e:
        return label, e


def run_judging(
    benchmark: Benchmark,
    answers: Sequence[AnswerRecord],
    judge: ChatClient,
    rng_seed: int = 0,
    jobs: int = 1,
    pairwise: bool = True,
) -> JudgingRun:
    """
    Judge every answer absolutely and every method pair head-to-head.

    Calls run on up to ``jobs`` threads; results come back in benchmark item
    order, then method order, so reruns serialize identically. A failing call is
    recorded and the run continues.
    """
    indexed = index_answers(answers)
    tasks: List[Tuple[str, Callable[[], object]]] = []
    for item in benchmark.items:
        by_method = indexed.get(item.id, {})
        for method in METHOD_ORDER:
            if method in by_method:
                tasks.append(
                    (
                        f"{item.id}/{method.value}",
                        lambda item=item, a=by_method[method]: judge_absolute(item, a, judge),
                    )
                )
        if not pairwise:
            continue
        for first, second in method_pairs([m for m in METHOD_ORDER if m in by_method]):
            tasks.append(
                (
                    f"{item.id}/{first.value}-vs-{second.value}",
                    lambda item=item, a=by_method[first], b=by_method[second]: judge_pairwise(
                        item, a, b, judge, rng_seed
                    ),
                )
            )

    missing = [item.id for item in benchmark.items if item.id not in indexed]
    if missing:
        logger.warning(f"{len(missing)} benchmark item(s) have no answers: {', '.join(missing)}")

    with ThreadPoolExecutor(max_workers=max(jobs, 1)) as pool:
        outcomes = list(pool.map(lambda task: _settle(*task), tasks))

    run = JudgingRun(failures=[f"{item_id}: no answers" for item_id in missing])
    for label, outcome in outcomes:
        if isinstance(outcome, JudgeReport):
            run.reports.append(outcome)
        elif isinstance(outcome, PairwiseResult):
            run.pairwise.append(outcome)
        else:
            logger.error(f"Judging {label} failed: {outcome}")
            run.failures.append(f"{label}: {outcome}")
    logger.info(
        f"Judged {len(run.reports)} answers and {len(run.pairwise)} pairs "
        f"with {len(run.failures)} failure(s)"
    )
    return run
