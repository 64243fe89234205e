from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple, Union

from pydantic import BaseModel, Field, ValidationError

from src.benchmark.models import QaItem
from src.config.config import RetrievalConfig
from src.errors import InputError, KeoError, MissingArtifactError
from src.logger import get_logger
from src.rag.chat import ChatClient
from src.rag.pipeline import AnswerRecord, Method, answer_with
from src.utils import read_json

logger = get_logger()


class BenchmarkRun(BaseModel):
    answers: List[AnswerRecord] = Field(default_factory=list)
    failures: List[str] = Field(default_factory=list)


def run_benchmark(
    items: Sequence[QaItem],
    methods: Sequence[Method],
    llm: ChatClient,
    cfg: RetrievalConfig,
    artifacts: Dict[str, Any],
    jobs: int = 1,
) -> BenchmarkRun:
    """
    Answer every item with every method.

    A failing (item, method) pair is logged and listed in ``failures``; the other
    answers are still produced. Answers come back in item order, then in the
    order of ``methods``.
    """
    tasks = [(item, Method(method)) for item in items for method in methods]

    def answer(task: Tuple[QaItem, Method]) -> Union[AnswerRecord, str]:
        item, method = task
        try:
            return answer_with(method, item.id, item.question, llm, cfg, artifacts)
        except KeoError as e:
            logger.error(f"Answering {item.id} with {method.value} failed: {e}")
            return f"{item.id}/{method.value}: {e}"

    with ThreadPoolExecutor(max_workers=max(jobs, 1)) as pool:
        outcomes = list(pool.map(answer, tasks))

    run = BenchmarkRun()
    for outcome in outcomes:
        if isinstance(outcome, AnswerRecord):
            run.answers.append(outcome)
        else:
            run.failures.append(outcome)
    logger.info(
        f"Produced {len(run.answers)} answers for {len(items)} items "
        f"with {len(run.failures)} failure(s)"
    )
    return run


def load_run(path: Union[str, Path]) -> BenchmarkRun:
    """
    Raises:
        MissingArtifactError: If the answers file does not exist
        InputError: If it is not a benchmark run document
    """
    run_path = Path(path)
    if not run_path.is_file():
        raise MissingArtifactError(str(run_path))
    try:
        return BenchmarkRun.model_validate(read_json(run_path))
    except (ValidationError, ValueError) as e:
        raise InputError(f"invalid answers file {run_path}: {e}")
