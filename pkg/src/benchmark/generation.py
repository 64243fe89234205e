"""Global-sensemaking question generation and knowledge-to-action templating."""

import json
from functools import lru_cache
from pathlib import Path
from typing import List, Optional, Sequence, Union

from pydantic import BaseModel, Field, ValidationError

from src.benchmark.models import BatchFlag, QaItem, QuestionType
from src.config.templates import render
from src.errors import CorpusFormatError, InputError, MissingArtifactError
from src.logger import get_logger
from src.rag.chat import ChatClient

logger = get_logger()

CATEGORIES_PATH = Path(__file__).parent / "categories.json"

K2A_PREFIX = "What action could be taken when"

GSM_TEMPLATES = {
    QuestionType.GSM_COMPREHENSIVE: "gsm_comprehensive",
    QuestionType.GSM_CONTEXT: "gsm_context",
    QuestionType.GSM_CATEGORY: "gsm_category",
}


class Category(BaseModel):
    name: str
    description: str
    template_starters: List[str] = Field(default_factory=list)


class ContextType(BaseModel):
    name: str
    keywords: List[str] = Field(default_factory=list)


class CategoryConfig(BaseModel):
    categories: List[Category]
    contexts: List[ContextType]


@lru_cache(maxsize=None)
def load_categories(path: Optional[str] = None) -> CategoryConfig:
    config_path = Path(path) if path else CATEGORIES_PATH
    if not config_path.is_file():
        raise MissingArtifactError(str(config_path))
    with config_path.open(encoding="utf-8") as handle:
        return CategoryConfig.model_validate(json.load(handle))


class GsmBatch(BaseModel):
    qtype: QuestionType
    label: str
    requested: int
    prompt: str
    items: List[QaItem] = Field(default_factory=list)
    flag: Optional[BatchFlag] = None


class ProblemAction(BaseModel):
    problem: str
    action: str
    id: Optional[str] = None


def render_gsm_prompt(
    qtype: QuestionType,
    n: int,
    data_summary: str = "",
    sample_records: Sequence[str] = (),
    context_type: str = "",
    category: Optional[Category] = None,
) -> str:
    if qtype is QuestionType.GSM_COMPREHENSIVE:
        return render(GSM_TEMPLATES[qtype], num_questions=n, data_summary=data_summary)
    if qtype is QuestionType.GSM_CONTEXT:
        return render(
            GSM_TEMPLATES[qtype],
            num_questions=n,
            context_type=context_type,
            sample_records="; ".join(sample_records),
        )
    if qtype is QuestionType.GSM_CATEGORY:
        if category is None:
            raise InputError("category questions need a category")
        return render(
            GSM_TEMPLATES[qtype],
            num_questions=n,
            category=category.name,
            category_description=category.description,
            context_prompt=data_summary,
            template_starters=", ".join(f'"{s}"' for s in category.template_starters),
        )
    raise InputError(f"{qtype.value} is not a sensemaking question type")


def split_questions(text: str) -> List[str]:
    """One question per non-blank line."""
    return [line.strip() for line in text.splitlines() if line.strip()]


def gen_gsm_questions(
    qtype: QuestionType,
    n: int,
    llm: ChatClient,
    id_prefix: str,
    data_summary: str = "",
    sample_records: Sequence[str] = (),
    context_type: str = "",
    category: Optional[Category] = None,
) -> GsmBatch:
    """
    Ask for ``n`` questions and keep every returned line.

    A batch with a different count is flagged SHORT or LONG, never padded or cut.
    """
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    qtype = QuestionType(qtype)
    prompt = render_gsm_prompt(qtype, n, data_summary, sample_records, context_type, category)
    response = llm.ask(prompt)
    label = category.name if category else context_type or "comprehensive"

    questions = split_questions(response.text)
    batch = GsmBatch(
        qtype=qtype,
        label=label,
        requested=n,
        prompt=prompt,
        items=[
            QaItem(
                id=f"{id_prefix}-{i + 1:02d}",
                qtype=qtype,
                question=question,
                source=f"{qtype.value.lower()}:{label}:{response.transcript_id[:12]}",
            )
            for i, question in enumerate(questions)
        ],
    )
    if len(questions) != n:
        status = "SHORT" if len(questions) < n else "LONG"
        batch.flag = BatchFlag(
            qtype=qtype, label=label, requested=n, received=len(questions), status=status
        )
        logger.warning(
            f"{qtype.value} batch '{label}' returned {len(questions)} questions, expected {n}"
        )
    return batch


def k2a_question(problem: str) -> str:
    body = " ".join(problem.split()).rstrip(" .?!")
    return f"{K2A_PREFIX} {body}?"


def gen_k2a_questions(pairs: Sequence[ProblemAction], id_prefix: str = "K2A") -> List[QaItem]:
    """One item per pair; pairs with an empty problem or action are skipped."""
    items: List[QaItem] = []
    for index, pair in enumerate(pairs, start=1):
        if not pair.problem.strip() or not pair.action.strip():
            logger.warning(f"Skipping problem-action pair {pair.id or index}: empty field")
            continue
        items.append(
            QaItem(
                id=f"{id_prefix}-{len(items) + 1:03d}",
                qtype=QuestionType.K2A,
                question=k2a_question(pair.problem),
                gold_answer=pair.action.strip(),
                source=f"problem-action:{pair.id or index}",
            )
        )
    return items


def load_problem_actions(path: Union[str, Path]) -> List[ProblemAction]:
    pairs_path = Path(path)
    if not pairs_path.is_file():
        raise MissingArtifactError(str(pairs_path))
    pairs: List[ProblemAction] = []
    with pairs_path.open(encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                pairs.append(ProblemAction.model_validate(json.loads(line)))
            except json.JSONDecodeError as e:
                raise CorpusFormatError(str(pairs_path), line_no, f"invalid JSON: {e}")
            except ValidationError as e:
                raise CorpusFormatError(
                    str(pairs_path), line_no, f"invalid pair: {e.errors()[0]['msg']}"
                )
    return pairs


def context_samples(
    records: Sequence[str], context: ContextType, limit: int, rng
) -> List[str]:
    """Up to ``limit`` record texts mentioning one of the context keywords."""
    keywords = [k.upper() for k in context.keywords]
    matching = [text for text in records if any(k in text.upper() for k in keywords)]
    pool = matching or list(records)
    if len(pool) <= limit:
        return pool
    picked = sorted(rng.sample(range(len(pool)), limit))
    return [pool[i] for i in picked]


def distribute(total: int, buckets: int) -> List[int]:
    """Split ``total`` into ``buckets`` near-equal non-negative parts, larger first."""
    if buckets < 1:
        return []
    base, extra = divmod(total, buckets)
    return [base + (1 if i < extra else 0) for i in range(buckets)]
