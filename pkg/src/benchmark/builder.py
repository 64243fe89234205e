import random
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, List, Optional, Sequence

from pydantic import BaseModel, Field

from src.benchmark.generation import (
    GsmBatch,
    ProblemAction,
    context_samples,
    distribute,
    gen_gsm_questions,
    gen_k2a_questions,
    load_categories,
)
from src.benchmark.insights import extract_insights
from src.benchmark.models import Benchmark, QuestionType, make_manifest, save_benchmark
from src.benchmark.split import split_corpus
from src.kg.corpus import CorpusRecord
from src.kg.models import KnowledgeGraph
from src.logger import get_logger
from src.rag.chat import ChatClient
from src.rag.leakage import check_leakage

logger = get_logger()


class BenchmarkPlan(BaseModel):
    n_kg: int = Field(500, ge=0, description="Records sampled for the KG side of the split")
    comprehensive: int = Field(28, ge=0)
    context: int = Field(28, ge=0)
    category: int = Field(27, ge=0)
    samples_per_context: int = Field(5, ge=1)


def build_benchmark(
    records: Sequence[CorpusRecord],
    pairs: Sequence[ProblemAction],
    llm: ChatClient,
    plan: BenchmarkPlan,
    rng_seed: int = 0,
    kg: Optional[KnowledgeGraph] = None,
    jobs: int = 1,
    out_path: Optional[Path] = None,
) -> Benchmark:
    """
    Split the corpus, derive insights, generate GSM batches and template K2A items.

    The question-generating model only sees the insight digest and, for
    context questions, a few sampled insight records. The K2A gold answers are
    checked against the full retrievable corpus before anything is written.
    """
    kg_records, insight_records = split_corpus(records, min(plan.n_kg, len(records)), rng_seed)
    summary = extract_insights(insight_records, kg)
    logger.info(
        f"Split corpus into {len(kg_records)} KG records and {len(insight_records)} insight records"
    )

    categories = load_categories()
    insight_texts = [r.text for r in insight_records]
    tasks: List[Callable[[], GsmBatch]] = []

    if plan.comprehensive:
        tasks.append(
            lambda: gen_gsm_questions(
                QuestionType.GSM_COMPREHENSIVE,
                plan.comprehensive,
                llm,
                "GSM-COMP",
                data_summary=summary.digest,
            )
        )

    for i, (context, n) in enumerate(
        zip(categories.contexts, distribute(plan.context, len(categories.contexts)))
    ):
        if n == 0:
            continue
        rng = random.Random(f"{rng_seed}:{context.name}")
        samples = context_samples(insight_texts, context, plan.samples_per_context, rng)
        tasks.append(
            lambda context=context, n=n, samples=samples, i=i: gen_gsm_questions(
                QuestionType.GSM_CONTEXT,
                n,
                llm,
                f"GSM-CTX{i + 1}",
                sample_records=samples,
                context_type=context.name,
            )
        )

    for i, (category, n) in enumerate(
        zip(categories.categories, distribute(plan.category, len(categories.categories)))
    ):
        if n == 0:
            continue
        tasks.append(
            lambda category=category, n=n, i=i: gen_gsm_questions(
                QuestionType.GSM_CATEGORY,
                n,
                llm,
                f"GSM-CAT{i + 1}",
                data_summary=summary.digest,
                category=category,
            )
        )

    with ThreadPoolExecutor(max_workers=max(jobs, 1)) as pool:
        batches = list(pool.map(lambda task: task(), tasks))

    k2a_items = gen_k2a_questions(pairs)
    check_leakage(records, [(qa.id, qa.gold_answer) for qa in k2a_items])

    items = [qa for batch in batches for qa in batch.items] + k2a_items
    flags = [batch.flag for batch in batches if batch.flag is not None]
    benchmark = Benchmark(
        manifest=make_manifest(
            items,
            seed=rng_seed,
            flagged=flags,
            insights=summary.model_dump(mode="json"),
        ),
        items=items,
    )
    if flags:
        logger.warning(f"{len(flags)} question batch(es) flagged for review")
    if out_path is not None:
        save_benchmark(benchmark, out_path)
        logger.info(f"Wrote benchmark with {len(items)} items to {out_path}")
    return benchmark
