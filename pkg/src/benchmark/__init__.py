"""QA benchmark construction: split, insights, GSM generation, K2A templating."""

from .builder import BenchmarkPlan, build_benchmark
from .generation import (
    ProblemAction,
    gen_gsm_questions,
    gen_k2a_questions,
    k2a_question,
    load_problem_actions,
)
from .insights import InsightSummary, extract_insights
from .models import (
    Benchmark,
    BenchmarkManifest,
    QaItem,
    QuestionType,
    load_benchmark,
    parse_benchmark,
    save_benchmark,
    validate_counts,
)
from .split import split_corpus

__all__ = [
    "Benchmark",
    "BenchmarkManifest",
    "BenchmarkPlan",
    "InsightSummary",
    "ProblemAction",
    "QaItem",
    "QuestionType",
    "build_benchmark",
    "extract_insights",
    "gen_gsm_questions",
    "gen_k2a_questions",
    "k2a_question",
    "load_benchmark",
    "load_problem_actions",
    "parse_benchmark",
    "save_benchmark",
    "split_corpus",
    "validate_counts",
]
