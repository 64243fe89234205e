"""Evaluation report: absolute score tables, win-rate matrices and ROUGE tables."""

from collections import defaultdict
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field

from src.benchmark.models import GSM, K2A, QaItem
from src.eval.criteria import OVERALL, criteria_for, dimensions_for
from src.eval.judge import JudgeReport
from src.eval.pairwise import METHOD_ORDER, PairwiseResult, WinRateMatrix, win_rate_matrix
from src.eval.rouge import RougeVariant, rouge_f1
from src.logger import get_logger
from src.rag.pipeline import AnswerRecord, Method

logger = get_logger()

FAMILIES = (GSM, K2A)


class MeanStd(BaseModel):
    mean: float
    std: float = Field(..., description="Sample standard deviation, 0.0 for one value")
    n: int

    def __str__(self) -> str:
        return f"{self.mean:.2f} ± {self.std:.2f}"


def mean_std(values: Sequence[float]) -> Optional[MeanStd]:
    if not values:
        return None
    data = np.asarray(values, dtype=float)
    std = float(np.std(data, ddof=1)) if len(data) > 1 else 0.0
    return MeanStd(mean=float(np.mean(data)), std=std, n=len(data))


class EvalReport(BaseModel):
    methods: List[Method]
    absolute: Dict[str, Dict[Method, Dict[str, MeanStd]]] = Field(
        default_factory=dict, description="family -> method -> criterion/Overall -> stats"
    )
    discrepancies: int = 0
    pairwise: Dict[str, WinRateMatrix] = Field(default_factory=dict)
    rouge: Dict[Method, Dict[RougeVariant, MeanStd]] = Field(default_factory=dict)
    failures: List[str] = Field(default_factory=list)


def absolute_table(
    reports: Iterable[JudgeReport], family: str, methods: Sequence[Method]
) -> Dict[Method, Dict[str, MeanStd]]:
    by_method: Dict[Method, List[JudgeReport]] = defaultdict(list)
    for report in reports:
        if report.family == family and report.method is not None:
            by_method[report.method].append(report)

    table: Dict[Method, Dict[str, MeanStd]] = {}
    for method in methods:
        rows = by_method.get(method)
        if not rows:
            continue
        stats = {
            criterion: mean_std([r.score_of(criterion) for r in rows])
            for criterion in criteria_for(family)
        }
        stats[OVERALL] = mean_std([r.overall for r in rows])
        table[method] = stats
    return table


def rouge_table(
    items: Iterable[QaItem],
    answers: Iterable[AnswerRecord],
    methods: Sequence[Method],
    stem: bool = False,
) -> Dict[Method, Dict[RougeVariant, MeanStd]]:
    """ROUGE-1/ROUGE-L F1 per method over the K2A items that have an answer."""
    gold = {item.id: item.gold_answer for item in items if item.family == K2A}
    scores: Dict[Method, Dict[RougeVariant, List[float]]] = defaultdict(
        lambda: defaultdict(list)
    )
    for answer in answers:
        reference = gold.get(answer.question_id)
        if not reference:
            continue
        for variant in RougeVariant:
            scores[answer.method][variant].append(
                rouge_f1(answer.answer, reference, variant, stem=stem)
            )
    return {
        method: {variant: mean_std(scores[method][variant]) for variant in RougeVariant}
        for method in methods
        if method in scores
    }


def build_report(
    items: Sequence[QaItem],
    answers: Sequence[AnswerRecord],
    judge_reports: Sequence[JudgeReport],
    pairwise_results: Sequence[PairwiseResult],
    stem: bool = False,
    failures: Sequence[str] = (),
) -> EvalReport:
    present = {a.method for a in answers} | {r.method for r in judge_reports if r.method}
    methods = [m for m in METHOD_ORDER if m in present]

    report = EvalReport(methods=methods, failures=list(failures))
    report.discrepancies = sum(1 for r in judge_reports if r.discrepancy)
    for family in FAMILIES:
        table = absolute_table(judge_reports, family, methods)
        if table:
            report.absolute[family] = table
        family_results = [r for r in pairwise_results if r.family == family]
        if family_results:
            report.pairwise[family] = win_rate_matrix(
                family_results, methods, dimensions_for(family)
            )
    report.rouge = rouge_table(items, answers, methods, stem=stem)
    logger.info(
        f"Report covers {len(judge_reports)} judged answers and "
        f"{len(pairwise_results)} pairwise comparisons"
    )
    return report


def _cell(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:.2f}"


def _grid(header: List[str], rows: List[List[str]]) -> List[str]:
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]

    def line(cells: List[str]) -> str:
        return "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()

    return [line(header)] + [line(r) for r in rows]


def render_text(report: EvalReport) -> str:
    """Plain-text rendering for terminals."""
    out: List[str] = []
    for family, table in report.absolute.items():
        columns = criteria_for(family) + [OVERALL]
        out.append(f"Absolute scores ({family}, 1-5, mean ± std)")
        rows = [
            [method.value] + [str(table[method][c]) for c in columns]
            for method in report.methods
            if method in table
        ]
        out.extend(_grid(["Method"] + columns, rows))
        out.append("")

    for family, matrix in report.pairwise.items():
        for dimension in matrix.dimensions:
            out.append(f"Win rate, row over column ({family}, {dimension})")
            rows = [
                [row.value] + [_cell(matrix.rate(dimension, row, col)) for col in matrix.methods]
                for row in matrix.methods
            ]
            out.extend(_grid([""] + [m.value for m in matrix.methods], rows))
            out.append("")

    if report.rouge:
        out.append("ROUGE F1 (K2A, mean ± std)")
        rows = [
            [method.value] + [str(report.rouge[method][v]) for v in RougeVariant]
            for method in report.methods
            if method in report.rouge
        ]
        out.extend(_grid(["Method"] + [v.value for v in RougeVariant], rows))
        out.append("")

    if report.discrepancies:
        out.append(f"Judge overall differed from the criterion mean {report.discrepancies} time(s)")
    if report.failures:
        out.append(f"Failures ({len(report.failures)}):")
        out.extend(f"  {failure}" for failure in report.failures)
    return "\n".join(out).rstrip() + "\n"
