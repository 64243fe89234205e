"""LLM-as-judge evaluation, win-rate matrices and ROUGE scoring."""

from .criteria import GSM_CRITERIA, K2A_CRITERIA, OVERALL, criteria_for, task_family
from .judge import (
    CriterionScore,
    JudgeReport,
    judge_absolute,
    parse_judge_output,
    render_judge_prompt,
)
from .pairwise import (
    METHOD_ORDER,
    PairwiseResult,
    Verdict,
    WinRateMatrix,
    judge_pairwise,
    parse_pairwise_output,
    presentation_order,
    win_rate_matrix,
)
from .report import EvalReport, MeanStd, build_report, mean_std, render_text
from .rouge import RougeVariant, rouge_f1
from .runner import JudgingRun, run_judging

__all__ = [
    "GSM_CRITERIA",
    "K2A_CRITERIA",
    "METHOD_ORDER",
    "OVERALL",
    "CriterionScore",
    "EvalReport",
    "JudgeReport",
    "JudgingRun",
    "MeanStd",
    "PairwiseResult",
    "RougeVariant",
    "Verdict",
    "WinRateMatrix",
    "build_report",
    "criteria_for",
    "judge_absolute",
    "judge_pairwise",
    "mean_std",
    "parse_judge_output",
    "parse_pairwise_output",
    "presentation_order",
    "render_judge_prompt",
    "render_text",
    "rouge_f1",
    "run_judging",
    "task_family",
]
