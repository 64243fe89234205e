import json
import random
import re
from pathlib import Path

import pytest

from src.benchmark.models import QaItem, QuestionType
from src.errors import InputError, JudgeParseError
from src.eval.criteria import criteria_for, task_family
from src.eval.judge import judge_absolute, parse_judge_output, render_judge_prompt
from src.rag.pipeline import AnswerRecord, Method
from tests.models import FakeChat

K2A_OUTPUT = """Correctness: 4 - matches the gold action
Completeness: 4 - covers the replacement
Practicality: 5 - standard shop task
Safety: 3 - skips the leak check
Clarity: 4 - short and clear"""


def k2a_item() -> QaItem:
    return QaItem(
        id="K2A-001",
        qtype=QuestionType.K2A,
        question="What action could be taken when the fuel pump vibrates?",
        gold_answer="Replace the fuel pump.",
    )


def answer_for(question_id: str, text: str, method: Method = Method.KG) -> AnswerRecord:
    return AnswerRecord(
        question_id=question_id,
        method=method,
        question="q",
        answer=text,
        context="" if method is Method.VN else "some context",
        prompt="p",
        transcript_id="t",
    )


class TestParseJudgeOutput:
    """Reading five criterion scores and an optional overall line."""

    def test_mean_when_no_overall(self):
        """Test scores 4,4,5,3,4 give an overall of 4.0."""
        report = parse_judge_output(K2A_OUTPUT, "K2A")
        assert [s.score for s in report.scores] == [4, 4, 5, 3, 4]
        assert report.overall == 4.0
        assert report.stated_overall is None
        assert report.discrepancy is False
        assert report.score_of("Safety") == 3
        assert report.scores[0].explanation == "matches the gold action"

    def test_out_of_range_score(self):
        """Test a score of 7 is rejected."""
        text = K2A_OUTPUT.replace("Safety: 3", "Safety: 7")
        with pytest.raises(JudgeParseError, match="Safety score 7 is outside 1-5"):
            parse_judge_output(text, "K2A", transcript_id="abc")

    def test_missing_criterion(self):
        """Test a report lacking one criterion is not produced."""
        text = "\n".join(K2A_OUTPUT.splitlines()[:4])
        with pytest.raises(JudgeParseError, match="lacks 1 criterion line\\(s\\): Clarity") as exc_info:
            parse_judge_output(text, "K2A", transcript_id="abc")
        assert exc_info.value.raw_text == text
        assert exc_info.value.transcript_id == "abc"

    def test_shuffled_order_and_markup(self):
        """Test criterion lines may come in any order with bold labels and /5 suffixes."""
        lines = K2A_OUTPUT.splitlines()
        random.Random(1).shuffle(lines)
        text = "\n".join(f"**{line.replace(':', ':**', 1)}" for line in lines)
        text = text.replace("Practicality:** 5", "Practicality:** [5/5]")
        report = parse_judge_output(text, QuestionType.K2A)
        assert [s.criterion for s in report.scores] == criteria_for("K2A")
        assert [s.score for s in report.scores] == [4, 4, 5, 3, 4]

    def test_stated_overall_and_discrepancy(self):
        """Test the stated overall is used and flagged when far from the mean."""
        close = parse_judge_output(K2A_OUTPUT + "\nOverall Score: 4.2", "K2A")
        assert close.overall == 4.2
        assert close.discrepancy is False
        far = parse_judge_output(K2A_OUTPUT + "\nOverall Score: 2", "K2A")
        assert far.overall == 2.0
        assert far.mean_score == 4.0
        assert far.discrepancy is True

    def test_gsm_overall_label(self):
        """Test GSM judges use the sensemaking assessment label."""
        text = "\n".join(
            f"{name}: 2 - thin" for name in criteria_for("GSM")
        ) + "\nGlobal Sensemaking Assessment: 2.0"
        report = parse_judge_output(text, QuestionType.GSM_CONTEXT)
        assert report.family == "GSM"
        assert report.overall == 2.0

    def test_conflicting_duplicate_and_fraction(self):
        """Test a criterion scored twice differently and a fractional score both fail."""
        with pytest.raises(JudgeParseError, match="scored twice"):
            parse_judge_output(K2A_OUTPUT + "\nClarity: 2", "K2A")
        with pytest.raises(JudgeParseError, match="not an integer"):
            parse_judge_output(K2A_OUTPUT.replace("Clarity: 4", "Clarity: 4.5"), "K2A")

    def test_random_outputs_are_complete_or_rejected(self):
        """Test noisy judge outputs either parse completely or raise a parse error."""
        names = criteria_for("K2A")
        for seed in range(30):
            rng = random.Random(seed)
            lines = []
            for name in names:
                if rng.random() < 0.15:
                    continue
                lines.append(f"{rng.choice([name, name.upper(), '- ' + name])}: {rng.randint(0, 6)}")
            if rng.random() < 0.5:
                lines.append(f"Overall Score: {rng.uniform(0, 6):.1f}")
            rng.shuffle(lines)
            try:
                report = parse_judge_output("\n".join(lines), "K2A")
            except JudgeParseError:
                continue
            assert len(report.scores) == 5
            assert all(1 <= s.score <= 5 for s in report.scores)
            assert 1 <= report.overall <= 5


JUDGE_OUTPUTS = json.loads(
    (Path(__file__).parent / "judge_outputs.json").read_text(encoding="utf-8")
)


class TestRecordedJudgeOutputs:
    """Hand-written malformed judge replies and what each one must produce."""

    @pytest.mark.parametrize("case", JUDGE_OUTPUTS, ids=[case["id"] for case in JUDGE_OUTPUTS])
    def test_expected_outcome(self, case):
        """Test each reply parses to its listed scores or fails with its listed message."""
        text = case["text"] if "text" in case else "\n".join(case["lines"])
        if "error" in case:
            with pytest.raises(JudgeParseError, match=re.escape(case["error"])) as exc_info:
                parse_judge_output(text, case["task"], transcript_id="t-1")
            assert exc_info.value.raw_text == text
            return
        report = parse_judge_output(text, case["task"])
        assert report.family == case["task"]
        assert [s.score for s in report.scores] == case["scores"]
        assert report.overall == pytest.approx(case["overall"])
        if "discrepancy" in case:
            assert report.discrepancy is case["discrepancy"]

    def test_corpus_covers_both_outcomes(self):
        """Test the recorded replies include parsed and rejected cases for both families."""
        outcomes = {(case["task"], "error" in case) for case in JUDGE_OUTPUTS}
        assert outcomes == {("K2A", True), ("K2A", False), ("GSM", True), ("GSM", False)}


class TestRenderJudgePrompt:
    def test_k2a_prompt_has_gold(self):
        """Test K2A prompts include the gold answer and the prediction."""
        prompt = render_judge_prompt(k2a_item(), answer_for("K2A-001", "Swap the pump."), "K2A")
        assert "Ground Truth Answer: Replace the fuel pump." in prompt
        assert "Swap the pump." in prompt

    def test_mismatches(self):
        """Test family and question id mismatches are input errors."""
        with pytest.raises(InputError, match="cannot judge it as GSM"):
            render_judge_prompt(k2a_item(), answer_for("K2A-001", "x"), "GSM")
        with pytest.raises(InputError, match="does not belong"):
            render_judge_prompt(k2a_item(), answer_for("OTHER", "x"), "K2A")

    def test_unknown_task_type(self):
        """Test an unknown task type name is refused."""
        with pytest.raises(InputError, match="unknown task type"):
            task_family("TRIVIA")


class TestJudgeAbsolute:
    def test_scores_with_model(self):
        """Test one judge call produces a report tagged with item, method and transcript."""
        chat = FakeChat(lambda prompt: K2A_OUTPUT)
        report = judge_absolute(k2a_item(), answer_for("K2A-001", "Swap it.", Method.TC), chat)
        assert len(chat.prompts) == 1
        assert report.question_id == "K2A-001"
        assert report.method is Method.TC
        assert report.transcript_id
