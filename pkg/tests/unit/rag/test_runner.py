import pytest

from src.benchmark.models import QaItem, QuestionType
from src.config.config import RetrievalConfig
from src.embeddings.index import build_chunk_index
from src.embeddings.providers import HashingEmbeddingProvider
from src.errors import InputError, MissingArtifactError
from src.rag.chunking import chunk_corpus
from src.rag.pipeline import Method
from src.rag.runner import load_run, run_benchmark
from src.utils import write_json
from tests.models import FakeChat

ITEMS = [
    QaItem(id="G1", qtype=QuestionType.GSM_CONTEXT, question="Which fuel system faults recur?"),
    QaItem(
        id="K1",
        qtype=QuestionType.K2A,
        question="What action could be taken when the battery is flat?",
        gold_answer="Replace the battery.",
    ),
]


@pytest.fixture
def artifacts(small_fixture):
    provider = HashingEmbeddingProvider(dim=64)
    return {
        "few_shots": [],
        "provider": provider,
        "chunk_index": build_chunk_index(chunk_corpus(small_fixture.records, RetrievalConfig()), provider),
    }


class TestRunBenchmark:
    """Answering every item with every method."""

    def test_answers_in_item_then_method_order(self, artifacts):
        """Test answers follow item order and the requested method order."""
        run = run_benchmark(ITEMS, [Method.TC, Method.VN], FakeChat(), RetrievalConfig(), artifacts)
        assert [(a.question_id, a.method) for a in run.answers] == [
            ("G1", Method.TC),
            ("G1", Method.VN),
            ("K1", Method.TC),
            ("K1", Method.VN),
        ]
        assert run.failures == []

    def test_failure_recorded_and_run_continues(self, artifacts):
        """Test one failed call is listed while the other answers are produced."""
        run = run_benchmark(
            ITEMS, [Method.VN], FakeChat(fail_on_call=2), RetrievalConfig(), artifacts
        )
        assert [a.question_id for a in run.answers] == ["G1"]
        assert len(run.failures) == 1
        assert run.failures[0].startswith("K1/VN: ")

    def test_missing_artifact_is_a_failure(self, artifacts):
        """Test KG answering without KG artifacts fails per item, not per run."""
        run = run_benchmark(ITEMS, [Method.KG], FakeChat(), RetrievalConfig(), artifacts)
        assert run.answers == []
        assert [f.split(":")[0] for f in run.failures] == ["G1/KG", "K1/KG"]

    def test_parallel_matches_serial(self, artifacts):
        """Test thread count does not change the result order."""
        serial = run_benchmark(ITEMS, list(Method), FakeChat(), RetrievalConfig(), {**artifacts, "kg": None})
        parallel = run_benchmark(
            ITEMS, list(Method), FakeChat(), RetrievalConfig(), {**artifacts, "kg": None}, jobs=3
        )
        assert serial == parallel


class TestLoadRun:
    def test_round_trip(self, artifacts, tmp_path):
        """Test a written run loads back."""
        run = run_benchmark(ITEMS, [Method.VN], FakeChat(), RetrievalConfig(), artifacts)
        path = write_json(tmp_path / "answers.json", run.model_dump(mode="json"))
        assert load_run(path) == run

    def test_missing_and_invalid(self, tmp_path):
        """Test an absent file and a document of the wrong shape."""
        with pytest.raises(MissingArtifactError):
            load_run(tmp_path / "absent.json")
        path = write_json(tmp_path / "answers.json", {"answers": [{"question_id": "G1"}]})
        with pytest.raises(InputError, match="invalid answers file"):
            load_run(path)
