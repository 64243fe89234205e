from unittest.mock import MagicMock, patch

import pytest

from src.config.config import ChatMode, Settings
from src.errors import InputError, MissingArtifactError, ReplayMissError, TransportError
from src.rag.chat import ChatClient, ChatMessage, TranscriptStore, request_hash
from tests.models import fake_chat_post

URL = "http://llm.test/v1/chat/completions"


def status_response(code: int, text: str = "error"):
    response = MagicMock()
    response.status_code = code
    response.text = text
    return response


class TestRequestHash:
    """Canonical keys for recorded exchanges."""

    def test_whitespace_and_role_case_are_normalized(self):
        """Test formatting differences do not change the key."""
        first = request_hash("m", [{"role": "user", "content": "fuel  pump\nfailed"}], {"temperature": 0.0})
        second = request_hash("m", [ChatMessage(role="USER", content=" fuel pump failed ")], {"temperature": 0.0})
        assert first == second

    def test_model_and_params_change_the_key(self):
        """Test the model and decoding parameters are part of the key."""
        messages = [{"role": "user", "content": "hi"}]
        base = request_hash("m", messages, {"temperature": 0.0})
        assert request_hash("other", messages, {"temperature": 0.0}) != base
        assert request_hash("m", messages, {"temperature": 0.7}) != base


class TestChatClient:
    """Live, record and replay transport."""

    def test_live_call_sends_openai_payload(self):
        """Test a live call posts model, messages and temperature."""
        post = fake_chat_post(lambda prompt: f"echo: {prompt}")
        with patch("src.utils.http.requests.post", post):
            response = ChatClient(URL, "gemma").ask("hello")
        assert response.text == "echo: hello"
        assert post.calls[0]["model"] == "gemma"
        assert post.calls[0]["temperature"] == 0.0
        assert post.calls[0]["messages"] == [{"role": "user", "content": "hello"}]
        assert response.transcript_id == request_hash(
            "gemma", [{"role": "user", "content": "hello"}], {"temperature": 0.0}
        )

    def test_record_then_replay_without_network(self, tmp_path):
        """Test a recorded exchange is replayed byte for byte with no HTTP call."""
        transcripts = tmp_path / "transcripts.jsonl"
        recorder = ChatClient(URL, "gemma", mode=ChatMode.RECORD, store=TranscriptStore(transcripts))
        with patch("src.utils.http.requests.post", fake_chat_post(lambda p: "Replace the pump.")):
            recorded = recorder.ask("What action?")
        assert len(transcripts.read_text().splitlines()) == 1

        replayer = ChatClient(URL, "gemma", mode=ChatMode.REPLAY, store=TranscriptStore(transcripts))
        with patch("src.utils.http.requests.post") as mock_post:
            mock_post.side_effect = AssertionError("network used in replay")
            replayed = replayer.ask("What  action?")
        assert replayed == recorded

    def test_replay_miss(self, tmp_path):
        """Test an unrecorded request fails with ReplayMissError."""
        transcripts = tmp_path / "transcripts.jsonl"
        transcripts.write_text("")
        client = ChatClient(URL, "gemma", mode=ChatMode.REPLAY, store=TranscriptStore(transcripts))
        with pytest.raises(ReplayMissError, match="no recorded response"):
            client.ask("never recorded")

    def test_mode_preconditions(self, tmp_path):
        """Test record needs a store and replay needs an existing transcript file."""
        with pytest.raises(InputError, match="needs a transcript store"):
            ChatClient(URL, "gemma", mode=ChatMode.RECORD)
        with pytest.raises(MissingArtifactError):
            ChatClient(
                URL, "gemma", mode=ChatMode.REPLAY, store=TranscriptStore(tmp_path / "absent.jsonl")
            )

    def test_server_error_is_retried(self):
        """Test a 503 is retried and the following success is returned."""
        ok = fake_chat_post(lambda p: "fine")
        with patch("src.utils.http.requests.post") as mock_post:
            mock_post.side_effect = [status_response(503), ok(URL, json={"messages": [{"content": "x"}]})]
            response = ChatClient(URL, "gemma", retry_backoff=0).ask("x")
        assert response.text == "fine"
        assert mock_post.call_count == 2

    def test_client_error_is_not_retried(self):
        """Test a 400 fails at once with retry_safe unset."""
        with patch("src.utils.http.requests.post") as mock_post:
            mock_post.return_value = status_response(400, "bad request")
            with pytest.raises(TransportError, match="status code 400") as exc_info:
                ChatClient(URL, "gemma", retry_backoff=0).ask("x")
        assert mock_post.call_count == 1
        assert exc_info.value.retry_safe is False
        assert exc_info.value.status_code == 400

    def test_response_without_content(self):
        """Test a body without choices is a transport error."""
        response = status_response(200)
        response.json.return_value = {"choices": []}
        with patch("src.utils.http.requests.post", return_value=response):
            with pytest.raises(TransportError, match="no choices"):
                ChatClient(URL, "gemma").ask("x")

    def test_from_settings_judge_client(self):
        """Test the judge client falls back to the chat URL and uses the judge model."""
        settings = Settings(chat_url=URL, judge_model="gpt-4o", chat_model="gemma")
        judge = ChatClient.from_settings(settings, judge=True)
        assert (judge.url, judge.model) == (URL, "gpt-4o")
        answerer = ChatClient.from_settings(settings)
        assert answerer.model == "gemma"


class TestTranscriptStore:
    def test_later_recording_wins_and_bad_lines_skipped(self, tmp_path):
        """Test duplicate hashes keep the last entry and unreadable lines are ignored."""
        path = tmp_path / "t.jsonl"
        line = '{{"request_hash": "k", "model": "m", "messages": [], "response": "{0}"}}\n'
        path.write_text(line.format("first") + "not json\n" + line.format("second"))
        store = TranscriptStore(path)
        assert len(store) == 1
        assert store.get("k").response == "second"
