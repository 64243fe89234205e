"""
Chat-completion client with live, record and replay modes.

Requests are keyed by a canonical hash: messages, model and decoding parameters
serialized with sorted keys and whitespace-normalized content. Record mode calls
the endpoint and appends a transcript line to a JSON-lines store; replay mode
answers from that store and never touches the network.
"""

import hashlib
import json
import threading
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from pydantic import BaseModel, Field, ValidationError

from src.config.config import ChatMode, Settings
from src.errors import (
    InputError,
    MissingArtifactError,
    ReplayMissError,
    TransportError,
)
from src.logger import get_logger
from src.utils.http import post_json

logger = get_logger()


class ChatMessage(BaseModel):
    role: str = Field(..., description="system, user or assistant")
    content: str


class ChatTranscript(BaseModel):
    request_hash: str
    model: str
    messages: List[ChatMessage]
    params: Dict[str, Any] = Field(default_factory=dict)
    response: str
    timestamp: Optional[str] = None


class ChatResponse(BaseModel):
    text: str
    transcript_id: str = Field(..., description="Request hash of the exchange")


MessagesLike = Sequence[Union[ChatMessage, Dict[str, str]]]


def _as_messages(messages: MessagesLike) -> List[ChatMessage]:
    return [
        m if isinstance(m, ChatMessage) else ChatMessage.model_validate(m)
        for m in messages
    ]


def request_hash(model: str, messages: MessagesLike, params: Dict[str, Any]) -> str:
    """Stable sha256 over the canonical form of a chat request."""
    canonical = {
        "model": model,
        "messages": [
            {"role": m.role.strip().lower(), "content": " ".join(m.content.split())}
            for m in _as_messages(messages)
        ],
        "params": params,
    }
    encoded = json.dumps(canonical, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(encoded.encode("utf-8")).hexdigest()


class TranscriptStore:
    """Append-only JSON-lines transcript file, safe for concurrent writers."""

    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._entries: Optional[Dict[str, ChatTranscript]] = None

    def _load(self) -> Dict[str, ChatTranscript]:
        if self._entries is None:
            entries: Dict[str, ChatTranscript] = {}
            if self.path.is_file():
                with self.path.open(encoding="utf-8") as handle:
                    for line_no, line in enumerate(handle, start=1):
                        if not line.strip():
                            continue
                        try:
                            transcript = ChatTranscript.model_validate_json(line)
                        except ValidationError:
                            logger.warning(
                                f"Skipping unreadable transcript line {line_no} in {self.path}"
                            )
                            continue
                        # Later recordings of the same request win.
                        entries[transcript.request_hash] = transcript
            self._entries = entries
        return self._entries

    def get(self, key: str) -> Optional[ChatTranscript]:
        with self._lock:
            return self._load().get(key)

    def append(self, transcript: ChatTranscript) -> None:
        with self._lock:
            self._load()[transcript.request_hash] = transcript
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a", encoding="utf-8") as handle:
                handle.write(transcript.model_dump_json() + "\n")

    def __len__(self) -> int:
        with self._lock:
            return len(self._load())


class ChatClient:
    def __init__(
        self,
        url: str,
        model: str,
        mode: ChatMode = ChatMode.LIVE,
        store: Optional[TranscriptStore] = None,
        api_key: Optional[str] = None,
        temperature: float = 0.0,
        timeout: float = 120.0,
        max_retries: int = 2,
        retry_backoff: float = 1.0,
    ):
        self.url = url
        self.model = model
        self.mode = ChatMode(mode)
        self.store = store
        self.api_key = api_key
        self.temperature = temperature
        self.timeout = timeout
        self.max_retries = max_retries
        self.retry_backoff = retry_backoff

        if self.mode is not ChatMode.LIVE and self.store is None:
            raise InputError(f"{self.mode.value} mode needs a transcript store (--transcripts)")
        if self.mode is ChatMode.REPLAY and not self.store.path.is_file():
            raise MissingArtifactError(str(self.store.path))

    @classmethod
    def from_settings(cls, settings: Settings, judge: bool = False) -> "ChatClient":
        """Build the answer model client, or the judge client when ``judge`` is set."""
        store = TranscriptStore(settings.transcripts) if settings.transcripts else None
        return cls(
            url=(settings.judge_url or settings.chat_url) if judge else settings.chat_url,
            model=settings.judge_model if judge else settings.chat_model,
            mode=settings.mode,
            store=store,
            api_key=settings.api_key.get_secret_value() if settings.api_key else None,
            temperature=settings.temperature,
            timeout=settings.request_timeout,
            max_retries=settings.max_retries,
        )

    def complete(self, messages: MessagesLike, **params: Any) -> ChatResponse:
        """
        Send one chat request.

        Args:
            messages: role/content pairs
            **params: Extra decoding parameters merged over the default temperature

        Returns:
            ChatResponse with the text and the request hash as transcript id

        Raises:
            ReplayMissError: In replay mode, when the request was never recorded
            TransportError: When the endpoint fails or answers without content
        """
        chat_messages = _as_messages(messages)
        decoding = {"temperature": self.temperature, **params}
        key = request_hash(self.model, chat_messages, decoding)

        if self.mode is ChatMode.REPLAY:
            transcript = self.store.get(key)
            if transcript is None:
                raise ReplayMissError(key)
            logger.debug(f"Replayed chat response {key[:12]}")
            return ChatResponse(text=transcript.response, transcript_id=key)

        text = self._call(chat_messages, decoding)

        if self.mode is ChatMode.RECORD:
            self.store.append(
                ChatTranscript(
                    request_hash=key,
                    model=self.model,
                    messages=chat_messages,
                    params=decoding,
                    response=text,
                    timestamp=datetime.now(timezone.utc).isoformat(),
                )
            )
        return ChatResponse(text=text, transcript_id=key)

    def ask(self, prompt: str, **params: Any) -> ChatResponse:
        """Single user-turn convenience wrapper."""
        return self.complete([ChatMessage(role="user", content=prompt)], **params)

    def _call(self, messages: List[ChatMessage], decoding: Dict[str, Any]) -> str:
        payload = {
            "model": self.model,
            "messages": [m.model_dump() for m in messages],
            **decoding,
        }
        data = post_json(
            self.url,
            payload,
            api_key=self.api_key,
            timeout=self.timeout,
            max_retries=self.max_retries,
            retry_backoff=self.retry_backoff,
        )
        try:
            content = data["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError):
            raise TransportError(
                f"Chat response from {self.url} has no choices[0].message.content",
                details={"body": data},
            )
        if not isinstance(content, str):
            raise TransportError(f"Chat response from {self.url} has non-text content")
        return content
