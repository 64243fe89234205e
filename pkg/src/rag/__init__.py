"""Answer generation: chat transport, chunking, leakage guard and the VN/TC/KG methods.

Only the transport is re-exported here; ``src.rag.pipeline`` depends on the
community package, which itself needs the chat client.
"""

from .chat import ChatClient, ChatMessage, ChatResponse, ChatTranscript, TranscriptStore, request_hash

__all__ = [
    "ChatClient",
    "ChatMessage",
    "ChatResponse",
    "ChatTranscript",
    "TranscriptStore",
    "request_hash",
]
