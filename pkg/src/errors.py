"""Exception hierarchy shared by every KEO module.

The CLI maps these onto exit codes: ``InputError`` -> 2, ``TransportError`` -> 3.
Everything else that escapes a command is treated as an input problem too.
"""

from typing import Any, Dict, List, Optional, Tuple


class KeoError(Exception):
    """Base class for all engine errors."""


class InputError(KeoError):
    """A file, argument or artifact failed validation."""


class KgFormatError(InputError):
    """A persisted knowledge graph file is malformed or truncated."""

    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class CorpusFormatError(InputError):
    """A JSON-lines input (corpus, problem-action pairs) has a bad line."""

    def __init__(self, path: str, line_no: int, message: str):
        self.path = path
        self.line_no = line_no
        super().__init__(f"{path}:{line_no}: {message}")


class MissingArtifactError(InputError):
    """A command needs an artifact that does not exist."""

    def __init__(self, path: str):
        self.path = path
        super().__init__(f"missing artifact: {path}")


class BenchmarkValidationError(InputError):
    """Benchmark items disagree with the counts declared in its manifest."""

    def __init__(self, diff: Dict[str, Tuple[int, int]]):
        # key -> (declared, actual)
        self.diff = diff
        details = ", ".join(
            f"{key}: declared {declared}, found {actual}"
            for key, (declared, actual) in sorted(diff.items())
        )
        super().__init__(f"benchmark counts do not match manifest ({details})")


class LeakageError(InputError):
    """Gold answer text is present in the retrievable corpus."""

    def __init__(self, offenders: List[Tuple[str, str]]):
        # (record id, qa item id) pairs
        self.offenders = offenders
        preview = ", ".join(f"{rid}<-{qid}" for rid, qid in offenders[:5])
        super().__init__(
            f"{len(offenders)} gold answer(s) found in the retrievable corpus: {preview}"
        )


class GraphError(KeoError, ValueError):
    """Invalid input to a graph algorithm (unknown seed, disconnected tree input)."""


class EmbeddingError(KeoError, ValueError):
    """Invalid vectors or an unusable index."""


class JudgeParseError(KeoError, ValueError):
    """Judge output could not be turned into a complete report."""

    def __init__(self, message: str, raw_text: str, transcript_id: Optional[str] = None):
        self.raw_text = raw_text
        self.transcript_id = transcript_id
        suffix = f" (transcript {transcript_id})" if transcript_id else ""
        super().__init__(f"{message}{suffix}")


class TransportError(KeoError):
    """A remote model endpoint could not be reached or answered with an error."""

    def __init__(
        self,
        message: str,
        retry_safe: bool = False,
        status_code: Optional[int] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        self.retry_safe = retry_safe
        self.status_code = status_code
        self.details = details or {}
        super().__init__(message)


class ReplayMissError(TransportError):
    """Replay mode was asked for a request that was never recorded."""

    def __init__(self, request_hash: str):
        self.request_hash = request_hash
        super().__init__(
            f"no recorded response for request hash {request_hash}", retry_safe=False
        )
