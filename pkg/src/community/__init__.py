"""Leiden community hierarchy and the summaries prepended to KG context."""

from .context import CONTEXT_SEPARATOR, assemble_context
from .detection import Community, CommunityHierarchy, detect_communities, partition_modularity
from .summaries import (
    ExtractiveSummarizer,
    LlmSummarizer,
    Summarizer,
    summarize_hierarchy,
    summarize_leaf,
    summarize_parent,
)

__all__ = [
    "CONTEXT_SEPARATOR",
    "Community",
    "CommunityHierarchy",
    "ExtractiveSummarizer",
    "LlmSummarizer",
    "Summarizer",
    "assemble_context",
    "detect_communities",
    "partition_modularity",
    "summarize_hierarchy",
    "summarize_leaf",
    "summarize_parent",
]
