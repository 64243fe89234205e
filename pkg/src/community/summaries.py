"""Leaf and parent community summaries, extractive or LLM-backed."""

import re
from abc import ABC, abstractmethod
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Sequence, Set

from src.community.detection import Community, CommunityHierarchy
from src.config.templates import render
from src.errors import TransportError
from src.kg.models import KnowledgeGraph
from src.logger import get_logger
from src.rag.chat import ChatClient

logger = get_logger()

ENTRY_SEPARATOR = "; "
# Cut points for parent summaries: end of a sentence or of a child summary.
_BOUNDARY = re.compile(r"(?<=[.!?])\s|\n")


def truncate_at_boundary(text: str, budget: int) -> str:
    """Longest prefix within ``budget`` ending at a sentence or line boundary."""
    if len(text) <= budget:
        return text
    window = text[: budget + 1]
    cuts = [m.start() for m in _BOUNDARY.finditer(window) if m.start() <= budget]
    if cuts and cuts[-1] > 0:
        return text[: cuts[-1]].rstrip()
    return text[:budget].rstrip()


def community_edges(community: Community, graph: KnowledgeGraph):
    members = set(community.node_ids)
    return [
        edge
        for edge in graph.edges.values()
        if edge.head in members and edge.tail in members
    ]


def ranked_nodes(community: Community, graph: KnowledgeGraph) -> List[tuple]:
    """
    (node id, incident relation labels) by descending in-community degree.

    Degree counts distinct neighbors inside the community; ties go to the
    smaller id. Labels are ordered by incident weight, then alphabetically.
    """
    neighbors: Dict[int, Set[int]] = {n: set() for n in community.node_ids}
    labels: Dict[int, Counter] = {n: Counter() for n in community.node_ids}
    for edge in community_edges(community, graph):
        for node in (edge.head, edge.tail):
            labels[node][edge.relation.value] += edge.weight
        if edge.head != edge.tail:
            neighbors[edge.head].add(edge.tail)
            neighbors[edge.tail].add(edge.head)
    order = sorted(community.node_ids, key=lambda n: (-len(neighbors[n]), n))
    return [
        (n, [label for label, _ in sorted(labels[n].items(), key=lambda kv: (-kv[1], kv[0]))])
        for n in order
    ]


class Summarizer(ABC):
    @abstractmethod
    def summarize_leaf(self, community: Community, graph: KnowledgeGraph, budget: int) -> str:
        pass

    @abstractmethod
    def summarize_parent(self, child_summaries: Sequence[str], budget: int) -> str:
        pass


class ExtractiveSummarizer(Summarizer):
    """Deterministic summaries built from node degrees and relation labels."""

    def summarize_leaf(self, community: Community, graph: KnowledgeGraph, budget: int) -> str:
        entries = []
        for node_id, node_labels in ranked_nodes(community, graph):
            surface = graph.nodes[node_id].surface
            entries.append(f"{surface} ({', '.join(node_labels)})" if node_labels else surface)

        summary = ""
        for entry in entries:
            candidate = f"{summary}{ENTRY_SEPARATOR}{entry}" if summary else entry
            if len(candidate) > budget:
                break
            summary = candidate
        if not summary and entries:
            summary = entries[0][:budget].rstrip()
        return summary

    def summarize_parent(self, child_summaries: Sequence[str], budget: int) -> str:
        return truncate_at_boundary("\n".join(s for s in child_summaries if s), budget)


class LlmSummarizer(Summarizer):
    """Summaries written by the chat model, trimmed to budget."""

    # Upper bound on edge lines sent for one leaf community.
    max_material_lines = 80

    def __init__(self, chat: ChatClient):
        self.chat = chat

    def _complete(self, material: str, budget: int) -> str:
        response = self.chat.ask(render("summarize", budget=budget, material=material))
        return truncate_at_boundary(" ".join(response.text.split()), budget)

    def summarize_leaf(self, community: Community, graph: KnowledgeGraph, budget: int) -> str:
        edges = sorted(
            community_edges(community, graph),
            key=lambda e: (-e.weight, e.head, e.relation.value, e.tail),
        )
        if not edges:
            return ExtractiveSummarizer().summarize_leaf(community, graph, budget)
        lines = [
            f"{graph.nodes[e.head].surface} -[{e.relation.value} (w={e.weight})]- "
            f"{graph.nodes[e.tail].surface}"
            for e in edges[: self.max_material_lines]
        ]
        return self._complete("\n".join(lines), budget)

    def summarize_parent(self, child_summaries: Sequence[str], budget: int) -> str:
        return self._complete("\n".join(child_summaries), budget)


def summarize_leaf(
    community: Community, graph: KnowledgeGraph, budget: int, summarizer: Summarizer
) -> str:
    if not community.node_ids:
        raise ValueError(f"community {community.id} is empty")
    return _with_community_id(
        community.id, lambda: summarizer.summarize_leaf(community, graph, budget)
    )


def summarize_parent(
    child_summaries: Sequence[str], budget: int, summarizer: Summarizer
) -> str:
    if not child_summaries:
        raise ValueError("at least one child summary is required")
    return summarizer.summarize_parent(child_summaries, budget)


def _with_community_id(community_id: str, fn):
    try:
        return fn()
    except TransportError as e:
        raise TransportError(
            f"summarizing community {community_id}: {e}",
            retry_safe=e.retry_safe,
            status_code=e.status_code,
            details={**e.details, "community": community_id},
        ) from e


def summarize_hierarchy(
    hierarchy: CommunityHierarchy,
    graph: KnowledgeGraph,
    summarizer: Summarizer,
    leaf_budget: int = 400,
    parent_budget: int = 600,
    jobs: int = 1,
) -> CommunityHierarchy:
    """Fill every summary, leaves first; communities of one level run concurrently."""
    if not hierarchy.levels:
        return hierarchy

    with ThreadPoolExecutor(max_workers=max(jobs, 1)) as pool:
        leaves = hierarchy.levels[0]
        for community, summary in zip(
            leaves,
            pool.map(lambda c: summarize_leaf(c, graph, leaf_budget, summarizer), leaves),
        ):
            community.summary = summary

        for level in range(1, len(hierarchy.levels)):
            below = {c.id: c for c in hierarchy.levels[level - 1]}

            def summarize(parent: Community) -> str:
                children = [below[child].summary for child in parent.children]
                return _with_community_id(
                    parent.id,
                    lambda: summarize_parent(children, parent_budget, summarizer),
                )

            parents = hierarchy.levels[level]
            for community, summary in zip(parents, pool.map(summarize, parents)):
                community.summary = summary

    logger.info(f"Summarized {len(hierarchy.communities())} communities")
    return hierarchy
