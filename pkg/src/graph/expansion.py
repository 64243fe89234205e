from collections import deque
from dataclasses import replace
from typing import Dict, Iterable, Union

from src.embeddings.index import SeedSet
from src.errors import GraphError
from src.graph.structures import Subgraph
from src.kg.models import KnowledgeGraph


def _seed_ids(seeds: Union[SeedSet, Iterable[int]]) -> list:
    if isinstance(seeds, SeedSet):
        return seeds.node_ids
    return list(seeds)


def induced_subgraph(graph: KnowledgeGraph, node_ids: Iterable[int]) -> Subgraph:
    """Subgraph of ``graph`` on ``node_ids`` with every edge between them."""
    keep = set(node_ids)
    unknown = keep - set(graph.nodes)
    if unknown:
        raise GraphError(f"unknown node id(s): {sorted(unknown)}")
    edges = tuple(
        replace(edge)
        for _, edge in sorted(
            graph.edges.items(), key=lambda item: (item[0][0], item[0][1].value, item[0][2])
        )
        if edge.head in keep and edge.tail in keep
    )
    return Subgraph(
        node_ids=frozenset(keep),
        edges=edges,
        surfaces={n: graph.nodes[n].surface for n in sorted(keep)},
    )


def whole_graph(graph: KnowledgeGraph) -> Subgraph:
    return induced_subgraph(graph, graph.nodes)


def expand_m_hop(
    graph: KnowledgeGraph, seeds: Union[SeedSet, Iterable[int]], m: int
) -> Subgraph:
    """
    Induced subgraph on every node within ``m`` undirected hops of a seed.

    Edge direction is ignored for reachability: a shared effect node connects
    two causes. The edge set is every directed edge (self-loops included) whose
    endpoints are both in the node set.

    Raises:
        GraphError: If seeds are empty or unknown, or m is negative
    """
    seed_ids = _seed_ids(seeds)
    if not seed_ids:
        raise GraphError("seed set is empty")
    if m < 0:
        raise GraphError(f"m must be non-negative, got {m}")
    unknown = [s for s in seed_ids if s not in graph.nodes]
    if unknown:
        raise GraphError(f"unknown seed node id(s): {unknown}")

    adjacency = graph.adjacency()
    distance: Dict[int, int] = {seed: 0 for seed in seed_ids}
    queue = deque(seed_ids)
    while queue:
        node = queue.popleft()
        if distance[node] == m:
            continue
        for neighbor in adjacency[node]:
            if neighbor not in distance:
                distance[neighbor] = distance[node] + 1
                queue.append(neighbor)

    return induced_subgraph(graph, distance)
