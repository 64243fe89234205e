from collections import defaultdict
from typing import Dict, List, Tuple

from src.graph.structures import (
    LABEL_SEPARATOR,
    PairKey,
    Subgraph,
    UndirectedMergedEdge,
    UndirectedMergedGraph,
)


def to_undirected(sub: Subgraph) -> UndirectedMergedGraph:
    """
    Collapse directed edges into one weighted edge per unordered node pair.

    The merged weight is the sum over both directions and all relations. The
    label lists the relations of the smaller-id -> larger-id direction first,
    then the reverse direction, each group sorted by label. Self-loops are
    dropped.
    """
    # (u, v) with u < v -> (forward labels, backward labels, weight)
    forward: Dict[PairKey, List[str]] = defaultdict(list)
    backward: Dict[PairKey, List[str]] = defaultdict(list)
    weights: Dict[PairKey, int] = defaultdict(int)

    for edge in sub.edges:
        if edge.head == edge.tail:
            continue
        key: Tuple[int, int] = (min(edge.head, edge.tail), max(edge.head, edge.tail))
        side = forward if edge.head == key[0] else backward
        side[key].append(edge.relation.value)
        weights[key] += edge.weight

    merged = {}
    for key in sorted(weights):
        labels = sorted(forward.get(key, [])) + sorted(backward.get(key, []))
        merged[key] = UndirectedMergedEdge(
            u=key[0], v=key[1], weight=weights[key], label=LABEL_SEPARATOR.join(labels)
        )
    return UndirectedMergedGraph(
        node_ids=sub.node_ids, edges=merged, surfaces=dict(sub.surfaces)
    )
