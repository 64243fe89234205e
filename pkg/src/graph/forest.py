"""Connected components and Kruskal maximum spanning trees."""

from typing import Dict, Iterable, List, Set

from src.errors import GraphError
from src.graph.structures import (
    SpanningForest,
    SpanningTree,
    UndirectedMergedEdge,
    UndirectedMergedGraph,
)


class UnionFind:
    """Disjoint sets with path halving and union by size."""

    def __init__(self, items: Iterable[int]):
        self._parent: Dict[int, int] = {item: item for item in items}
        self._size: Dict[int, int] = {item: 1 for item in self._parent}

    def find(self, item: int) -> int:
        parent = self._parent
        while parent[item] != item:
            parent[item] = parent[parent[item]]
            item = parent[item]
        return item

    def union(self, a: int, b: int) -> bool:
        """Join the sets of ``a`` and ``b``; False if they were already joined."""
        root_a, root_b = self.find(a), self.find(b)
        if root_a == root_b:
            return False
        if self._size[root_a] < self._size[root_b]:
            root_a, root_b = root_b, root_a
        self._parent[root_b] = root_a
        self._size[root_a] += self._size[root_b]
        return True


def connected_components(ug: UndirectedMergedGraph) -> List[Set[int]]:
    """Maximal connected node sets, ordered by their smallest member id."""
    adjacency = ug.adjacency()
    seen: Set[int] = set()
    components: List[Set[int]] = []
    for start in sorted(ug.node_ids):
        if start in seen:
            continue
        component = {start}
        seen.add(start)
        stack = [start]
        while stack:
            node = stack.pop()
            for edge in adjacency[node]:
                neighbor = edge.other(node)
                if neighbor not in seen:
                    seen.add(neighbor)
                    component.add(neighbor)
                    stack.append(neighbor)
        components.append(component)
    return components


def kruskal_order(edge: UndirectedMergedEdge) -> tuple:
    # weight desc, then endpoints asc, then label: a total order over edges
    return (-edge.weight, edge.u, edge.v, edge.label)


def max_spanning_tree(component: UndirectedMergedGraph) -> SpanningTree:
    """
    Kruskal's algorithm on descending weights.

    Raises:
        GraphError: If the component is empty or not connected
    """
    if not component.node_ids:
        raise GraphError("cannot span an empty component")

    sets = UnionFind(component.node_ids)
    chosen: List[UndirectedMergedEdge] = []
    target = len(component.node_ids) - 1
    for edge in sorted(component.edges.values(), key=kruskal_order):
        if len(chosen) == target:
            break
        if sets.union(edge.u, edge.v):
            chosen.append(edge)

    if len(chosen) != target:
        raise GraphError(
            f"component with {len(component.node_ids)} nodes is not connected"
        )
    return SpanningTree(node_ids=frozenset(component.node_ids), edges=tuple(chosen))


def spanning_forest(ug: UndirectedMergedGraph) -> SpanningForest:
    """One maximum spanning tree per connected component."""
    trees = tuple(
        max_spanning_tree(ug.restrict(component))
        for component in connected_components(ug)
    )
    return SpanningForest(trees=trees, surfaces=dict(ug.surfaces))
