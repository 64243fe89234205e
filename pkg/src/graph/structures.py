"""Intermediate graph structures between the KG and the traversal text."""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Set, Tuple

from src.kg.models import DirectedEdge

# Separator between relation labels merged into one undirected edge.
LABEL_SEPARATOR = " ∥ "

PairKey = Tuple[int, int]


@dataclass(frozen=True)
class Subgraph:
    """Induced subgraph: every parent edge with both endpoints in ``node_ids``."""

    node_ids: FrozenSet[int]
    edges: Tuple[DirectedEdge, ...]
    surfaces: Mapping[int, str] = field(default_factory=dict, compare=False)

    def total_weight(self) -> int:
        return sum(edge.weight for edge in self.edges)


@dataclass(frozen=True)
class UndirectedMergedEdge:
    u: int
    v: int
    weight: int
    label: str

    def __post_init__(self):
        if self.u >= self.v:
            raise ValueError(f"merged edge endpoints must satisfy u < v, got {self.u}, {self.v}")
        if self.weight < 1:
            raise ValueError(f"merged edge weight must be positive, got {self.weight}")

    @property
    def key(self) -> PairKey:
        return (self.u, self.v)

    @property
    def endpoints(self) -> FrozenSet[int]:
        return frozenset((self.u, self.v))

    def other(self, node_id: int) -> int:
        return self.v if node_id == self.u else self.u


@dataclass(frozen=True)
class UndirectedMergedGraph:
    node_ids: FrozenSet[int]
    edges: Mapping[PairKey, UndirectedMergedEdge]
    surfaces: Mapping[int, str] = field(default_factory=dict, compare=False)

    def adjacency(self) -> Dict[int, List[UndirectedMergedEdge]]:
        neighbors: Dict[int, List[UndirectedMergedEdge]] = {n: [] for n in self.node_ids}
        for edge in self.edges.values():
            neighbors[edge.u].append(edge)
            neighbors[edge.v].append(edge)
        return neighbors

    def total_weight(self) -> int:
        return sum(edge.weight for edge in self.edges.values())

    def restrict(self, node_ids: Iterable[int]) -> "UndirectedMergedGraph":
        """The merged subgraph induced on ``node_ids``."""
        keep: Set[int] = set(node_ids)
        return UndirectedMergedGraph(
            node_ids=frozenset(keep),
            edges={
                key: edge
                for key, edge in self.edges.items()
                if edge.u in keep and edge.v in keep
            },
            surfaces={n: s for n, s in self.surfaces.items() if n in keep},
        )


@dataclass(frozen=True)
class SpanningTree:
    node_ids: FrozenSet[int]
    edges: Tuple[UndirectedMergedEdge, ...]

    def total_weight(self) -> int:
        return sum(edge.weight for edge in self.edges)


@dataclass(frozen=True)
class SpanningForest:
    trees: Tuple[SpanningTree, ...]
    surfaces: Mapping[int, str] = field(default_factory=dict, compare=False)

    @property
    def component_count(self) -> int:
        return len(self.trees)

    def total_weight(self) -> int:
        return sum(tree.total_weight() for tree in self.trees)
