"""Domain model for the weighted multi-relational knowledge graph."""

import copy
from collections import Counter, OrderedDict
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, NamedTuple, Optional, Set, Tuple


class RelationType(str, Enum):
    """The closed relation schema; any other label is rejected at parse time."""

    OWNED_BY = "OWNED BY"
    INSTANCE_OF = "INSTANCE OF"
    FOLLOWED_BY = "FOLLOWED BY"
    HAS_CAUSE = "HAS CAUSE"
    FOLLOWS = "FOLLOWS"
    EVENT_DISTANCE = "EVENT DISTANCE"
    HAS_EFFECT = "HAS EFFECT"
    LOCATION = "LOCATION"
    USED_BY = "USED BY"
    INFLUENCED_BY = "INFLUENCED BY"
    TIME_PERIOD = "TIME PERIOD"
    PART_OF = "PART OF"
    MAINTAINED_BY = "MAINTAINED BY"
    DESIGNED_BY = "DESIGNED BY"

    @classmethod
    def from_label(cls, label: str) -> Optional["RelationType"]:
        """Look up a relation by its label after canonicalization, or None."""
        try:
            return cls(canonicalize(label))
        except ValueError:
            return None


def canonicalize(surface: str) -> str:
    """Uppercase, trim and collapse internal whitespace."""
    return " ".join(surface.split()).upper()


class Triple(NamedTuple):
    head: str
    relation: RelationType
    tail: str


EdgeKey = Tuple[int, RelationType, int]


@dataclass
class EntityNode:
    id: int
    surface: str
    provenance: Set[str] = field(default_factory=set)


@dataclass
class DirectedEdge:
    head: int
    tail: int
    relation: RelationType
    weight: int = 1

    @property
    def key(self) -> EdgeKey:
        return (self.head, self.relation, self.tail)


@dataclass
class KnowledgeGraph:
    """
    G = (V, E) with frequency-weighted, directed, labeled edges.

    Construction is single-writer. Once a build finishes the graph is treated as
    read-only and may be shared between concurrent queries.
    """

    nodes: Dict[int, EntityNode] = field(default_factory=dict)
    edges: Dict[EdgeKey, DirectedEdge] = field(default_factory=dict)
    record_count: int = 0
    _by_surface: Dict[str, int] = field(default_factory=dict, repr=False)
    # node id -> None, least recently used first
    _recent: "OrderedDict[int, None]" = field(default_factory=OrderedDict, repr=False)

    def node_id(self, surface: str) -> Optional[int]:
        return self._by_surface.get(canonicalize(surface))

    def add_node(self, surface: str, record_id: Optional[str] = None) -> EntityNode:
        """Return the node for ``surface``, creating it when absent."""
        canonical = canonicalize(surface)
        if not canonical:
            raise ValueError("entity surface is empty after canonicalization")
        node_id = self._by_surface.get(canonical)
        if node_id is None:
            node_id = len(self.nodes)
            while node_id in self.nodes:
                node_id += 1
            self.nodes[node_id] = EntityNode(id=node_id, surface=canonical)
            self._by_surface[canonical] = node_id
        node = self.nodes[node_id]
        if record_id is not None:
            node.provenance.add(record_id)
        self.touch(node_id)
        return node

    def touch(self, node_id: int) -> None:
        self._recent[node_id] = None
        self._recent.move_to_end(node_id)

    def recent_surfaces(self) -> List[str]:
        """Node surfaces, most recently used first."""
        return [self.nodes[node_id].surface for node_id in reversed(self._recent)]

    def surfaces(self) -> Set[str]:
        return set(self._by_surface)

    def add_edge(
        self, head: int, relation: RelationType, tail: int, weight: int = 1
    ) -> DirectedEdge:
        if head not in self.nodes or tail not in self.nodes:
            raise KeyError(f"edge endpoint missing: {head} -> {tail}")
        if weight < 1:
            raise ValueError(f"edge weight must be >= 1, got {weight}")
        key = (head, relation, tail)
        edge = self.edges.get(key)
        if edge is None:
            edge = DirectedEdge(head=head, tail=tail, relation=relation, weight=weight)
            self.edges[key] = edge
        else:
            edge.weight += weight
        return edge

    def total_weight(self) -> int:
        return sum(edge.weight for edge in self.edges.values())

    def adjacency(self) -> Dict[int, Set[int]]:
        """Undirected neighbor sets; every node is present, self-loops ignored."""
        neighbors: Dict[int, Set[int]] = {node_id: set() for node_id in self.nodes}
        for edge in self.edges.values():
            if edge.head != edge.tail:
                neighbors[edge.head].add(edge.tail)
                neighbors[edge.tail].add(edge.head)
        return neighbors

    def edge_multiset(self) -> Counter:
        """(head surface, relation label, tail surface) -> weight."""
        return Counter(
            {
                (
                    self.nodes[edge.head].surface,
                    edge.relation.value,
                    self.nodes[edge.tail].surface,
                ): edge.weight
                for edge in self.edges.values()
            }
        )

    def same_content(self, other: "KnowledgeGraph") -> bool:
        """Equality under (node surface, edge key, weight)."""
        return (
            self.surfaces() == other.surfaces()
            and self.edge_multiset() == other.edge_multiset()
        )

    def copy(self) -> "KnowledgeGraph":
        return copy.deepcopy(self)

    def triples(self) -> Iterable[Triple]:
        for edge in self.edges.values():
            yield Triple(
                self.nodes[edge.head].surface,
                edge.relation,
                self.nodes[edge.tail].surface,
            )
