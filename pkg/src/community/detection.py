"""Hierarchical Leiden community detection over the merged KG."""

from pathlib import Path
from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

import igraph as ig
import leidenalg as la
import networkx as nx
from pydantic import BaseModel, Field

from src.errors import GraphError, MissingArtifactError
from src.graph.structures import UndirectedMergedGraph
from src.logger import get_logger
from src.utils import read_json, write_json

logger = get_logger()

# Stop growing the hierarchy once a level has this few communities.
MIN_TOP_COMMUNITIES = 3
MAX_LEVELS = 4
# Each level above the leaves runs at this fraction of the previous resolution.
RESOLUTION_DECAY = 0.5


class Community(BaseModel):
    id: str = Field(..., description="L<level>C<index>")
    level: int
    node_ids: List[int]
    children: List[str] = Field(default_factory=list)
    parent: Optional[str] = None
    summary: str = ""


class CommunityHierarchy(BaseModel):
    """Level 0 holds the leaves; every level partitions the same node set."""

    resolution: float
    rng_seed: int
    levels: List[List[Community]] = Field(default_factory=list)
    modularity: List[float] = Field(
        default_factory=list, description="Partition modularity per level"
    )

    def communities(self) -> List[Community]:
        return [c for level in self.levels for c in level]

    def community(self, community_id: str) -> Community:
        for c in self.communities():
            if c.id == community_id:
                return c
        raise KeyError(community_id)

    def node_ids(self) -> Set[int]:
        return {n for c in self.levels[0] for n in c.node_ids} if self.levels else set()

    def save(self, path: Union[str, Path]) -> Path:
        return write_json(path, self.model_dump(mode="json"))

    @classmethod
    def load(cls, path: Union[str, Path]) -> "CommunityHierarchy":
        hierarchy_path = Path(path)
        if not hierarchy_path.is_file():
            raise MissingArtifactError(str(hierarchy_path))
        return cls.model_validate(read_json(hierarchy_path))


def _leiden_membership(
    n: int,
    edges: Sequence[Tuple[int, int]],
    weights: Sequence[float],
    resolution: float,
    rng_seed: int,
) -> List[int]:
    if not edges:
        return list(range(n))
    graph = ig.Graph(n=n, edges=list(edges), edge_attrs={"weight": list(weights)})
    partition = la.find_partition(
        graph,
        la.RBConfigurationVertexPartition,
        weights="weight",
        resolution_parameter=resolution,
        n_iterations=-1,
        seed=rng_seed,
    )
    return list(partition.membership)


def _group(members: Sequence[int], items: Sequence[int]) -> List[List[int]]:
    """Group ``items`` by membership label, ordered by smallest item."""
    groups: Dict[int, List[int]] = {}
    for item, label in zip(items, members):
        groups.setdefault(label, []).append(item)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def partition_modularity(
    ug: UndirectedMergedGraph, partition: Sequence[Sequence[int]], resolution: float = 1.0
) -> float:
    """Weighted modularity of ``partition`` on ``ug`` (0.0 for an edgeless graph)."""
    if not ug.edges:
        return 0.0
    graph = nx.Graph()
    graph.add_nodes_from(sorted(ug.node_ids))
    graph.add_weighted_edges_from((e.u, e.v, e.weight) for e in ug.edges.values())
    return float(
        nx.community.modularity(
            graph, [set(c) for c in partition], weight="weight", resolution=resolution
        )
    )


def detect_communities(
    ug: UndirectedMergedGraph, resolution: float = 1.0, rng_seed: int = 0
) -> CommunityHierarchy:
    """
    Leiden partitions from leaves upward, summaries left empty.

    Higher levels run Leiden on the community graph of the level below
    (intra-community weight kept as self-loops) at a decayed resolution.
    Growth stops at ``MAX_LEVELS`` levels, when a level has at most
    ``MIN_TOP_COMMUNITIES`` communities, or when nothing merges.

    Raises:
        GraphError: If the graph has no nodes or the resolution is not positive
    """
    if not ug.node_ids:
        raise GraphError("cannot detect communities in an empty graph")
    if resolution <= 0:
        raise GraphError(f"resolution must be positive, got {resolution}")

    node_order = sorted(ug.node_ids)
    position = {node: i for i, node in enumerate(node_order)}
    edges = [(position[e.u], position[e.v]) for e in ug.edges.values()]
    weights = [float(e.weight) for e in ug.edges.values()]

    membership = _leiden_membership(len(node_order), edges, weights, resolution, rng_seed)
    partition = _group(membership, node_order)
    hierarchy = CommunityHierarchy(resolution=resolution, rng_seed=rng_seed)
    hierarchy.levels.append(
        [Community(id=f"L0C{i}", level=0, node_ids=nodes) for i, nodes in enumerate(partition)]
    )
    hierarchy.modularity.append(partition_modularity(ug, partition))

    level_resolution = resolution
    while len(hierarchy.levels) < MAX_LEVELS and len(hierarchy.levels[-1]) > MIN_TOP_COMMUNITIES:
        below = hierarchy.levels[-1]
        owner = {node: i for i, c in enumerate(below) for node in c.node_ids}
        aggregated: Dict[Tuple[int, int], float] = {}
        for e in ug.edges.values():
            key = tuple(sorted((owner[e.u], owner[e.v])))
            aggregated[key] = aggregated.get(key, 0.0) + e.weight
        level_resolution *= RESOLUTION_DECAY
        keys = sorted(aggregated)
        membership = _leiden_membership(
            len(below), keys, [aggregated[k] for k in keys], level_resolution, rng_seed
        )
        groups = _group(membership, list(range(len(below))))
        if len(groups) == len(below):
            break

        level = len(hierarchy.levels)
        parents = []
        for i, child_indexes in enumerate(groups):
            parent = Community(
                id=f"L{level}C{i}",
                level=level,
                node_ids=sorted(n for ci in child_indexes for n in below[ci].node_ids),
                children=[below[ci].id for ci in child_indexes],
            )
            for ci in child_indexes:
                below[ci].parent = parent.id
            parents.append(parent)
        # groups come ordered by first child, which is also smallest-node order
        hierarchy.levels.append(parents)
        hierarchy.modularity.append(
            partition_modularity(ug, [c.node_ids for c in parents])
        )

    logger.info(
        f"Detected {len(hierarchy.levels[0])} leaf communities over "
        f"{len(node_order)} nodes in {len(hierarchy.levels)} level(s)"
    )
    return hierarchy
