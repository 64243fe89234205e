import itertools

import pytest

from src.community.detection import (
    CommunityHierarchy,
    detect_communities,
    partition_modularity,
)
from src.errors import GraphError, MissingArtifactError
from src.graph.structures import UndirectedMergedEdge, UndirectedMergedGraph


def cliques_graph(count: int, size: int, bridge_weight: int = 1) -> UndirectedMergedGraph:
    """``count`` cliques of weight-5 edges joined in a ring by light bridges."""
    edges = {}
    for c in range(count):
        members = range(c * size, (c + 1) * size)
        for u, v in itertools.combinations(members, 2):
            edges[(u, v)] = UndirectedMergedEdge(u=u, v=v, weight=5, label="PART OF")
    if count > 1:
        for c in range(count):
            u, v = sorted((c * size, ((c + 1) % count) * size + 1))
            if (u, v) not in edges:
                edges[(u, v)] = UndirectedMergedEdge(
                    u=u, v=v, weight=bridge_weight, label="FOLLOWS"
                )
    return UndirectedMergedGraph(node_ids=frozenset(range(count * size)), edges=edges)


def single_bridge_graph(size: int = 5) -> UndirectedMergedGraph:
    """Two cliques of weight-5 edges joined by exactly one weight-1 edge."""
    ring = cliques_graph(2, size)
    edges = {key: edge for key, edge in ring.edges.items() if edge.label != "FOLLOWS"}
    edges[(size - 1, size)] = UndirectedMergedEdge(u=size - 1, v=size, weight=1, label="FOLLOWS")
    return UndirectedMergedGraph(node_ids=ring.node_ids, edges=edges)


class TestDetectCommunities:
    """Leiden partitions and the hierarchy above them."""

    def test_two_cliques_split_into_two_leaves(self):
        """Test two dense cliques joined by light bridges become two communities."""
        hierarchy = detect_communities(cliques_graph(2, 5), rng_seed=0)
        leaves = [c.node_ids for c in hierarchy.levels[0]]
        assert leaves == [[0, 1, 2, 3, 4], [5, 6, 7, 8, 9]]
        assert [c.id for c in hierarchy.levels[0]] == ["L0C0", "L0C1"]
        assert len(hierarchy.levels) == 1
        assert hierarchy.modularity[0] > 0.3

    def test_single_bridge_splits_cliques(self):
        """Test two 5-cliques joined by one light edge land in separate leaves."""
        ug = single_bridge_graph(5)
        assert [e.key for e in ug.edges.values() if e.weight == 1] == [(4, 5)]
        hierarchy = detect_communities(ug, rng_seed=0)
        leaves = [c.node_ids for c in hierarchy.levels[0]]
        assert leaves == [[0, 1, 2, 3, 4], [5, 6, 7, 8, 9]]
        singletons = partition_modularity(ug, [[n] for n in range(10)])
        assert hierarchy.modularity[0] > singletons
        assert hierarchy.modularity[0] == pytest.approx(
            partition_modularity(ug, leaves)
        )

    def test_same_seed_same_hierarchy(self):
        """Test detection is reproducible for a fixed seed."""
        ug = cliques_graph(6, 4)
        first = detect_communities(ug, rng_seed=11)
        second = detect_communities(ug, rng_seed=11)
        assert first.model_dump() == second.model_dump()

    def test_every_level_partitions_all_nodes(self):
        """Test levels cover each node exactly once and parent links are consistent."""
        ug = cliques_graph(8, 4)
        hierarchy = detect_communities(ug, rng_seed=0)
        for level in hierarchy.levels:
            nodes = [n for c in level for n in c.node_ids]
            assert sorted(nodes) == sorted(ug.node_ids)
        for upper, lower in zip(hierarchy.levels[1:], hierarchy.levels):
            by_id = {c.id: c for c in lower}
            for parent in upper:
                children = [by_id[child] for child in parent.children]
                assert all(child.parent == parent.id for child in children)
                assert sorted(n for child in children for n in child.node_ids) == parent.node_ids
        assert len(hierarchy.modularity) == len(hierarchy.levels)

    def test_edgeless_graph_gives_singletons(self):
        """Test nodes without edges each form their own leaf."""
        ug = UndirectedMergedGraph(node_ids=frozenset({3, 7}), edges={})
        hierarchy = detect_communities(ug)
        assert [c.node_ids for c in hierarchy.levels[0]] == [[3], [7]]
        assert hierarchy.modularity == [0.0]

    def test_invalid_inputs(self):
        """Test an empty graph and a non-positive resolution raise GraphError."""
        with pytest.raises(GraphError, match="empty graph"):
            detect_communities(UndirectedMergedGraph(node_ids=frozenset(), edges={}))
        with pytest.raises(GraphError, match="resolution"):
            detect_communities(cliques_graph(2, 3), resolution=0.0)

    def test_save_and_load(self, tmp_path):
        """Test a hierarchy persists with its summaries and links."""
        hierarchy = detect_communities(cliques_graph(2, 5))
        hierarchy.levels[0][0].summary = "dense cluster"
        loaded = CommunityHierarchy.load(hierarchy.save(tmp_path / "communities.json"))
        assert loaded == hierarchy
        assert loaded.community("L0C0").summary == "dense cluster"
        assert loaded.node_ids() == set(range(10))

    def test_load_missing(self, tmp_path):
        """Test loading an absent hierarchy file."""
        with pytest.raises(MissingArtifactError):
            CommunityHierarchy.load(tmp_path / "communities.json")


class TestPartitionModularity:
    def test_good_split_beats_single_block(self):
        """Test the clique split scores higher than one community."""
        ug = cliques_graph(2, 5)
        split = partition_modularity(ug, [range(5), range(5, 10)])
        single = partition_modularity(ug, [range(10)])
        assert split > single
        assert single == pytest.approx(0.0)
