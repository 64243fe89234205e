import pytest

from src.kg.models import KnowledgeGraph, RelationType, canonicalize


class TestCanonicalize:
    def test_uppercases_and_collapses_whitespace(self):
        """Test surfaces are trimmed, collapsed and uppercased."""
        assert canonicalize("  fuel \t pump ") == "FUEL PUMP"

    def test_relation_lookup_is_canonical(self):
        """Test relation labels resolve regardless of case and spacing."""
        assert RelationType.from_label(" part   of ") is RelationType.PART_OF
        assert RelationType.from_label("CAUSED") is None


class TestKnowledgeGraph:
    """Node and edge bookkeeping."""

    def test_add_node_reuses_canonical_surface(self):
        """Test two spellings of one surface map to the same node."""
        graph = KnowledgeGraph()
        first = graph.add_node("fuel pump")
        second = graph.add_node(" FUEL  PUMP ")
        assert first.id == second.id
        assert len(graph.nodes) == 1

    def test_add_node_rejects_empty_surface(self):
        """Test a blank surface is invalid."""
        with pytest.raises(ValueError, match="empty"):
            KnowledgeGraph().add_node("   ")

    def test_recent_surfaces_most_recent_first(self):
        """Test touching a node moves it to the front of the hint order."""
        graph = KnowledgeGraph()
        for surface in ("A", "B", "C"):
            graph.add_node(surface)
        graph.add_node("A")
        assert graph.recent_surfaces() == ["A", "C", "B"]

    def test_add_edge_accumulates_weight(self):
        """Test re-adding an edge adds to its weight."""
        graph = KnowledgeGraph()
        a, b = graph.add_node("A").id, graph.add_node("B").id
        graph.add_edge(a, RelationType.PART_OF, b)
        edge = graph.add_edge(a, RelationType.PART_OF, b, weight=3)
        assert edge.weight == 4
        assert graph.total_weight() == 4

    def test_add_edge_validates_endpoints_and_weight(self):
        """Test unknown endpoints and non-positive weights are refused."""
        graph = KnowledgeGraph()
        a = graph.add_node("A").id
        with pytest.raises(KeyError):
            graph.add_edge(a, RelationType.PART_OF, 99)
        with pytest.raises(ValueError, match="weight"):
            graph.add_edge(a, RelationType.PART_OF, a, weight=0)

    def test_adjacency_is_undirected_without_self_loops(self):
        """Test adjacency lists every node and ignores self-loops."""
        graph = KnowledgeGraph()
        a, b, c = (graph.add_node(s).id for s in "ABC")
        graph.add_edge(a, RelationType.PART_OF, b)
        graph.add_edge(c, RelationType.FOLLOWS, c)
        assert graph.adjacency() == {a: {b}, b: {a}, c: set()}

    def test_copy_is_independent(self):
        """Test mutating a copy leaves the original untouched."""
        graph = KnowledgeGraph()
        a, b = graph.add_node("A").id, graph.add_node("B").id
        graph.add_edge(a, RelationType.PART_OF, b)
        clone = graph.copy()
        clone.add_edge(a, RelationType.PART_OF, b)
        clone.add_node("C")
        assert graph.total_weight() == 1
        assert len(graph.nodes) == 2
        assert not graph.same_content(clone)

    def test_edge_multiset_uses_surfaces(self):
        """Test the multiset view is keyed by surfaces and labels."""
        graph = KnowledgeGraph()
        a, b = graph.add_node("A").id, graph.add_node("B").id
        graph.add_edge(a, RelationType.USED_BY, b, weight=2)
        assert graph.edge_multiset() == {("A", "USED BY", "B"): 2}
