from src.graph.expansion import whole_graph
from src.graph.forest import spanning_forest
from src.graph.merge import to_undirected
from src.graph.structures import LABEL_SEPARATOR
from src.graph.traversal import traverse_to_text
from src.kg.models import KnowledgeGraph, RelationType


def sample_graph() -> KnowledgeGraph:
    graph = KnowledgeGraph()
    a, b, c, d = (graph.add_node(s).id for s in "ABCD")
    graph.add_node("E")
    f, g = graph.add_node("F").id, graph.add_node("G").id
    graph.add_edge(a, RelationType.PART_OF, b, 3)
    graph.add_edge(b, RelationType.HAS_CAUSE, a, 2)
    graph.add_edge(c, RelationType.USED_BY, b, 1)
    graph.add_edge(d, RelationType.LOCATION, a, 4)
    graph.add_edge(a, RelationType.FOLLOWS, c, 1)
    graph.add_edge(f, RelationType.MAINTAINED_BY, g, 2)
    return graph


class TestTraverseToText:
    """Depth-first serialization of the spanning forest."""

    def test_known_forest_text(self):
        """Test the exact lines and block layout for a small two-component graph."""
        forest = spanning_forest(to_undirected(whole_graph(sample_graph())))
        text = traverse_to_text(forest)
        ab_label = LABEL_SEPARATOR.join(["PART OF", "HAS CAUSE"])
        assert text == (
            f"A -[{ab_label} (w=5)]- B\n"
            "A -[LOCATION (w=4)]- D\n"
            "A -[FOLLOWS (w=1)]- C\n"
            "\n"
            "F -[MAINTAINED BY (w=2)]- G"
        )

    def test_every_tree_edge_is_rendered_once(self):
        """Test the number of lines equals the number of tree edges."""
        forest = spanning_forest(to_undirected(whole_graph(sample_graph())))
        lines = [line for line in traverse_to_text(forest).splitlines() if line]
        assert len(lines) == sum(len(t.edges) for t in forest.trees)

    def test_empty_graph(self):
        """Test a graph without edges renders as empty text."""
        graph = KnowledgeGraph()
        graph.add_node("LONELY")
        forest = spanning_forest(to_undirected(whole_graph(graph)))
        assert traverse_to_text(forest) == ""

    def test_deterministic(self):
        """Test two runs over the same graph give the same text."""
        first = traverse_to_text(spanning_forest(to_undirected(whole_graph(sample_graph()))))
        second = traverse_to_text(spanning_forest(to_undirected(whole_graph(sample_graph()))))
        assert first == second
