import pytest

from src.community.context import CONTEXT_SEPARATOR, assemble_context, ordered_summaries
from src.community.detection import Community, CommunityHierarchy
from src.community.summaries import (
    ExtractiveSummarizer,
    LlmSummarizer,
    summarize_hierarchy,
    summarize_leaf,
    summarize_parent,
    truncate_at_boundary,
)
from src.errors import TransportError
from src.kg.models import KnowledgeGraph, RelationType
from tests.models import FakeChat


def star_graph() -> KnowledgeGraph:
    graph = KnowledgeGraph()
    a, b, c = (graph.add_node(s).id for s in "ABC")
    graph.add_edge(a, RelationType.PART_OF, b, 2)
    graph.add_edge(a, RelationType.USED_BY, c, 1)
    return graph


def two_level_hierarchy() -> CommunityHierarchy:
    return CommunityHierarchy(
        resolution=1.0,
        rng_seed=0,
        levels=[
            [
                Community(id="L0C0", level=0, node_ids=[0, 1], parent="L1C0", summary="leaf a"),
                Community(id="L0C1", level=0, node_ids=[2], parent="L1C0", summary="leaf b"),
            ],
            [
                Community(
                    id="L1C0",
                    level=1,
                    node_ids=[0, 1, 2],
                    children=["L0C0", "L0C1"],
                    summary="top",
                )
            ],
        ],
    )


class TestExtractiveSummarizer:
    """Degree-ranked summaries without a model."""

    def test_orders_by_degree_within_budget(self):
        """Test the hub comes first and entries stop at the budget."""
        community = Community(id="L0C0", level=0, node_ids=[0, 1, 2])
        summarizer = ExtractiveSummarizer()
        full = summarizer.summarize_leaf(community, star_graph(), 400)
        assert full == "A (PART OF, USED BY); B (PART OF); C (USED BY)"
        assert summarizer.summarize_leaf(community, star_graph(), 40) == (
            "A (PART OF, USED BY); B (PART OF)"
        )

    def test_tiny_budget_truncates_first_entry(self):
        """Test a budget smaller than one entry still yields text within budget."""
        community = Community(id="L0C0", level=0, node_ids=[0, 1, 2])
        summary = ExtractiveSummarizer().summarize_leaf(community, star_graph(), 5)
        assert summary == "A (PA"

    def test_parent_summary_cuts_at_boundary(self):
        """Test parent summaries end at a sentence or child boundary."""
        summary = ExtractiveSummarizer().summarize_parent(
            ["First sentence. Second sentence.", "Other child."], 20
        )
        assert summary == "First sentence."


class TestTruncateAtBoundary:
    def test_short_text_unchanged(self):
        """Test text within budget is returned as is."""
        assert truncate_at_boundary("Short.", 10) == "Short."

    def test_hard_cut_without_boundary(self):
        """Test a hard cut when no boundary exists."""
        assert truncate_at_boundary("abcdefghij", 4) == "abcd"


class TestSummarizeHierarchy:
    def test_fills_every_level(self):
        """Test leaves and parents all receive summaries within their budgets."""
        hierarchy = two_level_hierarchy()
        for community in hierarchy.communities():
            community.summary = ""
        summarize_hierarchy(
            hierarchy, star_graph(), ExtractiveSummarizer(), leaf_budget=40, parent_budget=50
        )
        leaves = hierarchy.levels[0]
        assert leaves[0].summary == "A (PART OF); B (PART OF)"
        assert leaves[1].summary == "C"
        top = hierarchy.levels[1][0].summary
        assert top == "A (PART OF); B (PART OF)\nC"
        assert all(len(c.summary) <= 50 for c in hierarchy.communities())

    def test_llm_summaries_use_chat(self):
        """Test the LLM summarizer sends one prompt per community."""
        chat = FakeChat()
        hierarchy = summarize_hierarchy(
            two_level_hierarchy(), star_graph(), LlmSummarizer(chat), leaf_budget=100
        )
        assert len(chat.prompts) == 2
        assert hierarchy.levels[0][0].summary.startswith("Recurring component failures")

    def test_transport_failure_names_community(self):
        """Test a failing chat call reports the community being summarized."""
        with pytest.raises(TransportError, match="summarizing community L0C0"):
            summarize_hierarchy(
                two_level_hierarchy(), star_graph(), LlmSummarizer(FakeChat(fail_on_call=1))
            )

    def test_empty_inputs(self):
        """Test empty communities and empty child lists are refused."""
        with pytest.raises(ValueError, match="empty"):
            summarize_leaf(
                Community(id="L0C9", level=0, node_ids=[]), star_graph(), 10, ExtractiveSummarizer()
            )
        with pytest.raises(ValueError, match="child summary"):
            summarize_parent([], 10, ExtractiveSummarizer())


class TestAssembleContext:
    """Summaries, separator and traversal text under a budget."""

    def test_focus_communities_first_within_level(self):
        """Test communities touching a focus node lead their level."""
        assert ordered_summaries(two_level_hierarchy(), [2]) == ["top", "leaf b", "leaf a"]
        assert ordered_summaries(two_level_hierarchy()) == ["top", "leaf a", "leaf b"]

    def test_layout(self):
        """Test summaries come before the separator and the traversal text."""
        context = assemble_context("A -[PART OF (w=2)]- B", two_level_hierarchy(), 1000)
        assert context == (
            f"top\n\nleaf a\n\nleaf b\n{CONTEXT_SEPARATOR}\nA -[PART OF (w=2)]- B"
        )

    def test_summaries_dropped_to_fit(self):
        """Test only the summaries that fit next to the traversal are kept."""
        context = assemble_context("T" * 10, two_level_hierarchy(), 20)
        assert context == f"top\n{CONTEXT_SEPARATOR}\n" + "T" * 10

    def test_long_traversal_trimmed_to_whole_lines(self):
        """Test an oversized traversal keeps whole lines and leaves no room for summaries."""
        context = assemble_context("line one\nline two\nline three", two_level_hierarchy(), 17)
        assert context == "line one\nline two"

    def test_without_hierarchy(self):
        """Test the context is the traversal text alone when no summaries exist."""
        assert assemble_context("A -[PART OF (w=1)]- B", None, 100) == "A -[PART OF (w=1)]- B"
