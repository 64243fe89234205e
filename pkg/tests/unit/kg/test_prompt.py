import random

import pytest

from src.kg.models import KnowledgeGraph, RelationType, canonicalize
from src.kg.prompt import EMPTY_NODE_HINT, render_kg_prompt, render_node_hint
from src.kg.triplets import merge_triplet, parse_triplets

RECORD = "Engine quit on climb out, fuel pump replaced."


class TestRenderKgPrompt:
    """KG-creation prompt rendering."""

    def test_empty_node_list(self):
        """Test a first record lists no existing nodes."""
        prompt = render_kg_prompt(RECORD, [])
        assert EMPTY_NODE_HINT in prompt
        assert RECORD in prompt

    def test_existing_surface_is_listed(self):
        """Test a known node appears verbatim."""
        prompt = render_kg_prompt(RECORD, ["ENGINE QUIT"])
        assert "- ENGINE QUIT" in prompt

    def test_budget_truncates_node_list(self):
        """Test only the first ``budget`` surfaces are listed."""
        prompt = render_kg_prompt(RECORD, ["A NODE", "B NODE", "C NODE"], budget=2)
        listed = [line for line in prompt.splitlines() if line.startswith("- ")]
        assert listed == ["- A NODE", "- B NODE"]

    def test_node_hint_deduplicates(self):
        """Test repeated surfaces are listed once, in first-seen order."""
        assert render_node_hint(["X", "Y", "X"], 10) == "- X\n- Y"
        assert render_node_hint(["X"], 0) == EMPTY_NODE_HINT


class TestGraphInvariants:
    @pytest.mark.parametrize(
        "surface", ["fuel pump", "  Fuel   Pump ", "FUEL\tPUMP", "", "éngine"]
    )
    def test_canonicalize_is_idempotent(self, surface):
        """Test canonicalizing twice equals canonicalizing once."""
        once = canonicalize(surface)
        assert canonicalize(once) == once

    def test_total_weight_equals_merged_triples(self):
        """Test every accepted triple adds exactly one unit of edge weight."""
        vocabulary = ["FUEL PUMP", "ENGINE", "ICING", "CRUISE", "OWNER"]
        labels = [r.value for r in RelationType]
        rng = random.Random(11)
        graph = KnowledgeGraph()
        accepted = 0
        for record in range(30):
            lines = [
                f"<{rng.choice(vocabulary)}, {rng.choice(labels)}, {rng.choice(vocabulary)}>"
                for _ in range(rng.randint(1, 6))
            ]
            result = parse_triplets("\n".join(lines))
            for triple in result.triples:
                merge_triplet(graph, triple, record_id=f"R{record:04d}")
            accepted += len(result.triples)
        assert accepted > 0
        assert graph.total_weight() == accepted
        assert sum(graph.edge_multiset().values()) == accepted
