import random

import pytest

from src.config.config import ParseMode
from src.kg.models import KnowledgeGraph, RelationType, Triple
from src.kg.triplets import merge_triplet, parse_triplets

WRIGHT_OUTPUT = """<FIRST SUCCESSFUL AIRPLANE, DESIGNED BY, WRIGHT BROTHERS>
<FIRST SUCCESSFUL AIRPLANE, TIME PERIOD, 1903>
<FIRST SUCCESSFUL AIRPLANE, LOCATION, KITTY HAWK>"""


class TestParseTriplets:
    """Parsing LLM triplet output into validated triples."""

    def test_prompt_example_yields_three_triples(self):
        """Test the in-prompt example parses to exactly its three triplets."""
        result = parse_triplets(WRIGHT_OUTPUT)
        assert result.rejected == []
        assert result.triples == [
            Triple("FIRST SUCCESSFUL AIRPLANE", RelationType.DESIGNED_BY, "WRIGHT BROTHERS"),
            Triple("FIRST SUCCESSFUL AIRPLANE", RelationType.TIME_PERIOD, "1903"),
            Triple("FIRST SUCCESSFUL AIRPLANE", RelationType.LOCATION, "KITTY HAWK"),
        ]

    def test_unknown_relation_is_rejected(self):
        """Test a label outside the schema is reported, never coerced."""
        result = parse_triplets("<FUEL PUMP, CAUSED, LOSS OF POWER>")
        assert result.triples == []
        assert len(result.rejected) == 1
        assert result.rejected[0].reason == "unknown relation 'CAUSED'"
        assert result.rejected[0].line_no == 1

    def test_surfaces_and_labels_are_canonicalized(self):
        """Test lowercase, padded fields and bullets are normalized."""
        result = parse_triplets("- < fuel  pump , part of,  fuel system >.")
        assert result.triples == [
            Triple("FUEL PUMP", RelationType.PART_OF, "FUEL SYSTEM")
        ]

    def test_numbered_line_is_accepted(self):
        """Test a leading list number does not break parsing."""
        result = parse_triplets("2) <MAGNETO, PART OF, IGNITION SYSTEM>")
        assert len(result.triples) == 1

    def test_malformed_lines_are_rejected_with_reason(self):
        """Test lines without angle brackets or with too few fields."""
        result = parse_triplets("MAGNETO PART OF IGNITION SYSTEM\n<MAGNETO, PART OF>")
        assert result.triples == []
        reasons = [r.reason for r in result.rejected]
        assert reasons[0].startswith("malformed")
        assert reasons[1].startswith("malformed")

    def test_blank_lines_are_skipped(self):
        """Test blank lines are neither accepted nor rejected."""
        result = parse_triplets("\n\n<BATTERY, PART OF, ELECTRICAL SYSTEM>\n\n")
        assert len(result.triples) == 1
        assert result.rejected == []

    def test_entity_containing_comma(self):
        """Test an entity may contain commas when the relation is unambiguous."""
        result = parse_triplets("<BOLT, NUT, PART OF, WING>")
        assert result.triples == [Triple("BOLT, NUT", RelationType.PART_OF, "WING")]

    def test_two_admissible_labels_are_ambiguous(self):
        """Test a line with two relation labels in candidate positions is rejected."""
        result = parse_triplets("<HANGAR, PART OF, LOCATION, AIRPORT>")
        assert result.triples == []
        assert result.rejected[0].reason.startswith("ambiguous")

    def test_strict_mode_requires_known_nodes(self):
        """Test strict mode accepts only triplets between existing nodes."""
        known = ["first successful airplane", "WRIGHT BROTHERS"]
        result = parse_triplets(WRIGHT_OUTPUT, ParseMode.STRICT, known)
        assert result.triples == [
            Triple("FIRST SUCCESSFUL AIRPLANE", RelationType.DESIGNED_BY, "WRIGHT BROTHERS")
        ]
        assert [r.reason for r in result.rejected] == [
            "strict mode: '1903' is not an existing node",
            "strict mode: 'KITTY HAWK' is not an existing node",
        ]

    def test_loose_mode_accepts_new_nodes(self):
        """Test loose mode ignores the known-node set."""
        result = parse_triplets(WRIGHT_OUTPUT, ParseMode.LOOSE, ["WRIGHT BROTHERS"])
        assert len(result.triples) == 3

    @pytest.mark.slow
    def test_strict_is_subset_of_loose_on_random_outputs(self):
        """Test strict acceptances are always a subset of loose acceptances."""
        vocabulary = ["FUEL PUMP", "ENGINE", "ICING", "CRUISE", "OWNER", "WING"]
        labels = [r.value for r in RelationType] + ["CAUSED", "NEAR"]
        for seed in range(100):
            rng = random.Random(seed)
            lines = []
            for _ in range(rng.randint(1, 12)):
                if rng.random() < 0.1:
                    lines.append("garbage line")
                    continue
                lines.append(
                    f"<{rng.choice(vocabulary)}, {rng.choice(labels)}, {rng.choice(vocabulary)}>"
                )
            text = "\n".join(lines)
            known = rng.sample(vocabulary, rng.randint(0, len(vocabulary)))
            strict = parse_triplets(text, ParseMode.STRICT, known)
            loose = parse_triplets(text, ParseMode.LOOSE, known)
            assert set(strict.triples) <= set(loose.triples)
            non_blank = len([line for line in lines if line.strip()])
            assert len(strict.triples) + len(strict.rejected) == non_blank
            assert len(loose.triples) + len(loose.rejected) == non_blank


class TestMergeTriplet:
    """Incremental merge of triples into the graph."""

    def test_repeated_triple_increments_weight(self):
        """Test the same triple merged twice gives one edge of weight 2."""
        graph = KnowledgeGraph()
        triple = Triple("FUEL PUMP", RelationType.PART_OF, "FUEL SYSTEM")
        merge_triplet(graph, triple, record_id="R0001")
        merge_triplet(graph, triple, record_id="R0002")

        assert len(graph.nodes) == 2
        assert len(graph.edges) == 1
        assert graph.total_weight() == 2
        node = graph.nodes[graph.node_id("FUEL PUMP")]
        assert node.provenance == {"R0001", "R0002"}

    def test_distinct_relations_are_distinct_edges(self):
        """Test edges are keyed by (head, relation, tail)."""
        graph = KnowledgeGraph()
        merge_triplet(graph, Triple("A", RelationType.PART_OF, "B"))
        merge_triplet(graph, Triple("A", RelationType.USED_BY, "B"))
        merge_triplet(graph, Triple("B", RelationType.PART_OF, "A"))
        assert len(graph.edges) == 3
        assert graph.total_weight() == 3
