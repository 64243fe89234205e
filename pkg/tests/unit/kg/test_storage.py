import pytest

from src.errors import KgFormatError, MissingArtifactError
from src.kg.models import KnowledgeGraph, RelationType, Triple
from src.kg.storage import dumps_kg, load_kg, loads_kg, save_kg
from src.kg.triplets import merge_triplet


def sample_graph() -> KnowledgeGraph:
    graph = KnowledgeGraph()
    for record_id, triple in (
        ("R1", Triple("FUEL PUMP", RelationType.PART_OF, "FUEL SYSTEM")),
        ("R1", Triple("LOSS OF POWER", RelationType.INFLUENCED_BY, "FUEL PUMP")),
        ("R2", Triple("FUEL PUMP", RelationType.PART_OF, "FUEL SYSTEM")),
    ):
        merge_triplet(graph, triple, record_id)
    graph.record_count = 2
    return graph


class TestKgStorage:
    """Persistence of the weighted graph."""

    def test_save_and_load_preserve_content(self, tmp_path):
        """Test a saved graph loads back with the same surfaces, edges and weights."""
        graph = sample_graph()
        path = save_kg(graph, tmp_path / "kg.tsv")
        loaded = load_kg(path)
        assert loaded.same_content(graph)
        assert loaded.record_count == 2
        node = loaded.nodes[loaded.node_id("FUEL PUMP")]
        assert node.provenance == {"R1", "R2"}

    def test_equal_graphs_serialize_identically(self):
        """Test serialization does not depend on insertion order."""
        graph = sample_graph()
        assert dumps_kg(loads_kg(dumps_kg(graph))) == dumps_kg(graph)

    def test_missing_file(self, tmp_path):
        """Test loading an absent file raises MissingArtifactError."""
        with pytest.raises(MissingArtifactError, match="missing artifact"):
            load_kg(tmp_path / "absent.tsv")

    def test_truncated_file_reports_line(self):
        """Test a file cut before its edges fails with a line number."""
        text = dumps_kg(sample_graph())
        truncated = "\n".join(text.splitlines()[:6]) + "\n"
        with pytest.raises(KgFormatError, match="unexpected end of file") as exc_info:
            loads_kg(truncated)
        assert exc_info.value.line_no == 7

    def test_bad_header(self):
        """Test a file without the magic header is rejected on line 1."""
        with pytest.raises(KgFormatError, match="line 1"):
            loads_kg("NOT-A-KG\t1\n")

    def test_unknown_relation_in_edge(self):
        """Test an edge with a label outside the schema is rejected."""
        text = dumps_kg(sample_graph()).replace("PART OF", "CAUSED")
        with pytest.raises(KgFormatError, match="unknown relation 'CAUSED'"):
            loads_kg(text)

    def test_zero_weight_edge(self):
        """Test weights below one are rejected."""
        lines = dumps_kg(sample_graph()).splitlines()
        edge_at = lines.index(next(line for line in lines if line.startswith("edges\t")))
        fields = lines[edge_at + 1].split("\t")
        fields[3] = "0"
        lines[edge_at + 1] = "\t".join(fields)
        with pytest.raises(KgFormatError, match="weight must be >= 1"):
            loads_kg("\n".join(lines) + "\n")

    def test_content_after_end(self):
        """Test trailing content after the end marker is rejected."""
        with pytest.raises(KgFormatError, match="after 'end'"):
            loads_kg(dumps_kg(sample_graph()) + "extra\n")
