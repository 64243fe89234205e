from src.benchmark.models import load_benchmark
from src.fixtures import make_fixture, make_fixture_benchmark, make_pairs, write_fixture
from src.kg.corpus import load_corpus
from src.kg.quality import load_gold_file
from src.rag.leakage import find_leaks


class TestMakeFixture:
    """Synthetic corpus generation."""

    def test_deterministic(self):
        """Test the same seed gives the same corpus."""
        assert make_fixture(10, 3, seed=5) == make_fixture(10, 3, seed=5)
        assert make_fixture(10, 3, seed=5) != make_fixture(10, 3, seed=6)

    def test_six_gold_triples_per_record(self, small_fixture):
        """Test every record carries its slot-derived triples."""
        grouped = small_fixture.gold_by_record()
        assert len(small_fixture.records) == 20
        assert set(grouped) == {r.id for r in small_fixture.records}
        assert all(len(triples) == 6 for triples in grouped.values())
        assert small_fixture.records[0].id == "R0001"

    def test_pairs_never_leak(self):
        """Test no gold action appears in a large corpus."""
        fixture = make_fixture(n_records=200, n_pairs=45)
        assert len(fixture.pairs) == 45
        assert find_leaks(fixture.records, [(p.id, p.action) for p in fixture.pairs]) == []

    def test_make_pairs_caps_at_grid(self):
        """Test pair ids are sequential and the grid bounds the count."""
        pairs = make_pairs(1000)
        assert len(pairs) == 45
        assert pairs[0].id == "P001"


class TestWriteFixture:
    def test_files_load_back(self, small_fixture, tmp_path):
        """Test every written artifact loads with its reader."""
        benchmark = make_fixture_benchmark(small_fixture.pairs, n_gsm=3, n_k2a=2)
        paths = write_fixture(small_fixture, tmp_path, benchmark)
        assert load_corpus(paths["corpus"]) == small_fixture.records
        assert load_gold_file(paths["gold"]) == small_fixture.gold
        loaded = load_benchmark(paths["benchmark"])
        assert [qa.family for qa in loaded.items] == ["GSM"] * 3 + ["K2A"] * 2
        assert paths["pairs"].read_text().count("\n") == 5
