"""Synthetic corpus, gold triplets and problem-action pairs for tests and demos."""

from .synthetic import (
    BENCHMARK_FILE,
    CORPUS_FILE,
    GOLD_FILE,
    PAIRS_FILE,
    Fixture,
    make_fixture,
    make_fixture_benchmark,
    make_pairs,
    write_fixture,
)

__all__ = [
    "BENCHMARK_FILE",
    "CORPUS_FILE",
    "GOLD_FILE",
    "PAIRS_FILE",
    "Fixture",
    "make_fixture",
    "make_fixture_benchmark",
    "make_pairs",
    "write_fixture",
]
