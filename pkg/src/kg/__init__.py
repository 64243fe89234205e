"""Weighted multi-relational knowledge graph: model, parsing, persistence, building."""

from .corpus import CorpusRecord, load_corpus, write_corpus
from .models import (
    DirectedEdge,
    EntityNode,
    KnowledgeGraph,
    RelationType,
    Triple,
    canonicalize,
)
from .prompt import render_kg_prompt
from .quality import GoldTriple, graph_stats, kg_quality, relation_histogram
from .storage import load_kg, save_kg
from .triplets import ParseResult, RejectedLine, merge_triplet, parse_triplets

__all__ = [
    "CorpusRecord",
    "DirectedEdge",
    "EntityNode",
    "GoldTriple",
    "KnowledgeGraph",
    "ParseResult",
    "RejectedLine",
    "RelationType",
    "Triple",
    "canonicalize",
    "graph_stats",
    "kg_quality",
    "load_corpus",
    "load_kg",
    "merge_triplet",
    "parse_triplets",
    "relation_histogram",
    "render_kg_prompt",
    "save_kg",
    "write_corpus",
]
