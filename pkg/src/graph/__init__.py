"""Retrieval core: expansion, undirected merge, spanning forest, traversal text."""

from .expansion import expand_m_hop, induced_subgraph, whole_graph
from .forest import UnionFind, connected_components, max_spanning_tree, spanning_forest
from .merge import to_undirected
from .structures import (
    LABEL_SEPARATOR,
    SpanningForest,
    SpanningTree,
    Subgraph,
    UndirectedMergedEdge,
    UndirectedMergedGraph,
)
from .traversal import traverse_to_text

__all__ = [
    "LABEL_SEPARATOR",
    "SpanningForest",
    "SpanningTree",
    "Subgraph",
    "UndirectedMergedEdge",
    "UndirectedMergedGraph",
    "UnionFind",
    "connected_components",
    "expand_m_hop",
    "induced_subgraph",
    "max_spanning_tree",
    "spanning_forest",
    "to_undirected",
    "traverse_to_text",
    "whole_graph",
]
