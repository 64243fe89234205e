from typing import Dict, List, Mapping

from src.graph.forest import kruskal_order
from src.graph.structures import SpanningForest, SpanningTree, UndirectedMergedEdge


def render_edge(
    surfaces: Mapping[int, str], source: int, edge: UndirectedMergedEdge
) -> str:
    target = edge.other(source)
    return (
        f"{surfaces.get(source, str(source))} -[{edge.label} (w={edge.weight})]- "
        f"{surfaces.get(target, str(target))}"
    )


def traverse_tree(tree: SpanningTree, surfaces: Mapping[int, str]) -> List[str]:
    """
    Depth-first walk of one tree, one line per edge in visit order.

    The walk starts at the smaller endpoint of the heaviest edge and visits
    neighbors by descending weight, then ascending id.
    """
    if not tree.edges:
        return []

    adjacency: Dict[int, List[UndirectedMergedEdge]] = {n: [] for n in tree.node_ids}
    for edge in tree.edges:
        adjacency[edge.u].append(edge)
        adjacency[edge.v].append(edge)
    for node, edges in adjacency.items():
        edges.sort(key=lambda e, n=node: (-e.weight, e.other(n)))

    start = min(tree.edges, key=kruskal_order).u
    lines: List[str] = []
    visited = {start}
    # explicit stack of (node, next neighbor position) keeps deep trees off the call stack
    stack = [(start, 0)]
    while stack:
        node, position = stack[-1]
        edges = adjacency[node]
        if position == len(edges):
            stack.pop()
            continue
        stack[-1] = (node, position + 1)
        edge = edges[position]
        neighbor = edge.other(node)
        if neighbor in visited:
            continue
        visited.add(neighbor)
        lines.append(render_edge(surfaces, node, edge))
        stack.append((neighbor, 0))
    return lines


def traverse_to_text(forest: SpanningForest) -> str:
    """Serialize every tree; blocks are separated by a blank line."""
    blocks = []
    for tree in forest.trees:
        lines = traverse_tree(tree, forest.surfaces)
        if lines:
            blocks.append("\n".join(lines))
    return "\n\n".join(blocks)
