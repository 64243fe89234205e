from typing import Sequence

from src.config.templates import render

DEFAULT_NODE_HINT_BUDGET = 500
EMPTY_NODE_HINT = "(none)"


def render_node_hint(current_nodes: Sequence[str], budget: int) -> str:
    """One ``- SURFACE`` line per node, keeping the first ``budget`` entries."""
    kept = list(dict.fromkeys(current_nodes))[: max(budget, 0)]
    if not kept:
        return EMPTY_NODE_HINT
    return "\n".join(f"- {surface}" for surface in kept)


def render_kg_prompt(
    record: str,
    current_nodes: Sequence[str],
    budget: int = DEFAULT_NODE_HINT_BUDGET,
) -> str:
    """
    Render the KG-creation prompt for one record.

    Args:
        record: Record text inserted as the target text
        current_nodes: Existing node surfaces, most recently used first
        budget: Maximum number of node surfaces to list

    Returns:
        The prompt string
    """
    return render(
        "kg_creation",
        text=record,
        existing_nodes=render_node_hint(current_nodes, budget),
    )
