from typing import Iterable, List, Optional

from src.community.detection import Community, CommunityHierarchy

CONTEXT_SEPARATOR = "-----"


def _trim_lines(text: str, budget: int) -> str:
    """Whole lines of ``text`` that fit in ``budget`` characters."""
    if len(text) <= budget:
        return text
    kept: List[str] = []
    size = 0
    for line in text.split("\n"):
        extra = len(line) + (1 if kept else 0)
        if size + extra > budget:
            break
        kept.append(line)
        size += extra
    return "\n".join(kept).rstrip("\n")


def ordered_summaries(
    hierarchy: Optional[CommunityHierarchy], focus_nodes: Optional[Iterable[int]] = None
) -> List[str]:
    """
    Non-empty summaries, top level first.

    Within a level, communities that contain a focus node come first; the
    relative order is otherwise kept.
    """
    if hierarchy is None:
        return []
    focus = set(focus_nodes or ())

    def touches_focus(community: Community) -> bool:
        return bool(focus.intersection(community.node_ids))

    summaries = []
    for level in reversed(hierarchy.levels):
        ranked = sorted(level, key=lambda c: not touches_focus(c)) if focus else level
        summaries.extend(c.summary for c in ranked if c.summary)
    return summaries


def assemble_context(
    traversal_text: str,
    hierarchy: Optional[CommunityHierarchy],
    budget: int,
    focus_nodes: Optional[Iterable[int]] = None,
) -> str:
    """
    Community summaries, a separator line, then the traversal text.

    The traversal text is kept first (trimmed to whole lines if it alone
    exceeds ``budget``); summaries are then added in order while they fit.
    Without any summary the context is the traversal text alone.
    """
    traversal = _trim_lines(traversal_text, budget)
    summaries = ordered_summaries(hierarchy, focus_nodes)

    def render(parts: List[str]) -> str:
        if not parts:
            return traversal
        block = "\n\n".join(parts) + "\n" + CONTEXT_SEPARATOR
        return f"{block}\n{traversal}" if traversal else block

    kept: List[str] = []
    for summary in summaries:
        if len(render(kept + [summary])) <= budget:
            kept.append(summary)
    return render(kept)
