"""
Line-oriented KG persistence.

Layout (tab separated)::

    KEO-KG	1
    records	<record_count>
    nodes	<n>
    <id>	<surface>	<record ids, comma separated>
    edges	<m>
    <head_id>	<RELATION>	<tail_id>	<weight>
    end

Nodes are written in id order and edges in (head, relation, tail) order, so equal
graphs produce byte-identical files.
"""

from pathlib import Path
from typing import Iterator, List, Tuple, Union

from src.errors import KgFormatError, MissingArtifactError
from src.kg.models import EntityNode, KnowledgeGraph, RelationType, canonicalize
from src.logger import get_logger
from src.utils import atomic_write_text

logger = get_logger()

MAGIC = "KEO-KG"
FORMAT_VERSION = "1"


def dumps_kg(graph: KnowledgeGraph) -> str:
    lines = [f"{MAGIC}\t{FORMAT_VERSION}", f"records\t{graph.record_count}"]
    lines.append(f"nodes\t{len(graph.nodes)}")
    for node_id in sorted(graph.nodes):
        node = graph.nodes[node_id]
        lines.append(f"{node.id}\t{node.surface}\t{','.join(sorted(node.provenance))}")
    edges = sorted(
        graph.edges.values(), key=lambda e: (e.head, e.relation.value, e.tail)
    )
    lines.append(f"edges\t{len(edges)}")
    for edge in edges:
        lines.append(f"{edge.head}\t{edge.relation.value}\t{edge.tail}\t{edge.weight}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def save_kg(graph: KnowledgeGraph, path: Union[str, Path]) -> Path:
    target = atomic_write_text(path, dumps_kg(graph))
    logger.debug(
        f"Saved KG with {len(graph.nodes)} nodes and {len(graph.edges)} edges to {target}"
    )
    return target


class _Lines:
    """Cursor over numbered lines that raises KgFormatError at end of input."""

    def __init__(self, text: str):
        self._lines: List[str] = text.split("\n")
        if self._lines and self._lines[-1] == "":
            self._lines.pop()
        self._pos = 0

    @property
    def line_no(self) -> int:
        return self._pos

    def next(self, expected: str) -> Tuple[int, List[str]]:
        if self._pos >= len(self._lines):
            raise KgFormatError(self._pos + 1, f"unexpected end of file, expected {expected}")
        line = self._lines[self._pos]
        self._pos += 1
        return self._pos, line.split("\t")

    def remaining(self) -> Iterator[Tuple[int, str]]:
        for offset, line in enumerate(self._lines[self._pos :]):
            yield self._pos + offset + 1, line


def _int_field(value: str, line_no: int, what: str, minimum: int = 0) -> int:
    try:
        number = int(value)
    except ValueError:
        raise KgFormatError(line_no, f"{what} is not an integer: '{value}'")
    if number < minimum:
        raise KgFormatError(line_no, f"{what} must be >= {minimum}, got {number}")
    return number


def _section(lines: _Lines, name: str) -> int:
    line_no, fields = lines.next(f"'{name}' section header")
    if len(fields) != 2 or fields[0] != name:
        raise KgFormatError(line_no, f"expected '{name}<TAB>count'")
    return _int_field(fields[1], line_no, f"{name} count")


def loads_kg(text: str) -> KnowledgeGraph:
    """
    Parse KG file content.

    Raises:
        KgFormatError: On any malformed, inconsistent or truncated content
    """
    lines = _Lines(text)
    line_no, fields = lines.next("header")
    if fields != [MAGIC, FORMAT_VERSION]:
        raise KgFormatError(line_no, f"not a {MAGIC} v{FORMAT_VERSION} file")

    graph = KnowledgeGraph()
    graph.record_count = _section(lines, "records")

    node_count = _section(lines, "nodes")
    for _ in range(node_count):
        line_no, fields = lines.next("node line")
        if len(fields) != 3:
            raise KgFormatError(line_no, "node line needs id, surface and provenance")
        node_id = _int_field(fields[0], line_no, "node id")
        surface = fields[1]
        if not surface or canonicalize(surface) != surface:
            raise KgFormatError(line_no, f"surface is not canonical: '{surface}'")
        if node_id in graph.nodes:
            raise KgFormatError(line_no, f"duplicate node id {node_id}")
        if graph.node_id(surface) is not None:
            raise KgFormatError(line_no, f"duplicate surface '{surface}'")
        provenance = {rid for rid in fields[2].split(",") if rid}
        graph.nodes[node_id] = EntityNode(id=node_id, surface=surface, provenance=provenance)
        graph._by_surface[surface] = node_id

    # Loaded graphs treat the highest ids as the most recently used.
    for node_id in sorted(graph.nodes):
        graph.touch(node_id)

    edge_count = _section(lines, "edges")
    for _ in range(edge_count):
        line_no, fields = lines.next("edge line")
        if len(fields) != 4:
            raise KgFormatError(line_no, "edge line needs head, relation, tail and weight")
        head = _int_field(fields[0], line_no, "head id")
        tail = _int_field(fields[2], line_no, "tail id")
        weight = _int_field(fields[3], line_no, "weight", minimum=1)
        try:
            relation = RelationType(fields[1])
        except ValueError:
            raise KgFormatError(line_no, f"unknown relation '{fields[1]}'")
        for endpoint in (head, tail):
            if endpoint not in graph.nodes:
                raise KgFormatError(line_no, f"edge refers to unknown node {endpoint}")
        if (head, relation, tail) in graph.edges:
            raise KgFormatError(line_no, "duplicate edge key")
        graph.add_edge(head, relation, tail, weight)

    line_no, fields = lines.next("'end' marker")
    if fields != ["end"]:
        raise KgFormatError(line_no, "expected 'end' marker")
    for line_no, line in lines.remaining():
        if line.strip():
            raise KgFormatError(line_no, "unexpected content after 'end'")
    return graph


def load_kg(path: Union[str, Path]) -> KnowledgeGraph:
    kg_path = Path(path)
    if not kg_path.is_file():
        raise MissingArtifactError(str(kg_path))
    graph = loads_kg(kg_path.read_text(encoding="utf-8"))
    logger.debug(f"Loaded KG from {kg_path}: {len(graph.nodes)} nodes")
    return graph
