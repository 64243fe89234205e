"""
The three answer methods compared by the benchmark.

- VN: few-shot prompting with no retrieved context
- TC: top-k corpus chunks by embedding similarity
- KG: seeds -> m-hop expansion -> undirected merge -> spanning forest ->
  traversal text, prefixed with community summaries
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

from pydantic import BaseModel, Field, model_validator

from src.community.context import assemble_context
from src.community.detection import CommunityHierarchy
from src.config.config import RetrievalConfig
from src.config.templates import load_template
from src.embeddings.index import ScoredCandidate, SeedSet, VectorIndex, top_k_seeds
from src.embeddings.providers import EmbeddingProvider, embed
from src.errors import GraphError, InputError, MissingArtifactError, TransportError
from src.graph import (
    SpanningForest,
    Subgraph,
    UndirectedMergedGraph,
    expand_m_hop,
    spanning_forest,
    to_undirected,
    traverse_to_text,
)
from src.kg.models import KnowledgeGraph
from src.logger import get_logger
from src.rag.chat import ChatClient, ChatResponse

logger = get_logger()


class Method(str, Enum):
    VN = "VN"
    TC = "TC"
    KG = "KG"


class FewShot(BaseModel):
    question: str
    answer: str


class KgTrace(BaseModel):
    """Audit copy of every intermediate KG retrieval artifact."""

    seeds: List[ScoredCandidate]
    subgraph_nodes: List[int]
    subgraph_edges: List[List[Any]] = Field(
        default_factory=list, description="[head, relation, tail, weight] rows"
    )
    merged_edges: List[List[Any]] = Field(
        default_factory=list, description="[u, v, weight, label] rows"
    )
    trees: List[List[List[int]]] = Field(
        default_factory=list, description="Per tree, its [u, v] edges in Kruskal order"
    )
    component_count: int = 0
    traversal: str = ""


class AnswerRecord(BaseModel):
    question_id: str
    method: Method
    question: str
    answer: str
    context: str = ""
    prompt: str
    transcript_id: str
    retrieved: List[str] = Field(
        default_factory=list, description="Chunk ids (TC) or seed node ids (KG)"
    )
    trace: Optional[KgTrace] = None

    @model_validator(mode="after")
    def check_context(self) -> "AnswerRecord":
        if (self.method is Method.VN) != (not self.context):
            raise ValueError("context must be empty exactly when the method is VN")
        return self


@dataclass(frozen=True)
class KgRetrieval:
    seeds: SeedSet
    subgraph: Subgraph
    merged: UndirectedMergedGraph
    forest: SpanningForest
    traversal: str
    context: str

    def to_trace(self) -> KgTrace:
        return KgTrace(
            seeds=self.seeds.candidates,
            subgraph_nodes=sorted(self.subgraph.node_ids),
            subgraph_edges=[
                [e.head, e.relation.value, e.tail, e.weight] for e in self.subgraph.edges
            ],
            merged_edges=[[e.u, e.v, e.weight, e.label] for e in self.merged.edges.values()],
            trees=[[[e.u, e.v] for e in tree.edges] for tree in self.forest.trees],
            component_count=self.forest.component_count,
            traversal=self.traversal,
        )


def _context_prompt(instruction: str, context: str, question: str) -> str:
    return f"{instruction}\n\nContext:\n{context}\n\nQuestion: {question}\nAnswer:"


def _room_for_context(instruction: str, question: str, cfg: RetrievalConfig) -> int:
    overhead = len(_context_prompt(instruction, "", question))
    room = min(cfg.context_budget, cfg.prompt_budget - overhead)
    if room <= 0:
        raise InputError(
            f"question leaves no room for context within the {cfg.prompt_budget}-character prompt budget"
        )
    return room


def _ask(llm: ChatClient, prompt: str, question_id: str) -> ChatResponse:
    try:
        return llm.ask(prompt)
    except TransportError as e:
        raise TransportError(
            f"answering {question_id}: {e}",
            retry_safe=e.retry_safe,
            status_code=e.status_code,
            details={**e.details, "question_id": question_id},
        ) from e


def _require_question(question: str) -> None:
    if not question or not question.strip():
        raise InputError("question must be non-empty")


def render_vanilla_prompt(
    question: str, few_shots: Sequence[FewShot], cfg: RetrievalConfig
) -> str:
    """Few-shot header plus the question; examples are dropped from the end to fit."""
    instruction = load_template("answer_vanilla")
    shots = list(few_shots)
    while True:
        examples = "".join(f"Question: {s.question}\nAnswer: {s.answer}\n\n" for s in shots)
        prompt = f"{instruction}\n\n{examples}Question: {question}\nAnswer:"
        if len(prompt) <= cfg.prompt_budget:
            return prompt
        if not shots:
            raise InputError(
                f"question does not fit the {cfg.prompt_budget}-character prompt budget"
            )
        shots.pop()


def answer_vanilla(
    question_id: str,
    question: str,
    llm: ChatClient,
    few_shots: Sequence[FewShot] = (),
    cfg: Optional[RetrievalConfig] = None,
) -> AnswerRecord:
    _require_question(question)
    prompt = render_vanilla_prompt(question, few_shots, cfg or RetrievalConfig())
    response = _ask(llm, prompt, question_id)
    return AnswerRecord(
        question_id=question_id,
        method=Method.VN,
        question=question,
        answer=response.text.strip(),
        prompt=prompt,
        transcript_id=response.transcript_id,
    )


def retrieve_chunks(
    question: str,
    chunk_index: VectorIndex,
    provider: EmbeddingProvider,
    cfg: RetrievalConfig,
    room: int,
) -> List[ScoredCandidate]:
    """Top chunks in score order, keeping only those that fit in ``room``."""
    candidates = chunk_index.top_k(embed(question, provider), cfg.k_chunks)
    kept: List[ScoredCandidate] = []
    size = 0
    for candidate in candidates:
        extra = len(chunk_index.text_of(candidate.target)) + (2 if kept else 0)
        if kept and size + extra > room:
            break
        kept.append(candidate)
        size += extra
    return kept


def answer_text_chunk(
    question_id: str,
    question: str,
    chunk_index: VectorIndex,
    provider: EmbeddingProvider,
    cfg: RetrievalConfig,
    llm: ChatClient,
) -> AnswerRecord:
    """
    Answer from the top ``k_chunks`` text chunks.

    Chunks that do not fit the context budget are dropped from the tail of the
    ranking; how many were dropped is logged at debug level.
    """
    _require_question(question)
    instruction = load_template("answer_text_chunk")
    room = _room_for_context(instruction, question, cfg)
    chunks = retrieve_chunks(question, chunk_index, provider, cfg, room)
    wanted = min(cfg.k_chunks, len(chunk_index.ids))
    if len(chunks) < wanted:
        logger.debug(
            f"{question_id}: {wanted - len(chunks)} of {wanted} chunk(s) dropped "
            f"by the {room}-character context budget"
        )
    # a single oversized chunk is cut rather than dropped
    context = "\n\n".join(chunk_index.text_of(c.target) for c in chunks)[:room]
    prompt = _context_prompt(instruction, context, question)
    response = _ask(llm, prompt, question_id)
    return AnswerRecord(
        question_id=question_id,
        method=Method.TC,
        question=question,
        answer=response.text.strip(),
        context=context,
        prompt=prompt,
        transcript_id=response.transcript_id,
        retrieved=[str(c.target) for c in chunks],
    )


def retrieve_kg_context(
    question: str,
    kg: KnowledgeGraph,
    node_index: VectorIndex,
    provider: EmbeddingProvider,
    hierarchy: Optional[CommunityHierarchy],
    cfg: RetrievalConfig,
    budget: Optional[int] = None,
) -> KgRetrieval:
    """
    Run KG retrieval without calling the LLM.

    Raises:
        GraphError: If no seed node is found
    """
    seeds = top_k_seeds(question, node_index, provider, cfg.k_seeds)
    if not len(seeds):
        raise GraphError("no seed nodes for the question")
    subgraph = expand_m_hop(kg, seeds, cfg.m_hops)
    merged = to_undirected(subgraph)
    forest = spanning_forest(merged)
    traversal = traverse_to_text(forest)
    context = assemble_context(
        traversal,
        hierarchy,
        budget if budget is not None else cfg.context_budget,
        focus_nodes=subgraph.node_ids,
    )
    if not context:
        # isolated seeds and no summaries: fall back to naming the seeds
        context = "\n".join(kg.nodes[n].surface for n in seeds.node_ids)
    return KgRetrieval(seeds, subgraph, merged, forest, traversal, context)


def answer_kg(
    question_id: str,
    question: str,
    kg: KnowledgeGraph,
    node_index: VectorIndex,
    provider: EmbeddingProvider,
    hierarchy: Optional[CommunityHierarchy],
    cfg: RetrievalConfig,
    llm: ChatClient,
) -> AnswerRecord:
    _require_question(question)
    instruction = load_template("answer_kg")
    room = _room_for_context(instruction, question, cfg)
    retrieval = retrieve_kg_context(
        question, kg, node_index, provider, hierarchy, cfg, budget=room
    )
    context = retrieval.context[:room]
    prompt = _context_prompt(instruction, context, question)
    response = _ask(llm, prompt, question_id)
    logger.debug(
        f"{question_id}: {len(retrieval.seeds)} seeds, "
        f"{len(retrieval.subgraph.node_ids)} nodes, {retrieval.forest.component_count} trees"
    )
    return AnswerRecord(
        question_id=question_id,
        method=Method.KG,
        question=question,
        answer=response.text.strip(),
        context=context,
        prompt=prompt,
        transcript_id=response.transcript_id,
        retrieved=[str(n) for n in retrieval.seeds.node_ids],
        trace=retrieval.to_trace(),
    )


def _artifact(artifacts: Dict[str, Any], name: str) -> Any:
    value = artifacts.get(name)
    if value is None:
        raise MissingArtifactError(f"{name} (not loaded)")
    return value


def answer_with(
    method: Method,
    question_id: str,
    question: str,
    llm: ChatClient,
    cfg: RetrievalConfig,
    artifacts: Dict[str, Any],
) -> AnswerRecord:
    """Dispatch to one method; ``artifacts`` carries only what that method needs."""
    method = Method(method)
    if method is Method.VN:
        return answer_vanilla(question_id, question, llm, artifacts.get("few_shots", ()), cfg)
    if method is Method.TC:
        return answer_text_chunk(
            question_id,
            question,
            _artifact(artifacts, "chunk_index"),
            _artifact(artifacts, "provider"),
            cfg,
            llm,
        )
    return answer_kg(
        question_id,
        question,
        _artifact(artifacts, "kg"),
        _artifact(artifacts, "node_index"),
        _artifact(artifacts, "provider"),
        artifacts.get("hierarchy"),
        cfg,
        llm,
    )
