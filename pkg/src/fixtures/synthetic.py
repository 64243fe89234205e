"""
Deterministic synthetic aviation-maintenance corpus.

Each record is built from a handful of slots (aircraft, component, cause,
effect, phase of flight, maintainer) and carries the gold triplets that the
slots imply, so extraction quality can be measured against it. Problem-action
pairs are phrased so that no gold action appears verbatim in any record.
"""

import random
from datetime import date, timedelta
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, Field

from src.benchmark.generation import ProblemAction, gen_k2a_questions
from src.benchmark.models import Benchmark, QaItem, QuestionType, make_manifest, save_benchmark
from src.kg.corpus import CorpusRecord, write_corpus
from src.kg.models import RelationType
from src.kg.quality import GoldTriple
from src.logger import get_logger
from src.utils import atomic_write_text

logger = get_logger()

CORPUS_FILE = "corpus.jsonl"
GOLD_FILE = "gold_triples.jsonl"
PAIRS_FILE = "problem_actions.jsonl"
BENCHMARK_FILE = "benchmark.json"

AIRCRAFT = ("CESSNA 172", "PIPER PA-28", "BEECH BONANZA", "CIRRUS SR22", "MOONEY M20")

# component -> system it belongs to
COMPONENTS: Tuple[Tuple[str, str], ...] = (
    ("FUEL PUMP", "FUEL SYSTEM"),
    ("CARBURETOR", "FUEL SYSTEM"),
    ("MAGNETO", "IGNITION SYSTEM"),
    ("NOSE GEAR", "LANDING GEAR"),
    ("MAIN GEAR STRUT", "LANDING GEAR"),
    ("ALTERNATOR", "ELECTRICAL SYSTEM"),
    ("BATTERY", "ELECTRICAL SYSTEM"),
    ("CYLINDER", "ENGINE"),
    ("OIL LINE", "ENGINE"),
)

CAUSES = ("CORROSION", "FATIGUE CRACK", "IMPROPER MAINTENANCE", "ICING", "WORN BEARING")
EFFECTS = ("LOSS OF POWER", "ROUGH RUNNING", "GEAR COLLAPSE", "ELECTRICAL FAILURE", "OIL LEAK")
PHASES = ("TAKEOFF", "CRUISE", "LANDING", "TAXI")
MAINTAINERS = ("MECHANIC", "REPAIR STATION", "OWNER")

FOLLOW_UP = {
    "FUEL SYSTEM": "run a fuel system leak check before the next flight",
    "IGNITION SYSTEM": "perform an engine run-up and magneto drop check",
    "LANDING GEAR": "perform a gear swing test on jacks",
    "ELECTRICAL SYSTEM": "verify the charging system output under load",
    "ENGINE": "perform a differential compression test",
}

GSM_QUESTIONS: Tuple[Tuple[QuestionType, str], ...] = (
    (
        QuestionType.GSM_COMPREHENSIVE,
        "What recurring failure modes emerge across aircraft types, and how might "
        "they inform proactive maintenance scheduling?",
    ),
    (
        QuestionType.GSM_CONTEXT,
        "How do fuel system problems vary across the phases of flight in which they occur?",
    ),
    (
        QuestionType.GSM_CATEGORY,
        "Which causes are most commonly associated with landing gear failures?",
    ),
    (
        QuestionType.GSM_COMPREHENSIVE,
        "Which systems account for most of the reported loss of power events?",
    ),
    (
        QuestionType.GSM_CATEGORY,
        "What maintenance practices are linked to repeated electrical system problems?",
    ),
)

START_DATE = date(2019, 1, 1)
DATE_SPAN_DAYS = 4 * 365


class Fixture(BaseModel):
    records: List[CorpusRecord] = Field(default_factory=list)
    gold: List[GoldTriple] = Field(default_factory=list)
    pairs: List[ProblemAction] = Field(default_factory=list)

    def gold_by_record(self) -> Dict[str, List[GoldTriple]]:
        grouped: Dict[str, List[GoldTriple]] = {}
        for triple in self.gold:
            grouped.setdefault(triple.record_id, []).append(triple)
        return grouped


def record_triples(
    record_id: str,
    aircraft: str,
    component: str,
    system: str,
    cause: str,
    effect: str,
    phase: str,
    maintainer: str,
) -> List[GoldTriple]:
    rows = (
        (component, RelationType.PART_OF, system),
        (component, RelationType.USED_BY, aircraft),
        (effect, RelationType.HAS_CAUSE, cause),
        (effect, RelationType.INFLUENCED_BY, component),
        (effect, RelationType.TIME_PERIOD, phase),
        (component, RelationType.MAINTAINED_BY, maintainer),
    )
    return [
        GoldTriple(record_id=record_id, head=head, relation=relation, tail=tail)
        for head, relation, tail in rows
    ]


def make_record(index: int, rng: random.Random) -> Tuple[CorpusRecord, List[GoldTriple]]:
    aircraft = rng.choice(AIRCRAFT)
    component, system = rng.choice(COMPONENTS)
    cause = rng.choice(CAUSES)
    effect = rng.choice(EFFECTS)
    phase = rng.choice(PHASES)
    maintainer = rng.choice(MAINTAINERS)
    when = START_DATE + timedelta(days=rng.randrange(DATE_SPAN_DAYS))

    record_id = f"R{index:04d}"
    text = (
        f"{aircraft} HAD {effect} DURING {phase}. "
        f"{component} OF THE {system} FAILED DUE TO {cause}. "
        f"{component} REPLACED BY {maintainer}."
    )
    record = CorpusRecord(id=record_id, text=text, date=when.isoformat())
    triples = record_triples(
        record_id, aircraft, component, system, cause, effect, phase, maintainer
    )
    return record, triples


def make_pairs(count: int) -> List[ProblemAction]:
    """Problem-action pairs over component x cause, in a fixed order."""
    pairs: List[ProblemAction] = []
    for cause in CAUSES:
        for component, system in COMPONENTS:
            if len(pairs) == count:
                return pairs
            pairs.append(
                ProblemAction(
                    id=f"P{len(pairs) + 1:03d}",
                    problem=f"{cause.lower()} is found on the {component.lower()} during inspection",
                    action=f"Replace the {component.lower()} and {FOLLOW_UP[system]}.",
                )
            )
    return pairs


def make_fixture(n_records: int = 100, n_pairs: int = 10, seed: int = 0) -> Fixture:
    """Generate ``n_records`` records with their gold triplets and ``n_pairs`` pairs."""
    rng = random.Random(seed)
    fixture = Fixture(pairs=make_pairs(n_pairs))
    for index in range(1, n_records + 1):
        record, triples = make_record(index, rng)
        fixture.records.append(record)
        fixture.gold.extend(triples)
    return fixture


def make_fixture_benchmark(
    pairs: List[ProblemAction], n_gsm: int = 5, n_k2a: int = 5, seed: int = 0
) -> Benchmark:
    """A small benchmark with canned GSM questions and templated K2A items."""
    gsm_items = [
        QaItem(id=f"GSM-FIX-{i + 1:02d}", qtype=qtype, question=question, source="fixture")
        for i, (qtype, question) in enumerate(GSM_QUESTIONS[:n_gsm])
    ]
    items = gsm_items + gen_k2a_questions(pairs[:n_k2a])
    return Benchmark(manifest=make_manifest(items, seed=seed), items=items)


def write_fixture(
    fixture: Fixture, out_dir: Union[str, Path], benchmark: Optional[Benchmark] = None
) -> Dict[str, Path]:
    """Write corpus, gold triplets, pairs and optionally a benchmark into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "corpus": write_corpus(fixture.records, out / CORPUS_FILE),
        "gold": atomic_write_text(
            out / GOLD_FILE,
            "".join(t.model_dump_json() + "\n" for t in fixture.gold),
        ),
        "pairs": atomic_write_text(
            out / PAIRS_FILE,
            "".join(p.model_dump_json(exclude_none=True) + "\n" for p in fixture.pairs),
        ),
    }
    if benchmark is not None:
        paths["benchmark"] = save_benchmark(benchmark, out / BENCHMARK_FILE)
    logger.info(
        f"Wrote fixture with {len(fixture.records)} records and {len(fixture.pairs)} pairs to {out}"
    )
    return paths
