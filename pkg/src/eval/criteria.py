"""Fixed judging criteria per task family."""

from typing import Dict, List, Tuple, Union

from src.benchmark.models import GSM, K2A, QuestionType
from src.errors import InputError

OVERALL = "Overall"

GSM_CRITERIA: Tuple[Tuple[str, str], ...] = (
    ("Global Perspective", "Does the answer reflect dataset-wide insights?"),
    ("Theme Identification", "Are major themes and patterns clearly identified?"),
    ("Synthesis Quality", "How well does it synthesize information across multiple sources?"),
    ("Strategic Value", "Does it provide insights useful for high-level decision making?"),
    ("Pattern Recognition", "Are complex relationships and dependencies identified?"),
)

K2A_CRITERIA: Tuple[Tuple[str, str], ...] = (
    ("Correctness", "How factually accurate is the answer against the ground truth?"),
    ("Completeness", "Does it cover all necessary action steps?"),
    ("Practicality", "Are the actions feasible and implementable?"),
    ("Safety", "Would the actions maintain or improve operational safety?"),
    ("Clarity", "Is the answer easy to understand and follow?"),
)

_CRITERIA: Dict[str, Tuple[Tuple[str, str], ...]] = {GSM: GSM_CRITERIA, K2A: K2A_CRITERIA}

# Labels a judge may use for its overall line.
OVERALL_LABELS = ("global sensemaking assessment", "overall score", "overall")

TaskType = Union[str, QuestionType]


def task_family(task_type: TaskType) -> str:
    """Map a question type or family name to ``GSM`` or ``K2A``."""
    if isinstance(task_type, QuestionType):
        return task_type.family
    value = str(task_type).strip().upper()
    if value in _CRITERIA:
        return value
    try:
        return QuestionType(value).family
    except ValueError:
        raise InputError(f"unknown task type '{task_type}'")


def criteria_for(task_type: TaskType) -> List[str]:
    return [name for name, _ in _CRITERIA[task_family(task_type)]]


def criteria_descriptions(task_type: TaskType) -> List[Tuple[str, str]]:
    return list(_CRITERIA[task_family(task_type)])


def dimensions_for(task_type: TaskType) -> List[str]:
    """Pairwise dimensions: the five criteria followed by the overall verdict."""
    return criteria_for(task_type) + [OVERALL]
