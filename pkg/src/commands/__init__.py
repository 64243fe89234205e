from .ask import ask_command
from .benchmark import gen_benchmark_command, run_benchmark_command
from .build_kg import build_kg_command, kg_stats_command
from .evaluate import judge_command, report_command
from .fixture import make_fixture_command
from .index import index_command

__all__ = [
    "ask_command",
    "build_kg_command",
    "gen_benchmark_command",
    "index_command",
    "judge_command",
    "kg_stats_command",
    "make_fixture_command",
    "report_command",
    "run_benchmark_command",
]
