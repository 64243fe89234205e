"""Prompt templates stored as text files next to this module."""

import re
from functools import lru_cache
from pathlib import Path
from typing import Any

PROMPTS_DIR = Path(__file__).parent / "prompts"

_PLACEHOLDER = re.compile(r"\{([a-z_]+)\}")


@lru_cache(maxsize=None)
def load_template(name: str) -> str:
    """
    Read a prompt template by name (file stem under ``prompts/``).

    Raises:
        FileNotFoundError: If the template does not exist
    """
    template_path = PROMPTS_DIR / f"{name}.txt"
    try:
        return template_path.read_text(encoding="utf-8").rstrip("\n")
    except FileNotFoundError:
        raise FileNotFoundError(
            f"Prompt template '{name}' not found at {template_path}."
        )


def render_template(template: str, **values: Any) -> str:
    """
    Substitute ``{name}`` placeholders in a single pass.

    Substituted text is never re-scanned, so record text containing braces is
    inserted verbatim. Placeholders without a value are left untouched.
    """

    def substitute(match: re.Match) -> str:
        key = match.group(1)
        if key not in values:
            return match.group(0)
        return str(values[key])

    return _PLACEHOLDER.sub(substitute, template)


def render(name: str, **values: Any) -> str:
    """Load and render a named template."""
    return render_template(load_template(name), **values)
