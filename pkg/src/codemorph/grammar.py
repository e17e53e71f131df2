"""Grammar resource tables and where to find them.

Keyword/operator tables and the search symbol-name table ship as JSON
resources inside the package. Setting CODEMORPH_GRAMMAR_DIR (or passing
an explicit directory) points the loader at replacement files; a missing
or unreadable table then raises GrammarUnavailable instead of silently
falling back.
"""

from __future__ import annotations

import json
import os
from functools import lru_cache
from importlib import resources
from pathlib import Path

from codemorph.errors import GrammarUnavailable

GRAMMAR_DIR_ENV = "CODEMORPH_GRAMMAR_DIR"


def grammar_dir() -> Path | None:
    value = os.environ.get(GRAMMAR_DIR_ENV)
    return Path(value) if value else None


@lru_cache(maxsize=None)
def _load(name: str, override_dir: str | None) -> dict:
    if override_dir is not None:
        path = Path(override_dir) / name
        if not path.is_file():
            raise GrammarUnavailable(f"{name} not found under {override_dir}")
        try:
            return json.loads(path.read_text("utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise GrammarUnavailable(f"cannot load {path}: {exc}") from None
    try:
        return json.loads(resources.files("codemorph.resources").joinpath(name).read_text("utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise GrammarUnavailable(f"cannot load bundled resource {name}: {exc}") from None


def load_table(name: str, directory: Path | None = None) -> dict:
    """Load a grammar table by file name, honouring the override dir."""
    override = directory or grammar_dir()
    return _load(name, str(override) if override else None)


def java_grammar() -> dict:
    return load_table("java_grammar.json")


def symbol_names() -> dict[str, str]:
    return load_table("symbol_names.json")["symbols"]
