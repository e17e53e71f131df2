import json
import sys
from pathlib import Path

import pytest

# make sibling test helpers (oracles.py) importable
sys.path.insert(0, str(Path(__file__).resolve().parent))

from codemorph.lang import Language, SourceSnippet  # noqa: E402

DATA_DIR = Path(__file__).resolve().parent / "data"


def load_snippets(name: str, language: Language) -> list[SourceSnippet]:
    out = []
    with (DATA_DIR / name).open() as handle:
        for line in handle:
            obj = json.loads(line)
            out.append(SourceSnippet(obj["id"], language, obj["code"]))
    return out


@pytest.fixture(scope="session")
def java_corpus() -> list[SourceSnippet]:
    return load_snippets("sample_java.jsonl", Language.JAVA)


@pytest.fixture(scope="session")
def python_corpus() -> list[SourceSnippet]:
    return load_snippets("sample_python.jsonl", Language.PYTHON)


def normalize_ws(text: str | bytes) -> str:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    return " ".join(text.split())
