"""Parse dispatch and the shared tree cache.

Trees are immutable once built, so a process-wide LRU keyed on
(language, text) lets the engine re-use one parse across the 25+
strategies probing the same snippet.
"""

from __future__ import annotations

from functools import lru_cache

from codemorph.errors import InvalidEncoding
from codemorph.java_parser import parse_java
from codemorph.lang import Language, SourceSnippet
from codemorph.py_parser import parse_python
from codemorph.tree import SyntaxTree


@lru_cache(maxsize=4096)
def _parse_cached(language: Language, source: bytes) -> SyntaxTree:
    if language is Language.JAVA:
        root = parse_java(source)
    elif language is Language.PYTHON:
        root = parse_python(source)
    else:  # pragma: no cover - enum is closed
        raise ValueError(f"unsupported language {language}")
    return SyntaxTree(root=root, source=source, language=language)


def parse(snippet: SourceSnippet) -> SyntaxTree:
    """Parse a snippet into a concrete tree; never raises on bad syntax
    (error spans are flagged in the tree), only on bad encoding."""
    try:
        snippet.text.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InvalidEncoding(str(exc)) from None
    return _parse_cached(snippet.language, snippet.text)


def parse_text(text: str | bytes, language: Language, snippet_id: str = "<adhoc>") -> SyntaxTree:
    return parse(SourceSnippet(snippet_id, language, text if isinstance(text, bytes) else text.encode("utf-8")))
