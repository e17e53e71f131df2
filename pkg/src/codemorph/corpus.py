"""JSONL corpus ingestion, transformable-subset filtering, long-sequence
splitting and the code-search token preprocessing."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from codemorph.errors import LanguageMismatch, MalformedLine
from codemorph.grammar import symbol_names
from codemorph.lang import Language, SourceSnippet
from codemorph.parse import parse
from codemorph.strategies import Category, Strategy, is_applicable, list_strategies
from codemorph.tree import has_errors, tokens_dfs

log = logging.getLogger(__name__)

SYMBOL_CHARS = frozenset("+-*/%=<>!~&|^?:;,.()[]{}@#$\\'\"`")


@dataclass(frozen=True)
class CorpusRecord:
    id: str
    language: Language
    code: str
    summary: str | None = None
    meta: dict = field(default_factory=dict)

    def snippet(self) -> SourceSnippet:
        return SourceSnippet(self.id, self.language, self.code.encode("utf-8"))

    def to_json(self) -> dict:
        out = {"id": self.id, "language": self.language.value, "code": self.code}
        if self.summary is not None:
            out["docstring"] = self.summary
        out.update({k: v for k, v in self.meta.items() if k not in out})
        return out


def record_from_json(obj: dict, line_no: int, default_language: Language | None = None) -> CorpusRecord:
    if "code" not in obj or not obj["code"]:
        raise MalformedLine(line_no, "missing or empty 'code' field")
    lang_name = obj.get("language")
    if lang_name is None:
        if default_language is None:
            raise MalformedLine(line_no, "missing 'language' field")
        language = default_language
    else:
        try:
            language = Language.parse(str(lang_name))
        except ValueError as exc:
            raise MalformedLine(line_no, str(exc)) from None
    rec_id = str(obj.get("id", line_no))
    meta = {k: v for k, v in obj.items() if k not in ("id", "language", "code", "docstring")}
    return CorpusRecord(id=rec_id, language=language, code=obj["code"],
                        summary=obj.get("docstring"), meta=meta)


def load_corpus(path: str | Path, strict: bool = False,
                default_language: Language | None = None) -> Iterator[CorpusRecord]:
    """Yield records in file order; malformed lines are logged and skipped
    unless strict, in which case they raise MalformedLine."""
    path = Path(path)
    with path.open("r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                if not isinstance(obj, dict):
                    raise MalformedLine(line_no, "line is not a JSON object")
                yield record_from_json(obj, line_no, default_language)
            except MalformedLine:
                if strict:
                    raise
                log.warning("skipping malformed line %d in %s", line_no, path)
            except json.JSONDecodeError as exc:
                if strict:
                    raise MalformedLine(line_no, f"invalid JSON: {exc.msg}") from None
                log.warning("skipping unparseable line %d in %s", line_no, path)


def write_corpus(records: Iterable[CorpusRecord], path: str | Path) -> int:
    path = Path(path)
    count = 0
    with path.open("w", encoding="utf-8") as handle:
        for record in records:
            handle.write(json.dumps(record.to_json(), ensure_ascii=False) + "\n")
            count += 1
    return count


@dataclass
class FilterStats:
    total: int = 0
    kept: int = 0
    parse_errors: int = 0
    per_strategy: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"total": self.total, "kept": self.kept,
                "parse_errors": self.parse_errors, "per_strategy": self.per_strategy}


def _eligible(selector: Strategy | Category | str, language: Language) -> list[Strategy]:
    if isinstance(selector, Strategy):
        return [selector] if selector.supports(language) else []
    if isinstance(selector, Category):
        return list_strategies(language=language, category=selector)
    try:
        return _eligible(Category.parse(selector), language)
    except ValueError:
        from codemorph.strategies import get_strategy
        return _eligible(get_strategy(selector), language)


def filter_transformable(records: Iterable[CorpusRecord],
                         selector: Strategy | Category | str,
                         language: Language) -> tuple[list[CorpusRecord], FilterStats]:
    """Records where at least one eligible strategy applies; the evaluation
    subset the metric deltas are computed on."""
    stats = FilterStats()
    kept: list[CorpusRecord] = []
    strategies = _eligible(selector, language)
    for record in records:
        stats.total += 1
        if record.language is not language:
            continue
        snippet = record.snippet()
        if has_errors(parse(snippet)):
            stats.parse_errors += 1
            continue
        hit = False
        for strategy in strategies:
            try:
                result = is_applicable(strategy, snippet)
            except LanguageMismatch:
                continue
            if result.applicable:
                stats.per_strategy[strategy.id] = stats.per_strategy.get(strategy.id, 0) + 1
                hit = True
        if hit:
            stats.kept += 1
            kept.append(record)
    return kept, stats


def split_long(record: CorpusRecord, max_len: int = 500) -> list[CorpusRecord]:
    """Partition the DFS token sequence into chunks of at most max_len
    tokens. Chunked records carry space-joined token text (a model-input
    view, not re-parseable source) plus the raw tokens in meta."""
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    tokens = tokens_dfs(parse(record.snippet())).texts()
    if len(tokens) <= max_len:
        return [record]
    out = []
    for k, start in enumerate(range(0, len(tokens), max_len)):
        chunk = tokens[start:start + max_len]
        meta = dict(record.meta)
        meta["tokens"] = chunk
        meta["chunk"] = k
        out.append(CorpusRecord(id=f"{record.id}#{k}", language=record.language,
                                code=" ".join(chunk), summary=record.summary, meta=meta))
    return out


class SymbolNameTable:
    """Maps operator/punctuation tokens to English words. Total over all
    single-character symbols; unlisted multi-character symbol tokens fall
    back to concatenated single-character names."""

    def __init__(self, mapping: dict[str, str] | None = None):
        self.mapping = dict(mapping if mapping is not None else symbol_names())

    def is_symbol_token(self, token: str) -> bool:
        return bool(token) and all(ch in SYMBOL_CHARS for ch in token)

    def name_of(self, token: str) -> str:
        if token in self.mapping:
            return self.mapping[token]
        return "".join(self.mapping.get(ch, "symbol") for ch in token)


def preprocess_for_search(record: CorpusRecord, table: SymbolNameTable | None = None) -> list[str]:
    """DFS tokens with non-ASCII tokens dropped and symbols renamed; the
    result is idempotent under re-application."""
    table = table or SymbolNameTable()
    tokens = tokens_dfs(parse(record.snippet()), include_comments=False).texts()
    out = []
    for token in tokens:
        if not token.isascii():
            continue
        if table.is_symbol_token(token):
            out.append(table.name_of(token))
        else:
            out.append(token)
    return out
