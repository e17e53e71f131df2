"""Preservation verification for transform outcomes.

Checks that transformed text still parses cleanly and summarizes the
token-level diff against the original. An optional external command
(e.g. a syntax checker) can be hooked in; its exit status lands in the
report notes rather than raising.
"""

from __future__ import annotations

import difflib
import shlex
import subprocess
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from codemorph.lang import Language, SourceSnippet
from codemorph.parse import parse, parse_text
from codemorph.strategies.base import TransformOutcome
from codemorph.tree import has_errors, tokens_dfs


@dataclass(frozen=True)
class TokenDelta:
    added: int = 0
    removed: int = 0
    changed: int = 0


@dataclass(frozen=True)
class VerificationReport:
    parse_valid: bool
    token_delta: TokenDelta
    notes: tuple[str, ...] = ()


def token_delta(before: list[str], after: list[str]) -> TokenDelta:
    """Summarize a token diff: equal-length replacements count as changed,
    surplus length as added/removed."""
    matcher = difflib.SequenceMatcher(a=before, b=after, autojunk=False)
    added = removed = changed = 0
    for op, i1, i2, j1, j2 in matcher.get_opcodes():
        if op == "insert":
            added += j2 - j1
        elif op == "delete":
            removed += i2 - i1
        elif op == "replace":
            n_before, n_after = i2 - i1, j2 - j1
            changed += min(n_before, n_after)
            if n_after > n_before:
                added += n_after - n_before
            else:
                removed += n_before - n_after
    return TokenDelta(added=added, removed=removed, changed=changed)


def verify_preservation(original: SourceSnippet, outcome: TransformOutcome,
                        include_comments: bool = True,
                        verify_cmd: str | None = None) -> VerificationReport:
    if not outcome.applied or outcome.new_text is None:
        raise ValueError("verification requires an Applied outcome")
    notes: list[str] = []
    before_tree = parse(original)
    after_tree = parse_text(outcome.new_text, original.language, f"{original.id}#verify")
    parse_valid = not has_errors(after_tree)
    before_tokens = tokens_dfs(before_tree, include_comments=include_comments).texts()
    after_tokens = tokens_dfs(after_tree, include_comments=include_comments).texts()
    delta = token_delta(before_tokens, after_tokens)
    if verify_cmd:
        suffix = ".java" if original.language is Language.JAVA else ".py"
        with tempfile.NamedTemporaryFile(suffix=suffix, delete=False) as handle:
            handle.write(outcome.new_text)
            path = Path(handle.name)
        try:
            parts = shlex.split(verify_cmd)
            if any("{file}" in part for part in parts):
                argv = [part.replace("{file}", str(path)) for part in parts]
            else:
                argv = parts + [str(path)]
            proc = subprocess.run(argv, capture_output=True, timeout=60)
            notes.append(f"verify_cmd exit={proc.returncode}")
            if proc.returncode != 0:
                notes.append(proc.stderr.decode("utf-8", "replace")[:500])
        except (OSError, subprocess.TimeoutExpired) as exc:
            notes.append(f"verify_cmd failed to run: {exc}")
        finally:
            path.unlink(missing_ok=True)
    return VerificationReport(parse_valid=parse_valid, token_delta=delta, notes=tuple(notes))
