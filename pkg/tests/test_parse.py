"""Concrete-tree parsing: error flagging, node shapes, token order and the
byte-level round-trip guarantee on the committed corpora."""

from __future__ import annotations

import pytest

from codemorph.errors import GrammarUnavailable
from codemorph.grammar import _load
from codemorph.lang import Language, SourceSnippet
from codemorph.parse import parse, parse_text
from codemorph.tree import has_errors, tokens_dfs

JAVA = Language.JAVA
PY = Language.PYTHON


def test_wellformed_python_has_no_errors():
    assert not has_errors(parse_text("x = 1", PY))


def test_malformed_python_flags_errors():
    assert has_errors(parse_text("def f(:", PY))


def test_wellformed_java_method_has_no_errors():
    tree = parse_text("class A { void m() { int i = 0; } }", JAVA)
    assert not has_errors(tree)


def test_malformed_java_flags_errors_not_raises():
    tree = parse_text("void bad( {", JAVA)
    assert has_errors(tree)


def test_method_body_contains_expected_statement_kinds():
    # a loop-plus-branch method must surface for/if statement nodes
    code = """
int total(int[] xs) {
    int acc = 0;
    for (int i = 0; i < xs.length; i++) {
        if (xs[i] > 0) {
            acc += xs[i];
        }
    }
    return acc;
}
"""
    tree = parse_text(code, JAVA)
    assert not has_errors(tree)
    kinds = {n.kind for n in tree.root.walk()}
    assert "for_statement" in kinds
    assert "if_statement" in kinds
    for_node = tree.root.find_all("for_statement")[0]
    assert any(n.kind == "if_statement" for n in for_node.walk() if n is not for_node)


def test_tokens_dfs_simple_statement():
    tree = parse_text("x = 1", PY)
    assert tokens_dfs(tree).texts() == ["x", "=", "1"]


def test_tokens_dfs_java_if_prefix():
    tree = parse_text("void m() { if (a) b(); }", JAVA)
    texts = tokens_dfs(tree).texts()
    idx = texts.index("if")
    assert texts[idx:idx + 4] == ["if", "(", "a", ")"]


def test_tokens_dfs_empty_bodies():
    java = tokens_dfs(parse_text("void f() {}", JAVA)).texts()
    assert java == ["void", "f", "(", ")", "{", "}"]
    py = tokens_dfs(parse_text("def f():\n    pass\n", PY)).texts()
    assert py == ["def", "f", "(", ")", ":", "pass"]


def test_tokens_code_only_drops_comments():
    tree = parse_text("x = 1  # note\n", PY)
    assert tokens_dfs(tree).texts() == ["x", "=", "1", "# note"]
    assert tokens_dfs(tree, include_comments=False).texts() == ["x", "=", "1"]


def test_comment_spliced_into_java_tree():
    tree = parse_text("void f() {\n    // hello\n    s();\n}", JAVA)
    assert not has_errors(tree)
    assert any(n.kind == "line_comment" for n in tree.root.walk())


def _roundtrip_ok(snippet: SourceSnippet) -> bool:
    """Leaf spans in DFS order, ascending, whitespace-only gaps."""
    tree = parse(snippet)
    prev = 0
    for leaf in tree.root.leaves():
        if leaf.start == leaf.end:
            continue
        if leaf.start < prev:
            return False
        if tree.source[prev:leaf.start].strip():
            return False
        prev = leaf.end
    return not tree.source[prev:].strip()


def test_roundtrip_on_java_corpus(java_corpus):
    bad = [s.id for s in java_corpus if has_errors(parse(s)) or not _roundtrip_ok(s)]
    assert bad == []


def test_roundtrip_on_python_corpus(python_corpus):
    bad = [s.id for s in python_corpus if has_errors(parse(s)) or not _roundtrip_ok(s)]
    assert bad == []


def test_span_nesting_invariant(python_corpus, java_corpus):
    for snippet in (python_corpus[:50] + java_corpus[:50]):
        tree = parse(snippet)
        for node in tree.root.walk():
            prev_end = node.start
            for child in node.children:
                assert node.start <= child.start <= child.end <= node.end
                assert child.start >= prev_end  # ordered, non-overlapping siblings
                prev_end = child.end


def test_parse_is_pure(java_corpus):
    snippet = java_corpus[0]
    a = tokens_dfs(parse(snippet)).texts()
    b = tokens_dfs(parse(SourceSnippet("other-id", JAVA, snippet.text))).texts()
    assert a == b


def test_grammar_dir_override_missing_raises(tmp_path):
    _load.cache_clear()
    with pytest.raises(GrammarUnavailable):
        _load("java_grammar.json", str(tmp_path))
    _load.cache_clear()
