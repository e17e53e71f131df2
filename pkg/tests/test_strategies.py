"""Strategy catalog and golden transformation fixtures."""

from __future__ import annotations

import pytest

from codemorph.errors import LanguageMismatch
from codemorph.lang import Language, SourceSnippet
from codemorph.parse import parse_text
from codemorph.strategies import (
    Category,
    InsertLocation,
    TransformConfig,
    apply,
    is_applicable,
    list_strategies,
)
from codemorph.tree import tokens_dfs

JAVA = Language.JAVA
PY = Language.PYTHON


def snip(code: str, language=JAVA) -> SourceSnippet:
    return SourceSnippet("fixture", language, code)


def applied_text(sid: str, code: str, language=JAVA, **cfg) -> str:
    outcome = apply(sid, snip(code, language), TransformConfig(**cfg))
    assert outcome.applied, f"{sid} unexpectedly not applicable: {outcome.reason}"
    return outcome.new_text.decode()


def token_texts(code: str, language: Language) -> list[str]:
    return tokens_dfs(parse_text(code, language)).texts()


def assert_tokens_equal(sid: str, got: str, expected: str, language: Language) -> None:
    """Whitespace-normalized comparison: equality of DFS token streams."""
    assert token_texts(got, language) == token_texts(expected, language), \
        f"{sid}: {got!r} != {expected!r}"


# ------------------------------------------------------------------ catalog

def test_catalog_counts():
    assert len(list_strategies()) == 32
    assert len(list_strategies(JAVA)) == 28
    assert len(list_strategies(PY)) == 25


def test_python_exclusions():
    ids = {s.id for s in list_strategies(PY)}
    assert ids.isdisjoint({"B-2", "GS-2", "GS-3", "GS-4", "GS-8", "GS-9", "GS-10"})


def test_java_exclusions():
    ids = {s.id for s in list_strategies(JAVA)}
    assert ids.isdisjoint({"B-7", "GT-1", "GT-2", "GT-5"})


def test_category_sizes():
    sizes = {cat: len(list_strategies(category=cat)) for cat in Category}
    assert sizes == {Category.BLOCK: 7, Category.INSERT_DELETE: 7,
                     Category.GRAMMATICAL_STATEMENT: 10,
                     Category.GRAMMATICAL_TOKEN: 6, Category.IDENTIFIER: 2}


def test_ids_unique_and_well_formed():
    ids = [s.id for s in list_strategies()]
    assert len(ids) == len(set(ids))
    assert all("-" in sid for sid in ids)


def test_identifier_category_members():
    assert [s.id for s in list_strategies(category=Category.IDENTIFIER)] == ["I-1", "I-2"]


# ------------------------------------------------------------------ golden fixtures

GOLDEN = [
    # (strategy, language, before, after)
    ("B-3", JAVA,
     "if(x==1){ }else{if(x==2){ } }",
     "if (x==1) { } else if (x==2) { }"),
    ("B-4", JAVA,
     "if(x==1){ }else if (x==2) { }",
     "if (x==1) { } else { if (x==2) { } }"),
    ("B-5", JAVA,
     "if(x==0){ block1(); }else{ block2(); }",
     "if (!(x==0)) { block2(); } else { block1(); }"),
    ("B-6", JAVA,
     "if (a && b) { s(); }",
     "if (a) { if (b) { s(); } }"),
    ("GS-2", JAVA,
     "void f() {\n    int i;\n    for (i = 0; i < 10; i++) {\n        s();\n    }\n}",
     "void f() { for (int i = 0; i < 10; i++) { s(); } }"),
    ("GS-4", JAVA,
     "int i = 0;",
     "int i; i = 0;"),
    ("GS-5", JAVA, "boolean b = x < y;", "boolean b = !(x >= y);"),
    ("GS-6", JAVA, "boolean b = x < y;", "boolean b = y > x;"),
    ("GS-7", JAVA, "x += 1;", "x = x + 1;"),
    ("GS-8", JAVA, "x++;", "x = x + 1;"),
    ("GT-1", PY, "flag = True\n", "flag = 1"),
    ("ID-6", PY, "print(x)\n", "pass"),
    ("B-7", PY,
     "z = x + y\n",
     "def func_cm1(x, y): return x + y z = func_cm1(x, y)"),
    ("GS-5", PY, "if x < y:\n    pass\n", "if not (x >= y): pass"),
    ("GS-6", PY, "if x < y:\n    pass\n", "if y > x: pass"),
    ("GS-7", PY, "x += 1\n", "x = x + 1"),
    ("B-5", PY,
     "if x == 0:\n    block1()\nelse:\n    block2()\n",
     "if not (x == 0): block2() else: block1()"),
    ("B-6", PY,
     "if a and b:\n    s()\n",
     "if a: if b: s()"),
    ("B-3", PY,
     "if x == 1:\n    a()\nelse:\n    if x == 2:\n        b()\n",
     "if x == 1: a() elif x == 2: b()"),
    ("B-4", PY,
     "if x == 1:\n    a()\nelif x == 2:\n    b()\n",
     "if x == 1: a() else: if x == 2: b()"),
]


@pytest.mark.parametrize("sid,language,before,after",
                         GOLDEN, ids=[f"{g[0]}-{g[1].value}" for g in GOLDEN])
def test_golden_transformations(sid, language, before, after):
    got = applied_text(sid, before, language)
    assert normalize_ws(got) == normalize_ws(after)


def test_b1_java_golden():
    got = applied_text("B-1", "void f() {\n    for (int i = 0; i < n; i++) {\n        s();\n    }\n}")
    assert normalize_ws(got) == normalize_ws(
        "void f() { int i = 0; while (i < n) { s(); i++; } }")


def test_b1_python_golden():
    got = applied_text(
        "B-1", "def f(n):\n    for i in range(n):\n        go(i)\n", PY)
    assert normalize_ws(got) == normalize_ws(
        "def f(n): i = 0 while i < n: go(i) i += 1")


def test_b2_golden():
    got = applied_text("B-2", "void f() { while (x < y) { x++; } }")
    assert normalize_ws(got) == normalize_ws("void f() { for (; x < y;) { x++; } }")


def test_gs1_golden_java():
    got = applied_text("GS-1", "int f() {\n    return 42;\n}")
    assert normalize_ws(got) == normalize_ws("int f() { int ret1 = 42; return ret1; }")


def test_gt2_golden():
    assert applied_text("GT-2", "while 1:\n    go()\n", PY) == "while True:\n    go()\n"


def test_gt5_golden():
    got = applied_text("GT-5", "name = input()\n", PY)
    assert got == 'import sys\nname = sys.stdin.readline().rstrip("\\n")\n'


def test_gt6_java_golden():
    got = applied_text("GT-6", "void f() { System.out.println(x); }")
    assert normalize_ws(got) == normalize_ws('void f() { System.out.print(x + "\\n"); }')


def test_gt6_python_golden():
    got = applied_text("GT-6", "print(x)\n", PY)
    assert got == 'import sys\nsys.stdout.write(str(x) + "\\n")\n'


def test_i2_renames_every_occurrence():
    got = applied_text(
        "I-2", "def f(count):\n    count += 1\n    count *= 2\n    return count\n", PY)
    assert got.count("var1") == 4
    assert "count" not in got


def test_i1_renames_defs_and_calls():
    got = applied_text(
        "I-1", "def helper(x):\n    return x\n\nprint(helper(1) + helper(2))\n", PY)
    assert got.count("func1") == 3
    assert "helper" not in got


# ------------------------------------------------------------------ applicability behavior

def test_language_mismatch_raises():
    with pytest.raises(LanguageMismatch):
        is_applicable("B-2", snip("x = 1\n", PY))
    with pytest.raises(LanguageMismatch):
        apply("GT-1", snip("int x = 1;", JAVA))


def test_gs7_applicable_single_site():
    result = is_applicable("GS-7", snip("void f() { x += 1; }", JAVA))
    assert result.applicable
    assert len(result.sites) == 1


def test_id7_reason_when_everything_used():
    result = is_applicable("ID-7", snip("def f():\n    x = 1\n    return x\n", PY))
    assert not result.applicable
    assert result.reason == "no unused variable"


def test_parse_errors_refused_not_applied():
    outcome = apply("GS-7", snip("def broken(:\n    x += 1\n", PY))
    assert not outcome.applied
    assert outcome.reason == "parse errors"


def test_gs5_skips_float_operands_java():
    result = is_applicable("GS-5", snip("void f() { if (x < 0.5f) { s(); } }", JAVA))
    assert not result.applicable


def test_gs5_skips_float_literal_python():
    result = is_applicable("GS-5", snip("if x < 0.5:\n    s()\n", PY))
    assert not result.applicable


def test_gs6_requires_side_effect_free_operands():
    result = is_applicable("GS-6", snip("if f() < g():\n    s()\n", PY))
    assert not result.applicable


def test_b1_skips_loops_with_continue():
    code = "void f() {\n    for (int i = 0; i < 5; i++) {\n        if (i == 2) continue;\n        s(i);\n    }\n}"
    assert not is_applicable("B-1", snip(code)).applicable


def test_b1_python_requires_range():
    assert not is_applicable("B-1", snip("for x in items:\n    go(x)\n", PY)).applicable


def test_id3_skips_nonvoid_java():
    assert not is_applicable("ID-3", snip("int f() { return g(); }", JAVA)).applicable
    assert is_applicable("ID-3", snip("void f() { g(); }", JAVA)).applicable


def test_id4_skips_when_name_present():
    assert not is_applicable("ID-4", snip("import uuid\nprint(uuid.uuid4())\n", PY)).applicable


def test_gs10_keeps_dangling_else_safe():
    code = "void f() { if (a) { if (b) s(); } else t(); }"
    got = applied_text("GS-10", code)
    # only the else-branch could safely unwrap; the consequence must keep
    # braces or the else would rebind
    assert normalize_ws(got) == normalize_ws("void f() { if (a) { if (b) s(); } else t(); }") \
        or "{ if (b) s(); }" in normalize_ws(got)


def test_gt2_only_in_condition_positions():
    outcome = apply("GT-2", snip("x = 1\nwhile 1:\n    break\n", PY))
    assert outcome.applied
    text = outcome.new_text.decode()
    assert "x = 1" in text  # arithmetic literal untouched
    assert "while True:" in text


def test_gt1_skips_is_comparisons():
    outcome = apply("GT-1", snip("if x is True:\n    s()\nflag = False\n", PY))
    assert outcome.applied
    text = outcome.new_text.decode()
    assert "x is True" in text
    assert "flag = 0" in text


def test_insert_locations_distinct():
    code = "def f():\n    a()\n    b()\n    c()\n"
    outs = {}
    for loc in InsertLocation:
        outcome = apply("ID-2", snip(code, PY), TransformConfig(seed=5, insert_location=loc))
        assert outcome.applied
        outs[loc] = outcome.new_text.decode()
    assert len(set(outs.values())) == 3
    front_lines = outs[InsertLocation.FRONT].splitlines()
    assert front_lines[1].strip().startswith(("unused", "if False"))
    end_lines = outs[InsertLocation.END].splitlines()
    assert end_lines[-1].strip().startswith(("unused", "if False"))
