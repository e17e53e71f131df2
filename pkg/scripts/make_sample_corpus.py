#!/usr/bin/env python3
"""Regenerate the committed sample corpora used by the property suite.

Emits tests/data/sample_java.jsonl and tests/data/sample_python.jsonl:
seeded, deterministic, 500 snippets per language, every snippet verified
to parse cleanly before it is written. The generator deliberately covers
the trigger constructs of all 32 strategies (loops, else-if chains,
compound assignments, prints, comments, unused locals, bool literals,
annotations, ...).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from codemorph.lang import Language, SourceSnippet  # noqa: E402
from codemorph.parse import parse  # noqa: E402
from codemorph.tree import has_errors  # noqa: E402

NAMES = ["count", "total", "idx", "value", "limit", "size", "items", "flag",
         "result", "acc", "step", "bound", "data", "score", "weight", "offset"]
FUNCS = ["process", "compute", "scan", "merge", "collect", "resolve", "reduce",
         "lookup", "summarize", "normalize"]


class PyGen:
    def __init__(self, rng: random.Random):
        self.rng = rng
        self.fresh = 0

    def name(self, taken):
        pool = [n for n in NAMES if n not in taken]
        if not pool:
            self.fresh += 1
            return f"v{self.fresh}"
        n = self.rng.choice(pool)
        taken.add(n)
        return n

    def expr(self, vars_):
        r = self.rng
        atoms = [str(r.randint(0, 20))] + list(vars_)
        a, b = r.choice(atoms), r.choice(atoms)
        return r.choice([
            f"{a} + {b}", f"{a} * {b}", f"{a} - {b}", a,
            f"{a} + {r.randint(1, 5)}",
        ])

    def cond(self, vars_):
        r = self.rng
        a = r.choice(list(vars_) or ["0"])
        op = r.choice(["<", ">", "<=", ">=", "==", "!="])
        return f"{a} {op} {r.randint(0, 10)}"

    def stmts(self, vars_, depth, taken, budget):
        r = self.rng
        out = []
        for _ in range(budget):
            kind = r.randrange(14)
            pad = "    " * depth
            if kind == 0:
                n = self.name(taken)
                out.append(f"{pad}{n} = {self.expr(vars_)}")
                vars_.append(n)
            elif kind == 1 and vars_:
                out.append(f"{pad}{r.choice(vars_)} += {r.randint(1, 4)}")
            elif kind == 2:
                n = self.name(taken)
                body = self.stmts(list(vars_) + [n], depth + 1, taken, r.randint(1, 2))
                out.append(f"{pad}for {n} in range({r.randint(2, 9)}):")
                out.extend(body)
            elif kind == 3 and vars_:
                body = self.stmts(vars_, depth + 1, taken, r.randint(1, 2))
                out.append(f"{pad}if {self.cond(vars_)}:")
                out.extend(body)
                if r.random() < 0.5:
                    out.append(f"{pad}else:")
                    out.extend(self.stmts(vars_, depth + 1, taken, 1))
            elif kind == 4 and vars_:
                out.append(f"{pad}print({r.choice(vars_)})")
            elif kind == 5:
                out.append(f"{pad}# {r.choice(['tally', 'note', 'guard', 'loop body'])} {r.randint(0, 99)}")
                out.append(f"{pad}pass")
            elif kind == 6 and vars_:
                body = self.stmts(vars_, depth + 1, taken, 1)
                out.append(f"{pad}while {self.cond(vars_)}:")
                out.extend(body)
                out.append(f"{pad}    break")
            elif kind == 7:
                n = self.name(taken)
                out.append(f"{pad}{n} = {r.choice(['True', 'False'])}")
                vars_.append(n)
            elif kind == 8 and vars_:
                out.append(f"{pad}if {self.cond(vars_)}:")
                out.extend(self.stmts(vars_, depth + 1, taken, 1))
                out.append(f"{pad}elif {self.cond(vars_)}:")
                out.extend(self.stmts(vars_, depth + 1, taken, 1))
            elif kind == 9 and vars_:
                out.append(f"{pad}if {self.cond(vars_)}:")
                out.append(f"{pad}    pass")
                out.append(f"{pad}else:")
                out.append(f"{pad}    if {self.cond(vars_)}:")
                out.append(f"{pad}        pass")
            elif kind == 10 and vars_:
                a = r.choice(vars_)
                out.append(f"{pad}if {a} > 0 and {a} < 10:")
                out.append(f"{pad}    print({a})")
            elif kind == 11:
                n = self.name(taken)
                out.append(f"{pad}{n} = {r.randint(0, 9)}")
            elif kind == 12 and vars_:
                out.append(f"{pad}while {r.choice(['1', 'True'])}:")
                out.append(f"{pad}    break")
            elif kind == 13 and depth == 1:
                n = self.name(taken)
                out.append(f"{pad}{n} = input()")
                vars_.append(n)
            else:
                out.append(f"{pad}pass")
        return out

    def snippet(self, idx):
        r = self.rng
        taken = set()
        fname = r.choice(FUNCS)
        params = [self.name(taken) for _ in range(r.randint(1, 3))]
        use_ann = r.random() < 0.4
        ann = r.choice(["int", "bool", "int"])
        sig_params = ", ".join(
            f"{p}: {ann}" if use_ann and i == 0 else p for i, p in enumerate(params))
        lines = [f"def {fname}({sig_params}):"]
        if r.random() < 0.4:
            lines.append(f'    """{r.choice(["Accumulate items.", "Scan the range.", "Merge values."])}"""')
        vars_ = list(params)
        lines.extend(self.stmts(vars_, 1, taken, r.randint(2, 5)))
        ret = r.random()
        if ret < 0.4 and vars_:
            lines.append(f"    return {r.choice(vars_)}")
        elif ret < 0.7:
            lines.append(f"    return {r.randint(0, 99)}")
        return "\n".join(lines) + "\n"


class JavaGen:
    def __init__(self, rng: random.Random):
        self.rng = rng
        self.fresh = 0

    def name(self, taken):
        pool = [n for n in NAMES if n not in taken]
        if not pool:
            self.fresh += 1
            return f"v{self.fresh}"
        n = self.rng.choice(pool)
        taken.add(n)
        return n

    def cond(self, vars_):
        r = self.rng
        a = r.choice(list(vars_) or ["0"])
        op = r.choice(["<", ">", "<=", ">=", "==", "!="])
        return f"{a} {op} {r.randint(0, 10)}"

    def stmts(self, vars_, depth, taken, budget):
        r = self.rng
        out = []
        pad = "    " * depth
        for _ in range(budget):
            kind = r.randrange(15)
            if kind == 0:
                n = self.name(taken)
                out.append(f"{pad}int {n} = {r.randint(0, 20)};")
                vars_.append(n)
            elif kind == 1 and vars_:
                out.append(f"{pad}{r.choice(vars_)} += {r.randint(1, 4)};")
            elif kind == 2:
                n = self.name(taken)
                body = self.stmts(list(vars_) + [n], depth + 1, taken, r.randint(1, 2))
                out.append(f"{pad}for (int {n} = 0; {n} < {r.randint(2, 9)}; {n}++) {{")
                out.extend(body)
                out.append(f"{pad}}}")
            elif kind == 3 and vars_:
                out.append(f"{pad}if ({self.cond(vars_)}) {{")
                out.extend(self.stmts(vars_, depth + 1, taken, r.randint(1, 2)))
                out.append(f"{pad}}}")
                if r.random() < 0.5:
                    out[-1] = f"{pad}}} else {{"
                    out.extend(self.stmts(vars_, depth + 1, taken, 1))
                    out.append(f"{pad}}}")
            elif kind == 4 and vars_:
                out.append(f"{pad}System.out.println({r.choice(vars_)});")
            elif kind == 5:
                out.append(f"{pad}// {r.choice(['tally', 'note', 'guard'])} {r.randint(0, 99)}")
            elif kind == 6 and vars_:
                v = r.choice(vars_)
                out.append(f"{pad}while ({v} < {r.randint(5, 15)}) {{")
                out.append(f"{pad}    {v}++;")
                out.append(f"{pad}}}")
            elif kind == 7 and vars_:
                out.append(f"{pad}{r.choice(vars_)}++;")
            elif kind == 8 and vars_:
                out.append(f"{pad}if ({self.cond(vars_)}) {{ s(); }} else {{ if ({self.cond(vars_)}) {{ t(); }} }}")
            elif kind == 9 and vars_:
                out.append(f"{pad}if ({self.cond(vars_)}) s(); else if ({self.cond(vars_)}) t();")
            elif kind == 10 and vars_:
                a = r.choice(vars_)
                out.append(f"{pad}if ({a} > 0 && {a} < 10) {{ use({a}); }}")
            elif kind == 11:
                n = self.name(taken)
                out.append(f"{pad}int {n};")
                out.append(f"{pad}for ({n} = 0; {n} < {r.randint(3, 8)}; {n}++) {{")
                out.append(f"{pad}    touch({n});")
                out.append(f"{pad}}}")
            elif kind == 12:
                n = self.name(taken)
                out.append(f"{pad}float {n} = {r.randint(1, 9)}.5f;")
            elif kind == 13 and vars_:
                out.append(f"{pad}if ({self.cond(vars_)}) log();")
            else:
                n = self.name(taken)
                out.append(f"{pad}int {n} = {r.randint(0, 9)};")
        return out

    def snippet(self, idx):
        r = self.rng
        taken = set()
        fname = r.choice(FUNCS)
        rtype = r.choice(["void", "int", "void", "int", "boolean"])
        params = [self.name(taken) for _ in range(r.randint(1, 3))]
        sig = ", ".join(f"int {p}" for p in params)
        lines = [f"{rtype} {fname}{idx}({sig}) {{"]
        vars_ = list(params)
        lines.extend(self.stmts(vars_, 1, taken, r.randint(2, 5)))
        if rtype == "int":
            lines.append(f"    return {r.choice(vars_) if vars_ and r.random() < 0.5 else r.randint(0, 99)};")
        elif rtype == "boolean":
            lines.append(f"    return {r.choice(['true', 'false'])};")
        elif r.random() < 0.3:
            lines.append("    return;")
        lines.append("}")
        body = "\n".join(lines) + "\n"
        if r.random() < 0.25:
            body = "public class Sample" + str(idx) + " {\n" + _indent(body, "    ") + "}\n"
        return body


def _indent(text: str, pad: str) -> str:
    return "".join(pad + line + "\n" if line.strip() else line + "\n"
                   for line in text.split("\n"))[:-1]


def generate(language: Language, count: int, seed: int) -> list[dict]:
    rng = random.Random(seed)
    gen = PyGen(rng) if language is Language.PYTHON else JavaGen(rng)
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > count * 20:
            raise RuntimeError("generator cannot satisfy the parse-clean requirement")
        code = gen.snippet(len(out))
        snippet = SourceSnippet(f"{language.value}-{len(out):04d}", language, code)
        if has_errors(parse(snippet)):
            continue
        out.append({"id": snippet.id, "language": language.value, "code": code})
    return out


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=500)
    parser.add_argument("--seed", type=int, default=20240217)
    parser.add_argument("--out-dir", type=Path,
                        default=Path(__file__).resolve().parents[1] / "tests" / "data")
    args = parser.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for language, fname in ((Language.JAVA, "sample_java.jsonl"),
                            (Language.PYTHON, "sample_python.jsonl")):
        rows = generate(language, args.count, args.seed)
        path = args.out_dir / fname
        with path.open("w", encoding="utf-8") as handle:
            for row in rows:
                handle.write(json.dumps(row, ensure_ascii=False) + "\n")
        print(f"wrote {len(rows)} snippets to {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
