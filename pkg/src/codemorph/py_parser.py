"""Python concrete-tree parser on top of the stdlib tokenizer.

tokenize supplies exact tokens (including comments, INDENT/DEDENT and
logical newlines); this module layers a recursive-descent grammar over
them and emits byte-span nodes in the tree-sitter naming style. Comments
never enter the grammar: they are spliced into the finished tree by span.

If the tokenizer itself rejects the text (unbalanced brackets, tab
errors), the result is a module whose single child is an ERROR node
covering the remainder, so callers always get a tree.
"""

from __future__ import annotations

import io
import keyword
import tokenize
from dataclasses import dataclass

from codemorph.tree import ERROR_KIND, Node

AUG_OPS = frozenset({"+=", "-=", "*=", "/=", "//=", "%=", "**=", "&=", "|=", "^=", "<<=", ">>=", "@="})
COMPARE_OPS = frozenset({"<", ">", "<=", ">=", "==", "!=", "<>"})


class ParseFail(Exception):
    pass


@dataclass(frozen=True)
class PyTok:
    type: str  # NAME KW NUM STR OP NEWLINE INDENT DEDENT
    text: str
    start: int
    end: int


def _byte_offsets(text: str) -> list[int]:
    offsets = [0]
    for line in text.split("\n")[:-1]:
        offsets.append(offsets[-1] + len(line.encode("utf-8")) + 1)
    return offsets


class Tokenizer:
    """Flattens tokenize output into byte-span tokens; reports failures."""

    def __init__(self, text: str):
        self.text = text
        self.lines = text.split("\n")
        self.line_offsets = _byte_offsets(text)
        self.tokens: list[PyTok] = []
        self.comments: list[PyTok] = []
        self.failed_at: int | None = None
        self._run()

    def _pos(self, rowcol: tuple[int, int]) -> int:
        row, col = rowcol
        row -= 1
        if row >= len(self.lines):
            return len(self.text.encode("utf-8"))
        return self.line_offsets[row] + len(self.lines[row][:col].encode("utf-8"))

    def _run(self) -> None:
        gen = tokenize.generate_tokens(io.StringIO(self.text).readline)
        try:
            for tok in gen:
                start, end = self._pos(tok.start), self._pos(tok.end)
                if tok.type == tokenize.COMMENT:
                    self.comments.append(PyTok("COMMENT", tok.string, start, end))
                elif tok.type == tokenize.NAME:
                    kind = "KW" if keyword.iskeyword(tok.string) else "NAME"
                    self.tokens.append(PyTok(kind, tok.string, start, end))
                elif tok.type == tokenize.NUMBER:
                    self.tokens.append(PyTok("NUM", tok.string, start, end))
                elif tok.type == tokenize.STRING:
                    self.tokens.append(PyTok("STR", tok.string, start, end))
                elif tok.type == tokenize.OP:
                    self.tokens.append(PyTok("OP", tok.string, start, end))
                elif tok.type == tokenize.NEWLINE:
                    self.tokens.append(PyTok("NEWLINE", tok.string, start, end))
                elif tok.type == tokenize.INDENT:
                    self.tokens.append(PyTok("INDENT", tok.string, start, end))
                elif tok.type == tokenize.DEDENT:
                    self.tokens.append(PyTok("DEDENT", "", start, start))
                elif tok.type == tokenize.ERRORTOKEN:
                    text = tok.string
                    if text.strip():
                        self.tokens.append(PyTok("OP", text, start, end))
                # NL / ENCODING / ENDMARKER are whitespace or virtual
        except (tokenize.TokenError, IndentationError, SyntaxError, ValueError):
            last_end = self.tokens[-1].end if self.tokens else 0
            self.failed_at = last_end


NAMED_CONSTS = {"True": "true", "False": "false", "None": "none"}


def _leaf(tok: PyTok) -> Node:
    if tok.type == "NAME":
        return Node("identifier", tok.start, tok.end, named=True)
    if tok.type == "KW":
        kind = NAMED_CONSTS.get(tok.text)
        if kind:
            return Node(kind, tok.start, tok.end, named=True)
        return Node(tok.text, tok.start, tok.end, named=False)
    if tok.type == "NUM":
        lowered = tok.text.lower()
        is_float = ("." in lowered or "e" in lowered.split("x")[0] or "j" in lowered) and not lowered.startswith("0x")
        return Node("float" if is_float else "integer", tok.start, tok.end, named=True)
    if tok.type == "STR":
        return Node("string", tok.start, tok.end, named=True)
    return Node(tok.text, tok.start, tok.end, named=False)


def _node(kind: str, children: list[Node]) -> Node:
    children = [c for c in children if c is not None]
    if not children:
        raise ParseFail(f"empty {kind}")
    return Node(kind, children[0].start, children[-1].end, named=True, children=children)


class PyParser:
    def __init__(self, text: str):
        self.tokenizer = Tokenizer(text)
        self.tokens = self.tokenizer.tokens
        self.pos = 0
        self.nbytes = len(text.encode("utf-8"))

    # ------------------------------------------------------------- plumbing

    def peek(self, offset: int = 0) -> PyTok | None:
        idx = self.pos + offset
        return self.tokens[idx] if idx < len(self.tokens) else None

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.text == text and tok.type in ("OP", "KW")

    def at_type(self, type_: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.type == type_

    def advance(self) -> Node:
        tok = self.peek()
        if tok is None:
            raise ParseFail("unexpected end of input")
        self.pos += 1
        return _leaf(tok)

    def expect(self, text: str) -> Node:
        if not self.at(text):
            got = self.peek()
            raise ParseFail(f"expected {text!r}, got {got.text if got else 'EOF'}")
        return self.advance()

    def expect_type(self, type_: str) -> Node:
        if not self.at_type(type_):
            got = self.peek()
            raise ParseFail(f"expected {type_}, got {got.type if got else 'EOF'}")
        return self.advance()

    def skip_marker(self, type_: str) -> bool:
        if self.at_type(type_):
            self.pos += 1
            return True
        return False

    def backtrack(self, fn, *args):
        saved = self.pos
        try:
            return fn(*args)
        except ParseFail:
            self.pos = saved
            return None

    # ------------------------------------------------------------- module

    def parse_module(self) -> Node:
        children: list[Node] = []
        while self.peek() is not None:
            if self.skip_marker("NEWLINE") or self.skip_marker("INDENT") or self.skip_marker("DEDENT"):
                continue
            children.extend(self.parse_statement_recovering())
        if self.tokenizer.failed_at is not None and self.tokenizer.failed_at < self.nbytes:
            children.append(Node(ERROR_KIND, self.tokenizer.failed_at, self.nbytes, named=True))
        return Node("module", 0, self.nbytes, named=True, children=children)

    def parse_statement_recovering(self) -> list[Node]:
        got = self.backtrack(self.parse_statement)
        if got is not None:
            return got
        leaves: list[Node] = []
        depth = 0
        while self.peek() is not None:
            tok = self.peek()
            if tok.type == "NEWLINE" and depth == 0:
                self.pos += 1
                break
            if tok.type in ("INDENT",):
                depth += 1
            elif tok.type == "DEDENT":
                if depth == 0:
                    break
                depth -= 1
            if tok.type in ("INDENT", "DEDENT", "NEWLINE"):
                self.pos += 1
                continue
            leaves.append(self.advance())
        if not leaves:
            if self.peek() is not None and self.peek().type not in ("INDENT", "DEDENT", "NEWLINE"):
                leaves.append(self.advance())
            else:
                return []
        return [Node(ERROR_KIND, leaves[0].start, leaves[-1].end, named=True, children=leaves)]

    # ------------------------------------------------------------- statements

    def parse_statement(self) -> list[Node]:
        """One logical statement; simple-statement lines may hold several."""
        tok = self.peek()
        if tok is None:
            raise ParseFail("expected statement")
        if tok.type == "KW":
            handler = {
                "if": self.parse_if, "while": self.parse_while, "for": self.parse_for,
                "try": self.parse_try, "with": self.parse_with, "def": self.parse_def,
                "class": self.parse_class, "async": self.parse_async,
            }.get(tok.text)
            if handler is not None:
                return [handler()]
        if tok.text == "@" and tok.type == "OP":
            return [self.parse_decorated()]
        return self.parse_simple_line()

    def parse_simple_line(self) -> list[Node]:
        stmts = [self.parse_small_statement()]
        semis: list[Node] = []
        while self.at(";"):
            semis.append(self.advance())
            if self.at_type("NEWLINE") or self.peek() is None:
                break
            stmts.append(self.parse_small_statement())
        if not self.skip_marker("NEWLINE") and self.peek() is not None:
            nxt = self.peek()
            if nxt.type not in ("DEDENT",):
                raise ParseFail(f"expected end of line, got {nxt.text!r}")
        return stmts

    def parse_small_statement(self) -> Node:
        tok = self.peek()
        if tok is None:
            raise ParseFail("expected statement")
        if tok.type == "KW":
            if tok.text in ("pass", "break", "continue"):
                word = self.advance()
                return _node(f"{tok.text}_statement", [word])
            if tok.text == "return":
                kids = [self.advance()]
                if not self._at_line_end():
                    kids.append(self.parse_testlist())
                return _node("return_statement", kids)
            if tok.text == "raise":
                kids = [self.advance()]
                if not self._at_line_end():
                    kids.append(self.parse_expression())
                    if self.at("from"):
                        kids.append(self.advance())
                        kids.append(self.parse_expression())
                return _node("raise_statement", kids)
            if tok.text == "import":
                return self.parse_import()
            if tok.text == "from":
                return self.parse_from_import()
            if tok.text in ("global", "nonlocal"):
                kids = [self.advance(), self.expect_type("NAME")]
                while self.at(","):
                    kids.append(self.advance())
                    kids.append(self.expect_type("NAME"))
                return _node(f"{tok.text}_statement", kids)
            if tok.text == "del":
                return _node("delete_statement", [self.advance(), self.parse_testlist()])
            if tok.text == "assert":
                kids = [self.advance(), self.parse_expression()]
                if self.at(","):
                    kids.append(self.advance())
                    kids.append(self.parse_expression())
                return _node("assert_statement", kids)
            if tok.text == "yield":
                return _node("expression_statement", [self.parse_yield()])
        return self.parse_expression_statement()

    def _at_line_end(self) -> bool:
        tok = self.peek()
        return tok is None or tok.type in ("NEWLINE", "DEDENT") or tok.text == ";"

    def parse_expression_statement(self) -> Node:
        first = self.parse_testlist()
        if self.at(":"):  # annotated assignment: target ':' type ['=' value]
            kids = [first, self.advance(), self.parse_expression()]
            if self.at("="):
                kids.append(self.advance())
                kids.append(self.parse_testlist())
            return _node("expression_statement", [_node("assignment", kids)])
        if self.at("="):
            kids = [first]
            while self.at("="):
                kids.append(self.advance())
                kids.append(self.parse_testlist_or_yield())
            node = kids[-1]
            for i in range(len(kids) - 3, -1, -2):
                node = _node("assignment", [kids[i], kids[i + 1], node])
            return _node("expression_statement", [node])
        tok = self.peek()
        if tok is not None and tok.type == "OP" and tok.text in AUG_OPS:
            op = self.advance()
            value = self.parse_testlist_or_yield()
            return _node("expression_statement", [_node("augmented_assignment", [first, op, value])])
        return _node("expression_statement", [first])

    def parse_testlist_or_yield(self) -> Node:
        if self.at("yield"):
            return self.parse_yield()
        return self.parse_testlist()

    def parse_import(self) -> Node:
        kids = [self.expect("import"), self.parse_aliased_dotted()]
        while self.at(","):
            kids.append(self.advance())
            kids.append(self.parse_aliased_dotted())
        return _node("import_statement", kids)

    def parse_dotted_name(self) -> Node:
        kids = [self.expect_type("NAME")]
        while self.at(".") :
            kids.append(self.advance())
            kids.append(self.expect_type("NAME"))
        return kids[0] if len(kids) == 1 else _node("dotted_name", kids)

    def parse_aliased_dotted(self) -> Node:
        name = self.parse_dotted_name()
        if self.at("as"):
            return _node("aliased_import", [name, self.advance(), self.expect_type("NAME")])
        return name

    def parse_from_import(self) -> Node:
        kids = [self.expect("from")]
        while self.at(".") or self.at("..."):
            kids.append(self.advance())
        if self.at_type("NAME"):
            kids.append(self.parse_dotted_name())
        kids.append(self.expect("import"))
        if self.at("*"):
            kids.append(self.advance())
            return _node("import_from_statement", kids)
        parens = self.at("(")
        if parens:
            kids.append(self.advance())
        kids.append(self.parse_import_name())
        while self.at(","):
            kids.append(self.advance())
            if parens and self.at(")"):
                break
            kids.append(self.parse_import_name())
        if parens:
            kids.append(self.expect(")"))
        return _node("import_from_statement", kids)

    def parse_import_name(self) -> Node:
        name = self.expect_type("NAME")
        if self.at("as"):
            return _node("aliased_import", [name, self.advance(), self.expect_type("NAME")])
        return name

    # compound statements ------------------------------------------------

    def parse_block(self) -> Node:
        """Suite after ':' — inline statements or an indented block."""
        if not self.at_type("NEWLINE"):
            stmts = self.parse_simple_line()
            return _node("block", stmts)
        self.skip_marker("NEWLINE")
        if not self.skip_marker("INDENT"):
            raise ParseFail("expected indented block")
        stmts: list[Node] = []
        while self.peek() is not None and not self.at_type("DEDENT"):
            if self.skip_marker("NEWLINE"):
                continue
            stmts.extend(self.parse_statement_recovering())
        self.skip_marker("DEDENT")
        if not stmts:
            raise ParseFail("empty block")
        return _node("block", stmts)

    def parse_if(self) -> Node:
        kids = [self.expect("if"), self.parse_expression(), self.expect(":"), self.parse_block()]
        while self.at("elif"):
            ek = [self.advance(), self.parse_expression(), self.expect(":"), self.parse_block()]
            kids.append(_node("elif_clause", ek))
        if self.at("else"):
            kids.append(_node("else_clause", [self.advance(), self.expect(":"), self.parse_block()]))
        return _node("if_statement", kids)

    def parse_while(self) -> Node:
        kids = [self.expect("while"), self.parse_expression(), self.expect(":"), self.parse_block()]
        if self.at("else"):
            kids.append(_node("else_clause", [self.advance(), self.expect(":"), self.parse_block()]))
        return _node("while_statement", kids)

    def parse_for(self) -> Node:
        kids = [self.expect("for"), self.parse_target_list(), self.expect("in"),
                self.parse_testlist(), self.expect(":"), self.parse_block()]
        if self.at("else"):
            kids.append(_node("else_clause", [self.advance(), self.expect(":"), self.parse_block()]))
        return _node("for_statement", kids)

    def parse_target_list(self) -> Node:
        first = self.parse_primary_target()
        if not self.at(","):
            return first
        kids = [first]
        while self.at(","):
            kids.append(self.advance())
            if self.at("in"):
                break
            kids.append(self.parse_primary_target())
        return _node("pattern_list", kids)

    def parse_primary_target(self) -> Node:
        if self.at("("):
            lp = self.advance()
            inner = self.parse_target_list()
            rp = self.expect(")")
            return _node("tuple_pattern", [lp, inner, rp])
        if self.at("*"):
            return _node("list_splat_pattern", [self.advance(), self.parse_primary_target()])
        node = self.parse_postfix()  # allows a.b / a[i] targets
        return node

    def parse_try(self) -> Node:
        kids = [self.expect("try"), self.expect(":"), self.parse_block()]
        while self.at("except"):
            ek = [self.advance()]
            if not self.at(":"):
                ek.append(self.parse_expression())
                if self.at("as"):
                    ek.append(self.advance())
                    ek.append(self.expect_type("NAME"))
            ek.append(self.expect(":"))
            ek.append(self.parse_block())
            kids.append(_node("except_clause", ek))
        if self.at("else"):
            kids.append(_node("else_clause", [self.advance(), self.expect(":"), self.parse_block()]))
        if self.at("finally"):
            kids.append(_node("finally_clause", [self.advance(), self.expect(":"), self.parse_block()]))
        return _node("try_statement", kids)

    def parse_with(self) -> Node:
        kids = [self.expect("with"), self.parse_with_item()]
        while self.at(","):
            kids.append(self.advance())
            kids.append(self.parse_with_item())
        kids.append(self.expect(":"))
        kids.append(self.parse_block())
        return _node("with_statement", kids)

    def parse_with_item(self) -> Node:
        expr = self.parse_expression()
        if self.at("as"):
            return _node("with_item", [expr, self.advance(), self.parse_primary_target()])
        return _node("with_item", [expr])

    def parse_def(self) -> Node:
        kids = [self.expect("def"), self.expect_type("NAME"), self.parse_parameters()]
        if self.at("->"):
            kids.append(self.advance())
            kids.append(self.parse_expression())
        kids.append(self.expect(":"))
        kids.append(self.parse_block())
        return _node("function_definition", kids)

    def parse_parameters(self) -> Node:
        kids = [self.expect("(")]
        while not self.at(")"):
            kids.append(self.parse_parameter())
            if self.at(","):
                kids.append(self.advance())
            elif not self.at(")"):
                raise ParseFail("bad parameter list")
        kids.append(self.expect(")"))
        return _node("parameters", kids)

    def parse_parameter(self) -> Node:
        if self.at("*"):
            star = self.advance()
            if self.at(",") or self.at(")"):
                return star  # bare keyword-only marker
            return _node("list_splat_pattern", [star, self.expect_type("NAME")])
        if self.at("**"):
            return _node("dictionary_splat_pattern", [self.advance(), self.expect_type("NAME")])
        if self.at("/"):
            return self.advance()
        name = self.expect_type("NAME")
        if self.at(":"):
            colon = self.advance()
            ann = self.parse_expression()
            if self.at("="):
                eq = self.advance()
                return _node("typed_default_parameter", [name, colon, ann, eq, self.parse_expression()])
            return _node("typed_parameter", [name, colon, ann])
        if self.at("="):
            return _node("default_parameter", [name, self.advance(), self.parse_expression()])
        return name

    def parse_class(self) -> Node:
        kids = [self.expect("class"), self.expect_type("NAME")]
        if self.at("("):
            kids.append(self.parse_argument_list())
        kids.append(self.expect(":"))
        kids.append(self.parse_block())
        return _node("class_definition", kids)

    def parse_decorated(self) -> Node:
        decorators: list[Node] = []
        while self.at("@"):
            dk = [self.advance(), self.parse_expression()]
            decorators.append(_node("decorator", dk))
            self.skip_marker("NEWLINE")
        tok = self.peek()
        if tok is None or tok.text not in ("def", "class", "async"):
            raise ParseFail("decorator must precede def/class")
        inner = self.parse_statement()
        return _node("decorated_definition", decorators + inner)

    def parse_async(self) -> Node:
        kw = self.expect("async")
        tok = self.peek()
        if tok is None:
            raise ParseFail("dangling async")
        if tok.text == "def":
            inner = self.parse_def()
        elif tok.text == "for":
            inner = self.parse_for()
        elif tok.text == "with":
            inner = self.parse_with()
        else:
            raise ParseFail("async must precede def/for/with")
        inner.children.insert(0, kw)
        inner.start = kw.start
        return inner

    # ------------------------------------------------------------- expressions

    def parse_testlist(self) -> Node:
        first = self.parse_expression()
        if not self.at(","):
            return first
        kids = [first]
        while self.at(","):
            kids.append(self.advance())
            if self._at_expr_end():
                break
            kids.append(self.parse_expression())
        return _node("expression_list", kids)

    def _at_expr_end(self) -> bool:
        tok = self.peek()
        if tok is None or tok.type in ("NEWLINE", "DEDENT"):
            return True
        return tok.type in ("OP", "KW") and tok.text in (")", "]", "}", ":", ";", "=", "in", "for", "if", "as", "from")

    def parse_expression(self) -> Node:
        if self.at("lambda"):
            return self.parse_lambda()
        if self.at("*"):
            return _node("list_splat", [self.advance(), self.parse_expression()])
        node = self.parse_or()
        if self.at("if"):
            kw_if = self.advance()
            cond = self.parse_or()
            kw_else = self.expect("else")
            other = self.parse_expression()
            return _node("conditional_expression", [node, kw_if, cond, kw_else, other])
        if self.at(":="):
            op = self.advance()
            value = self.parse_expression()
            return _node("named_expression", [node, op, value])
        return node

    def parse_lambda(self) -> Node:
        kids = [self.expect("lambda")]
        params: list[Node] = []
        while not self.at(":"):
            # lambda parameters allow defaults and splats but no annotations
            if self.at("*"):
                star = self.advance()
                params.append(_node("list_splat_pattern", [star, self.expect_type("NAME")])
                              if self.at_type("NAME") else star)
            elif self.at("**"):
                params.append(_node("dictionary_splat_pattern", [self.advance(), self.expect_type("NAME")]))
            else:
                name = self.expect_type("NAME")
                if self.at("="):
                    params.append(_node("default_parameter", [name, self.advance(), self.parse_expression()]))
                else:
                    params.append(name)
            if self.at(","):
                params.append(self.advance())
        if params:
            kids.append(_node("lambda_parameters", params))
        kids.append(self.expect(":"))
        kids.append(self.parse_expression())
        return _node("lambda", kids)

    def parse_or(self) -> Node:
        node = self.parse_and()
        while self.at("or"):
            op = self.advance()
            node = _node("boolean_operator", [node, op, self.parse_and()])
        return node

    def parse_and(self) -> Node:
        node = self.parse_not()
        while self.at("and"):
            op = self.advance()
            node = _node("boolean_operator", [node, op, self.parse_not()])
        return node

    def parse_not(self) -> Node:
        if self.at("not"):
            op = self.advance()
            return _node("not_operator", [op, self.parse_not()])
        return self.parse_comparison()

    def parse_comparison(self) -> Node:
        node = self.parse_bitor()
        ops_and_operands: list[Node] = []
        while True:
            tok = self.peek()
            if tok is None:
                break
            if tok.type == "OP" and tok.text in COMPARE_OPS:
                ops_and_operands.append(self.advance())
            elif tok.type == "KW" and tok.text == "in":
                ops_and_operands.append(self.advance())
            elif tok.type == "KW" and tok.text == "not" and self.peek(1) is not None and self.peek(1).text == "in":
                ops_and_operands.append(self.advance())
                ops_and_operands.append(self.advance())
            elif tok.type == "KW" and tok.text == "is":
                ops_and_operands.append(self.advance())
                if self.at("not"):
                    ops_and_operands.append(self.advance())
            else:
                break
            ops_and_operands.append(self.parse_bitor())
        if not ops_and_operands:
            return node
        return _node("comparison_operator", [node] + ops_and_operands)

    def _binary_level(self, sub, ops: frozenset[str]):
        node = sub()
        while True:
            tok = self.peek()
            if tok is not None and tok.type == "OP" and tok.text in ops:
                op = self.advance()
                node = _node("binary_operator", [node, op, sub()])
            else:
                return node

    def parse_bitor(self) -> Node:
        return self._binary_level(self.parse_bitxor, frozenset({"|"}))

    def parse_bitxor(self) -> Node:
        return self._binary_level(self.parse_bitand, frozenset({"^"}))

    def parse_bitand(self) -> Node:
        return self._binary_level(self.parse_shift, frozenset({"&"}))

    def parse_shift(self) -> Node:
        return self._binary_level(self.parse_arith, frozenset({"<<", ">>"}))

    def parse_arith(self) -> Node:
        return self._binary_level(self.parse_term, frozenset({"+", "-"}))

    def parse_term(self) -> Node:
        return self._binary_level(self.parse_factor, frozenset({"*", "/", "//", "%", "@"}))

    def parse_factor(self) -> Node:
        tok = self.peek()
        if tok is not None and tok.type == "OP" and tok.text in ("+", "-", "~"):
            op = self.advance()
            return _node("unary_operator", [op, self.parse_factor()])
        return self.parse_power()

    def parse_power(self) -> Node:
        node = self.parse_awaited()
        if self.at("**"):
            op = self.advance()
            return _node("binary_operator", [node, op, self.parse_factor()])
        return node

    def parse_awaited(self) -> Node:
        if self.at("await"):
            kw = self.advance()
            return _node("await", [kw, self.parse_awaited()])
        return self.parse_postfix()

    def parse_yield(self) -> Node:
        kids = [self.expect("yield")]
        if self.at("from"):
            kids.append(self.advance())
            kids.append(self.parse_expression())
        elif not self._at_line_end() and not self._at_expr_end():
            kids.append(self.parse_testlist())
        return _node("yield", kids)

    def parse_postfix(self) -> Node:
        node = self.parse_atom()
        while True:
            tok = self.peek()
            if tok is None:
                return node
            if tok.text == "(" and tok.type == "OP":
                args = self.parse_argument_list()
                node = _node("call", [node, args])
            elif tok.text == "[" and tok.type == "OP":
                lb = self.advance()
                inner = self.parse_subscript_content()
                rb = self.expect("]")
                node = _node("subscript", [node, lb, inner, rb])
            elif tok.text == "." and tok.type == "OP":
                dot = self.advance()
                name = self.expect_type("NAME")
                node = _node("attribute", [node, dot, name])
            else:
                return node

    def parse_argument_list(self) -> Node:
        kids = [self.expect("(")]
        while not self.at(")"):
            kids.append(self.parse_argument())
            if self.at(","):
                kids.append(self.advance())
            elif not self.at(")"):
                raise ParseFail("bad argument list")
        kids.append(self.expect(")"))
        return _node("argument_list", kids)

    def parse_argument(self) -> Node:
        tok = self.peek()
        if tok is not None and tok.text == "**" and tok.type == "OP":
            return _node("dictionary_splat", [self.advance(), self.parse_expression()])
        if tok is not None and tok.text == "*" and tok.type == "OP":
            return _node("list_splat", [self.advance(), self.parse_expression()])
        if tok is not None and tok.type == "NAME" and self.peek(1) is not None \
                and self.peek(1).text == "=" and self.peek(1).type == "OP":
            name = self.advance()
            eq = self.advance()
            return _node("keyword_argument", [name, eq, self.parse_expression()])
        expr = self.parse_expression()
        if self.at("for") or self.at("async"):
            clauses = self.parse_comprehension_clauses()
            return _node("generator_expression", [expr] + clauses)
        return expr

    def parse_subscript_content(self) -> Node:
        # slice or plain index; tuple slices parsed loosely
        parts: list[Node] = []
        is_slice = False
        if not self.at(":"):
            parts.append(self.parse_testlist())
        while self.at(":"):
            is_slice = True
            parts.append(self.advance())
            if not self.at("]") and not self.at(":"):
                parts.append(self.parse_testlist())
        if is_slice:
            return _node("slice", parts)
        if not parts:
            raise ParseFail("empty subscript")
        return parts[0]

    def parse_comprehension_clauses(self) -> list[Node]:
        clauses: list[Node] = []
        while True:
            if self.at("async") and self.peek(1) is not None and self.peek(1).text == "for":
                kw_async = self.advance()
                fk = [kw_async, self.expect("for"), self.parse_target_list(), self.expect("in"), self.parse_or()]
                clauses.append(_node("for_in_clause", fk))
            elif self.at("for"):
                fk = [self.advance(), self.parse_target_list(), self.expect("in"), self.parse_or()]
                clauses.append(_node("for_in_clause", fk))
            elif self.at("if"):
                clauses.append(_node("if_clause", [self.advance(), self.parse_or()]))
            else:
                return clauses

    def parse_atom(self) -> Node:
        tok = self.peek()
        if tok is None:
            raise ParseFail("expected expression")
        if tok.type == "NAME":
            return self.advance()
        if tok.type == "NUM":
            return self.advance()
        if tok.type == "STR":
            first = self.advance()
            if self.at_type("STR"):
                kids = [first]
                while self.at_type("STR"):
                    kids.append(self.advance())
                return _node("concatenated_string", kids)
            return first
        if tok.type == "KW":
            if tok.text in NAMED_CONSTS:
                return self.advance()
            if tok.text == "yield":
                return self.parse_yield()
            if tok.text == "lambda":
                return self.parse_lambda()
            if tok.text == "not":  # unary not reachable via argument contexts
                return self.parse_not()
        if tok.type != "OP":
            raise ParseFail(f"unexpected {tok.text!r}")
        if tok.text == "(":
            return self.parse_paren_form()
        if tok.text == "[":
            return self.parse_bracket_form()
        if tok.text == "{":
            return self.parse_brace_form()
        if tok.text == "...":
            word = self.advance()
            return Node("ellipsis", word.start, word.end, named=True)
        raise ParseFail(f"unexpected {tok.text!r}")

    def parse_paren_form(self) -> Node:
        lp = self.expect("(")
        if self.at(")"):
            return _node("tuple", [lp, self.advance()])
        if self.at("yield"):
            inner = self.parse_yield()
            return _node("parenthesized_expression", [lp, inner, self.expect(")")])
        first = self.parse_expression()
        if self.at("for") or (self.at("async") and self.peek(1) is not None and self.peek(1).text == "for"):
            clauses = self.parse_comprehension_clauses()
            return _node("generator_expression", [lp, first] + clauses + [self.expect(")")])
        if self.at(","):
            kids = [lp, first]
            while self.at(","):
                kids.append(self.advance())
                if self.at(")"):
                    break
                kids.append(self.parse_expression())
            kids.append(self.expect(")"))
            return _node("tuple", kids)
        return _node("parenthesized_expression", [lp, first, self.expect(")")])

    def parse_bracket_form(self) -> Node:
        lb = self.expect("[")
        if self.at("]"):
            return _node("list", [lb, self.advance()])
        first = self.parse_expression()
        if self.at("for") or (self.at("async") and self.peek(1) is not None and self.peek(1).text == "for"):
            clauses = self.parse_comprehension_clauses()
            return _node("list_comprehension", [lb, first] + clauses + [self.expect("]")])
        kids = [lb, first]
        while self.at(","):
            kids.append(self.advance())
            if self.at("]"):
                break
            kids.append(self.parse_expression())
        kids.append(self.expect("]"))
        return _node("list", kids)

    def parse_brace_form(self) -> Node:
        lb = self.expect("{")
        if self.at("}"):
            return _node("dictionary", [lb, self.advance()])
        if self.at("**"):
            first: Node = _node("dictionary_splat", [self.advance(), self.parse_expression()])
            is_pair = True
        else:
            key = self.parse_expression()
            if self.at(":"):
                colon = self.advance()
                value = self.parse_expression()
                first = _node("pair", [key, colon, value])
                is_pair = True
            else:
                first = key
                is_pair = False
        if self.at("for") or (self.at("async") and self.peek(1) is not None and self.peek(1).text == "for"):
            clauses = self.parse_comprehension_clauses()
            kind = "dictionary_comprehension" if is_pair else "set_comprehension"
            return _node(kind, [lb, first] + clauses + [self.expect("}")])
        kids = [lb, first]
        while self.at(","):
            kids.append(self.advance())
            if self.at("}"):
                break
            if is_pair:
                if self.at("**"):
                    kids.append(_node("dictionary_splat", [self.advance(), self.parse_expression()]))
                else:
                    key = self.parse_expression()
                    colon = self.expect(":")
                    kids.append(_node("pair", [key, colon, self.parse_expression()]))
            else:
                kids.append(self.parse_expression())
        kids.append(self.expect("}"))
        return _node("dictionary" if is_pair else "set", kids)


def _splice_comments(root: Node, comments: list[PyTok]) -> None:
    for tok in comments:
        leaf = Node("comment", tok.start, tok.end, named=True)
        node = root
        while True:
            placed = False
            for child in node.children:
                if child.start <= leaf.start and leaf.end <= child.end and child.children:
                    node = child
                    placed = True
                    break
            if not placed:
                break
        idx = 0
        while idx < len(node.children) and node.children[idx].start <= leaf.start:
            idx += 1
        node.children.insert(idx, leaf)


def parse_python(source: bytes) -> Node:
    text = source.decode("utf-8")
    parser = PyParser(text)
    root = parser.parse_module()
    _splice_comments(root, parser.tokenizer.comments)
    return root
