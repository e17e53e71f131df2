"""Recursive-descent Java parser producing byte-span concrete trees.

Covers the method/statement/expression subset that function-level corpora
exercise: type and member declarations, the full statement repertoire,
precedence-climbing expressions, generics (with ">>" splitting), lambdas,
casts and anonymous classes. Bare method declarations and bare statements
are accepted at the top level so snippet corpora parse without class
wrappers.

Unparseable stretches become ERROR nodes spanning the skipped tokens;
nothing is dropped.
"""

from __future__ import annotations

from codemorph.grammar import java_grammar
from codemorph.java_lexer import JavaToken, lex
from codemorph.tree import ERROR_KIND, Node

PRIMITIVE_KINDS = {
    "byte": "integral_type", "short": "integral_type", "int": "integral_type",
    "long": "integral_type", "char": "integral_type",
    "float": "floating_point_type", "double": "floating_point_type",
    "boolean": "boolean_type", "void": "void_type",
}

NAMED_LITERALS = {
    "true": "true", "false": "false", "null": "null_literal",
    "this": "this", "super": "super",
}

LITERAL_TOKEN_KINDS = frozenset({
    "decimal_integer_literal", "hex_integer_literal", "octal_integer_literal",
    "binary_integer_literal", "decimal_floating_point_literal",
    "hex_floating_point_literal", "string_literal", "character_literal",
    "text_block",
})

ASSIGN_OPS = frozenset({"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="})

# precedence table for binary operators, low to high
BINARY_LEVELS = [
    {"||"}, {"&&"}, {"|"}, {"^"}, {"&"}, {"==", "!="},
    {"<", ">", "<=", ">=", "instanceof"},
    {"<<", ">>", ">>>"}, {"+", "-"}, {"*", "/", "%"},
]


class ParseFail(Exception):
    pass


def _leaf(tok: JavaToken) -> Node:
    if tok.kind == "identifier":
        return Node("identifier", tok.start, tok.end, named=True)
    if tok.kind == "keyword":
        kind = NAMED_LITERALS.get(tok.text)
        if kind:
            return Node(kind, tok.start, tok.end, named=True)
        return Node(tok.text, tok.start, tok.end, named=False)
    if tok.kind in LITERAL_TOKEN_KINDS or tok.kind in ("line_comment", "block_comment"):
        return Node(tok.kind, tok.start, tok.end, named=True)
    if tok.kind == ERROR_KIND:
        return Node(ERROR_KIND, tok.start, tok.end, named=True)
    return Node(tok.kind, tok.start, tok.end, named=False)  # operator / punctuation


def _node(kind: str, children: list[Node]) -> Node:
    children = [c for c in children if c is not None]
    if not children:
        raise ParseFail(f"empty {kind}")
    return Node(kind, children[0].start, children[-1].end, named=True, children=children)


class JavaParser:
    def __init__(self, source: bytes):
        self.source = source
        all_tokens = lex(source)
        self.comments = [t for t in all_tokens if t.is_comment]
        self.tokens = [t for t in all_tokens if not t.is_comment]
        self.pos = 0
        grammar = java_grammar()
        self.modifier_words = frozenset(grammar["modifiers"])

    # ------------------------------------------------------------- plumbing

    def peek(self, offset: int = 0) -> JavaToken | None:
        idx = self.pos + offset
        return self.tokens[idx] if idx < len(self.tokens) else None

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.text == text and tok.kind in ("keyword", text)

    def at_kind(self, kind: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == kind

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

    def expect_kind(self, kind: str) -> Node:
        if not self.at_kind(kind):
            got = self.peek()
            raise ParseFail(f"expected {kind}, got {got.kind if got else 'EOF'}")
        return self.advance()

    def split_gt(self) -> Node:
        """Split a '>'-prefixed operator token so nested generics close."""
        tok = self.peek()
        if tok is None or not tok.text.startswith(">"):
            raise ParseFail("expected '>'")
        if tok.text == ">":
            return self.advance()
        rest = JavaToken(tok.text[1:], tok.start + 1, tok.end, tok.text[1:])
        self.tokens[self.pos] = JavaToken(">", tok.start, tok.start + 1, ">")
        self.tokens.insert(self.pos + 1, rest)
        return self.advance()

    def backtrack(self, fn, *args):
        saved = self.pos
        try:
            return fn(*args)
        except ParseFail:
            self.pos = saved
            return None

    # ------------------------------------------------------------- program

    def parse_program(self) -> Node:
        children: list[Node] = []
        n = len(self.source)
        while self.peek() is not None:
            item = self.parse_top_item()
            children.append(item)
        root = Node("program", 0, n, named=True, children=children)
        return root

    def parse_top_item(self) -> Node:
        if self.at("package"):
            got = self.backtrack(self.parse_package)
            if got:
                return got
        if self.at("import"):
            got = self.backtrack(self.parse_import)
            if got:
                return got
        got = self.backtrack(self.parse_type_declaration)
        if got:
            return got
        got = self.backtrack(self.parse_method_like)
        if got:
            return got
        got = self.backtrack(self.parse_statement)
        if got:
            return got
        return self.recover_error(stop_on_close_brace=False)

    def recover_error(self, stop_on_close_brace: bool) -> Node:
        """Consume to the next statement boundary and wrap as ERROR."""
        leaves: list[Node] = []
        depth = 0
        while self.peek() is not None:
            tok = self.peek()
            if tok.text == "{":
                depth += 1
            elif tok.text == "}":
                if depth == 0:
                    if stop_on_close_brace:
                        break
                    leaves.append(self.advance())
                    break
                depth -= 1
            leaves.append(self.advance())
            if tok.text == ";" and depth == 0:
                break
        if not leaves:
            leaves.append(self.advance())  # guarantee progress
        return Node(ERROR_KIND, leaves[0].start, leaves[-1].end, named=True, children=leaves)

    def parse_package(self) -> Node:
        kids = [self.expect("package"), self.parse_scoped_name()]
        kids.append(self.expect(";"))
        return _node("package_declaration", kids)

    def parse_import(self) -> Node:
        kids = [self.expect("import")]
        if self.at("static"):
            kids.append(self.advance())
        kids.append(self.parse_scoped_name())
        if self.at("."):
            kids.append(self.advance())
            kids.append(Node("asterisk", *self.expect("*").span, named=True))
        kids.append(self.expect(";"))
        return _node("import_declaration", kids)

    def parse_scoped_name(self) -> Node:
        kids = [self.expect_kind("identifier")]
        while self.at(".") and self.peek(1) is not None and self.peek(1).kind == "identifier":
            kids.append(self.advance())
            kids.append(self.advance())
        if len(kids) == 1:
            return kids[0]
        return _node("scoped_identifier", kids)

    # ------------------------------------------------------------- declarations

    def parse_modifiers(self) -> Node | None:
        kids: list[Node] = []
        while True:
            if self.at("@") and self.peek(1) is not None and self.peek(1).kind == "identifier":
                kids.append(self.parse_annotation())
                continue
            tok = self.peek()
            if tok is not None and tok.kind == "keyword" and tok.text in self.modifier_words:
                kids.append(self.advance())
                continue
            break
        return _node("modifiers", kids) if kids else None

    def parse_annotation(self) -> Node:
        kids = [self.expect("@"), self.parse_scoped_name()]
        if self.at("("):
            kids.append(self.parse_argument_list())
            return _node("annotation", kids)
        return _node("marker_annotation", kids)

    def parse_type_declaration(self) -> Node:
        mods = self.parse_modifiers()
        if self.at("class") or self.at("interface") or self.at("enum"):
            keyword = self.advance()
            kind = {"class": "class_declaration", "interface": "interface_declaration",
                    "enum": "enum_declaration"}[keyword.kind]
            kids: list[Node] = ([mods] if mods else []) + [keyword, self.expect_kind("identifier")]
            if self.at("<"):
                kids.append(self.parse_type_parameters())
            while self.at("extends") or self.at("implements"):
                kids.append(self.advance())
                kids.append(self.parse_type())
                while self.at(","):
                    kids.append(self.advance())
                    kids.append(self.parse_type())
            kids.append(self.parse_class_body(kind))
            return _node(kind, kids)
        raise ParseFail("not a type declaration")

    def parse_class_body(self, owner_kind: str = "class_declaration") -> Node:
        kids = [self.expect("{")]
        if owner_kind == "enum_declaration":
            # enum constants: NAME [args] [, NAME [args]]* [;]
            while self.at_kind("identifier"):
                const = [self.expect_kind("identifier")]
                if self.at("("):
                    const.append(self.parse_argument_list())
                kids.append(_node("enum_constant", const))
                if self.at(","):
                    kids.append(self.advance())
                else:
                    break
            if self.at(";"):
                kids.append(self.advance())
        while self.peek() is not None and not self.at("}"):
            member = self.parse_member()
            kids.append(member)
        kids.append(self.expect("}"))
        return _node("class_body", kids)

    def parse_member(self) -> Node:
        if self.at(";"):
            return self.advance()
        got = self.backtrack(self.parse_type_declaration)
        if got:
            return got
        got = self.backtrack(self.parse_method_like)
        if got:
            return got
        got = self.backtrack(self.parse_field)
        if got:
            return got
        if self.at("{"):  # instance initializer
            return self.parse_block()
        if self.at("static") and self.peek(1) is not None and self.peek(1).text == "{":
            return _node("static_initializer", [self.advance(), self.parse_block()])
        return self.recover_error(stop_on_close_brace=True)

    def parse_method_like(self) -> Node:
        mods = self.parse_modifiers()
        kids: list[Node] = [mods] if mods else []
        if self.at("<"):
            kids.append(self.parse_type_parameters())
        saved = self.pos
        # constructor: Name ( params ) { ... }
        if self.at_kind("identifier") and self.peek(1) is not None and self.peek(1).text == "(":
            name = self.advance()
            try:
                params = self.parse_formal_parameters()
                if self.at("throws"):
                    throws = [self.advance(), self.parse_type()]
                    while self.at(","):
                        throws.append(self.advance())
                        throws.append(self.parse_type())
                    body = self.parse_block()
                    return _node("constructor_declaration", kids + [name, params, _node("throws", throws), body])
                if self.at("{"):
                    return _node("constructor_declaration", kids + [name, params, self.parse_block()])
            except ParseFail:
                pass
            self.pos = saved
        rtype = self.parse_type(allow_void=True)
        name = self.expect_kind("identifier")
        params = self.parse_formal_parameters()
        kids += [rtype, name, params]
        while self.at("["):  # archaic int f()[] form
            kids.append(self.advance())
            kids.append(self.expect("]"))
        if self.at("throws"):
            throws = [self.advance(), self.parse_type()]
            while self.at(","):
                throws.append(self.advance())
                throws.append(self.parse_type())
            kids.append(_node("throws", throws))
        if self.at(";"):
            kids.append(self.advance())
        else:
            kids.append(self.parse_block())
        return _node("method_declaration", kids)

    def parse_formal_parameters(self) -> Node:
        kids = [self.expect("(")]
        while not self.at(")"):
            mods = self.parse_modifiers()
            ptype = self.parse_type()
            if self.at("..."):
                ellipsis = self.advance()
                name = self.expect_kind("identifier")
                param = _node("spread_parameter", ([mods] if mods else []) + [ptype, ellipsis, name])
            else:
                name = self.expect_kind("identifier")
                pkids = ([mods] if mods else []) + [ptype, name]
                while self.at("["):
                    pkids.append(self.advance())
                    pkids.append(self.expect("]"))
                param = _node("formal_parameter", pkids)
            kids.append(param)
            if self.at(","):
                kids.append(self.advance())
            elif not self.at(")"):
                raise ParseFail("bad parameter list")
        kids.append(self.expect(")"))
        return _node("formal_parameters", kids)

    def parse_field(self) -> Node:
        mods = self.parse_modifiers()
        ftype = self.parse_type()
        kids: list[Node] = ([mods] if mods else []) + [ftype, self.parse_variable_declarator()]
        while self.at(","):
            kids.append(self.advance())
            kids.append(self.parse_variable_declarator())
        kids.append(self.expect(";"))
        return _node("field_declaration", kids)

    def parse_variable_declarator(self) -> Node:
        kids = [self.expect_kind("identifier")]
        while self.at("["):
            kids.append(self.advance())
            kids.append(self.expect("]"))
        if self.at("="):
            kids.append(self.advance())
            if self.at("{"):
                kids.append(self.parse_array_initializer())
            else:
                kids.append(self.parse_expression())
        return _node("variable_declarator", kids)

    # ------------------------------------------------------------- types

    def parse_type(self, allow_void: bool = False) -> Node:
        tok = self.peek()
        if tok is None:
            raise ParseFail("expected type")
        base: Node
        if tok.kind == "keyword" and tok.text in PRIMITIVE_KINDS:
            if tok.text == "void" and not allow_void:
                raise ParseFail("void not allowed here")
            word = self.advance()
            base = Node(PRIMITIVE_KINDS[tok.text], word.start, word.end, named=True, children=[word])
        elif tok.kind == "identifier" or (tok.kind == "keyword" and tok.text == "var"):
            name = self.advance()
            base = Node("type_identifier", name.start, name.end, named=True)
            while self.at(".") and self.peek(1) is not None and self.peek(1).kind == "identifier":
                dot = self.advance()
                nxt = self.advance()
                part = Node("type_identifier", nxt.start, nxt.end, named=True)
                base = _node("scoped_type_identifier", [base, dot, part])
            if self.at("<"):
                targs = self.parse_type_arguments()
                base = _node("generic_type", [base, targs])
        else:
            raise ParseFail(f"not a type: {tok.text}")
        dims: list[Node] = []
        while self.at("[") and self.peek(1) is not None and self.peek(1).text == "]":
            dims.append(self.advance())
            dims.append(self.advance())
        if dims:
            base = _node("array_type", [base, _node("dimensions", dims)])
        return base

    def parse_type_arguments(self) -> Node:
        kids = [self.expect("<")]
        if not (self.peek() is not None and self.peek().text.startswith(">")):
            kids.append(self.parse_type_argument())
            while self.at(","):
                kids.append(self.advance())
                kids.append(self.parse_type_argument())
        kids.append(self.split_gt())
        return _node("type_arguments", kids)

    def parse_type_argument(self) -> Node:
        if self.at("?"):
            kids = [self.advance()]
            if self.at("extends") or self.at("super"):
                kids.append(self.advance())
                kids.append(self.parse_type())
            return _node("wildcard", kids)
        return self.parse_type()

    def parse_type_parameters(self) -> Node:
        kids = [self.expect("<")]
        while not (self.peek() is not None and self.peek().text.startswith(">")):
            param = [self.expect_kind("identifier")]
            while self.at("extends") or self.at("&"):
                param.append(self.advance())
                param.append(self.parse_type())
            kids.append(_node("type_parameter", param))
            if self.at(","):
                kids.append(self.advance())
        kids.append(self.split_gt())
        return _node("type_parameters", kids)

    # ------------------------------------------------------------- statements

    def parse_block(self) -> Node:
        kids = [self.expect("{")]
        while self.peek() is not None and not self.at("}"):
            kids.append(self.parse_statement_recovering())
        kids.append(self.expect("}"))
        return _node("block", kids)

    def parse_statement_recovering(self) -> Node:
        got = self.backtrack(self.parse_statement)
        if got:
            return got
        return self.recover_error(stop_on_close_brace=True)

    def parse_statement(self) -> Node:
        tok = self.peek()
        if tok is None:
            raise ParseFail("expected statement")
        if tok.text == "{":
            return self.parse_block()
        if tok.text == ";":
            return self.advance()
        if tok.kind == "keyword":
            handler = {
                "if": self.parse_if, "while": self.parse_while, "do": self.parse_do,
                "for": self.parse_for, "try": self.parse_try, "switch": self.parse_switch,
                "return": self.parse_return, "throw": self.parse_throw,
                "break": self.parse_break_continue, "continue": self.parse_break_continue,
                "synchronized": self.parse_synchronized, "assert": self.parse_assert,
                "yield": self.parse_yield,
            }.get(tok.text)
            if handler is not None:
                return handler()
            if tok.text in ("class", "interface", "enum") or tok.text in self.modifier_words:
                got = self.backtrack(self.parse_type_declaration)
                if got:
                    return got
        # labeled statement: IDENT ':' <statement>
        if tok.kind == "identifier" and self.peek(1) is not None and self.peek(1).text == ":":
            nxt2 = self.peek(2)
            if nxt2 is not None and (nxt2.kind == "keyword" and nxt2.text in ("for", "while", "do", "if", "switch") or nxt2.text == "{"):
                label = self.advance()
                colon = self.advance()
                return _node("labeled_statement", [label, colon, self.parse_statement()])
        got = self.backtrack(self.parse_local_declaration)
        if got:
            return got
        expr = self.parse_expression()
        semi = self.expect(";")
        return _node("expression_statement", [expr, semi])

    def parse_local_declaration(self) -> Node:
        mods = self.parse_modifiers()
        dtype = self.parse_type()
        kids: list[Node] = ([mods] if mods else []) + [dtype, self.parse_variable_declarator()]
        while self.at(","):
            kids.append(self.advance())
            kids.append(self.parse_variable_declarator())
        kids.append(self.expect(";"))
        return _node("local_variable_declaration", kids)

    def parse_paren_condition(self) -> Node:
        kids = [self.expect("("), self.parse_expression(), self.expect(")")]
        return _node("parenthesized_expression", kids)

    def parse_if(self) -> Node:
        kids = [self.expect("if"), self.parse_paren_condition(), self.parse_statement()]
        if self.at("else"):
            kids.append(self.advance())
            kids.append(self.parse_statement())
        return _node("if_statement", kids)

    def parse_while(self) -> Node:
        return _node("while_statement", [self.expect("while"), self.parse_paren_condition(), self.parse_statement()])

    def parse_do(self) -> Node:
        kids = [self.expect("do"), self.parse_statement(), self.expect("while"),
                self.parse_paren_condition(), self.expect(";")]
        return _node("do_statement", kids)

    def parse_for(self) -> Node:
        saved = self.pos
        forkw = self.expect("for")
        lparen = self.expect("(")
        # enhanced for: [mods] type ident : expr
        enh = self.backtrack(self._parse_enhanced_for_rest, forkw, lparen)
        if enh:
            return enh
        self.pos = saved
        return self._parse_basic_for()

    def _parse_enhanced_for_rest(self, forkw: Node, lparen: Node) -> Node:
        mods = self.parse_modifiers()
        vtype = self.parse_type()
        name = self.expect_kind("identifier")
        colon = self.expect(":")
        it = self.parse_expression()
        rparen = self.expect(")")
        body = self.parse_statement()
        kids = [forkw, lparen] + ([mods] if mods else []) + [vtype, name, colon, it, rparen, body]
        return _node("enhanced_for_statement", kids)

    def _parse_basic_for(self) -> Node:
        kids = [self.expect("for"), self.expect("(")]
        if self.at(";"):
            kids.append(self.advance())
        else:
            init = self.backtrack(self.parse_local_declaration)
            if init:
                kids.append(init)  # declaration owns its ';'
            else:
                kids.append(self.parse_expression())
                while self.at(","):
                    kids.append(self.advance())
                    kids.append(self.parse_expression())
                kids.append(self.expect(";"))
        if not self.at(";"):
            kids.append(self.parse_expression())
        kids.append(self.expect(";"))
        if not self.at(")"):
            kids.append(self.parse_expression())
            while self.at(","):
                kids.append(self.advance())
                kids.append(self.parse_expression())
        kids.append(self.expect(")"))
        kids.append(self.parse_statement())
        return _node("for_statement", kids)

    def parse_try(self) -> Node:
        kids = [self.expect("try")]
        if self.at("("):
            res = [self.advance()]
            while not self.at(")"):
                decl = self.backtrack(self.parse_resource)
                res.append(decl if decl else self.parse_expression())
                if self.at(";"):
                    res.append(self.advance())
            res.append(self.expect(")"))
            kids.append(_node("resource_specification", res))
        kids.append(self.parse_block())
        while self.at("catch"):
            ckids = [self.advance(), self.expect("(")]
            mods = self.parse_modifiers()
            if mods:
                ckids.append(mods)
            ckids.append(self.parse_type())
            while self.at("|"):
                ckids.append(self.advance())
                ckids.append(self.parse_type())
            ckids.append(self.expect_kind("identifier"))
            ckids.append(self.expect(")"))
            ckids.append(self.parse_block())
            kids.append(_node("catch_clause", ckids))
        if self.at("finally"):
            kids.append(_node("finally_clause", [self.advance(), self.parse_block()]))
        return _node("try_statement", kids)

    def parse_resource(self) -> Node:
        mods = self.parse_modifiers()
        rtype = self.parse_type()
        name = self.expect_kind("identifier")
        eq = self.expect("=")
        value = self.parse_expression()
        return _node("resource", ([mods] if mods else []) + [rtype, name, eq, value])

    def parse_switch(self) -> Node:
        kids = [self.expect("switch"), self.parse_paren_condition(), self.expect("{")]
        while self.peek() is not None and not self.at("}"):
            if self.at("case"):
                lab = [self.advance(), self.parse_expression()]
                while self.at(","):
                    lab.append(self.advance())
                    lab.append(self.parse_expression())
                lab.append(self.expect(":") if self.at(":") else self.expect("->"))
                kids.append(_node("switch_label", lab))
            elif self.at("default"):
                lab = [self.advance()]
                lab.append(self.expect(":") if self.at(":") else self.expect("->"))
                kids.append(_node("switch_label", lab))
            else:
                kids.append(self.parse_statement_recovering())
        kids.append(self.expect("}"))
        return _node("switch_statement", kids)

    def parse_return(self) -> Node:
        kids = [self.expect("return")]
        if not self.at(";"):
            kids.append(self.parse_expression())
        kids.append(self.expect(";"))
        return _node("return_statement", kids)

    def parse_throw(self) -> Node:
        return _node("throw_statement", [self.expect("throw"), self.parse_expression(), self.expect(";")])

    def parse_break_continue(self) -> Node:
        word = self.advance()  # anonymous keyword leaf, kind == its text
        kind = "break_statement" if word.kind == "break" else "continue_statement"
        kids = [word]
        if self.at_kind("identifier"):
            kids.append(self.advance())
        kids.append(self.expect(";"))
        return _node(kind, kids)

    def parse_synchronized(self) -> Node:
        return _node("synchronized_statement",
                     [self.expect("synchronized"), self.parse_paren_condition(), self.parse_block()])

    def parse_assert(self) -> Node:
        kids = [self.expect("assert"), self.parse_expression()]
        if self.at(":"):
            kids.append(self.advance())
            kids.append(self.parse_expression())
        kids.append(self.expect(";"))
        return _node("assert_statement", kids)

    def parse_yield(self) -> Node:
        return _node("yield_statement", [self.expect("yield"), self.parse_expression(), self.expect(";")])

    # ------------------------------------------------------------- expressions

    def parse_expression(self) -> Node:
        return self.parse_assignment()

    def parse_assignment(self) -> Node:
        lambda_node = self.backtrack(self.parse_lambda)
        if lambda_node:
            return lambda_node
        left = self.parse_ternary()
        tok = self.peek()
        if tok is not None and tok.text in ASSIGN_OPS and tok.kind == tok.text:
            op = self.advance()
            right = self.parse_assignment()
            return _node("assignment_expression", [left, op, right])
        return left

    def parse_lambda(self) -> Node:
        tok = self.peek()
        if tok is None:
            raise ParseFail("eof")
        if tok.kind == "identifier" and self.peek(1) is not None and self.peek(1).text == "->":
            name = self.advance()
            arrow = self.advance()
            body = self.parse_block() if self.at("{") else self.parse_expression()
            return _node("lambda_expression", [name, arrow, body])
        if tok.text == "(":
            # scan for ') ->'
            depth = 0
            idx = self.pos
            while idx < len(self.tokens):
                t = self.tokens[idx].text
                if t == "(":
                    depth += 1
                elif t == ")":
                    depth -= 1
                    if depth == 0:
                        break
                elif t in (";", "{"):
                    raise ParseFail("not a lambda")
                idx += 1
            if depth != 0 or idx + 1 >= len(self.tokens) or self.tokens[idx + 1].text != "->":
                raise ParseFail("not a lambda")
            params = self.backtrack(self.parse_formal_parameters)
            if params is None:
                params = [self.expect("(")]
                while not self.at(")"):
                    params.append(self.expect_kind("identifier"))
                    if self.at(","):
                        params.append(self.advance())
                params.append(self.expect(")"))
                params = _node("inferred_parameters", params)
            arrow = self.expect("->")
            body = self.parse_block() if self.at("{") else self.parse_expression()
            return _node("lambda_expression", [params, arrow, body])
        raise ParseFail("not a lambda")

    def parse_ternary(self) -> Node:
        cond = self.parse_binary(0)
        if self.at("?"):
            q = self.advance()
            then = self.parse_expression()
            colon = self.expect(":")
            other = self.parse_assignment()
            return _node("ternary_expression", [cond, q, then, colon, other])
        return cond

    def parse_binary(self, level: int) -> Node:
        if level >= len(BINARY_LEVELS):
            return self.parse_unary()
        ops = BINARY_LEVELS[level]
        left = self.parse_binary(level + 1)
        while True:
            tok = self.peek()
            if tok is None:
                return left
            if tok.text in ops and (tok.kind == tok.text or tok.text == "instanceof"):
                if tok.text == "instanceof":
                    op = self.advance()
                    right = self.parse_type()
                    left = _node("instanceof_expression", [left, op, right])
                    continue
                op = self.advance()
                right = self.parse_binary(level + 1)
                left = _node("binary_expression", [left, op, right])
                continue
            return left

    def parse_unary(self) -> Node:
        tok = self.peek()
        if tok is None:
            raise ParseFail("expected expression")
        if tok.text in ("+", "-", "!", "~") and tok.kind == tok.text:
            op = self.advance()
            return _node("unary_expression", [op, self.parse_unary()])
        if tok.text in ("++", "--"):
            op = self.advance()
            return _node("update_expression", [op, self.parse_unary()])
        cast = self.backtrack(self.parse_cast)
        if cast:
            return cast
        return self.parse_postfix()

    def parse_cast(self) -> Node:
        lp = self.expect("(")
        ctype = self.parse_type()
        rp = self.expect(")")
        nxt = self.peek()
        if nxt is None:
            raise ParseFail("eof after cast")
        primitive = ctype.kind in ("integral_type", "floating_point_type", "boolean_type")
        complex_type = ctype.kind in ("generic_type", "array_type", "scoped_type_identifier")
        starts_value = (
            nxt.kind in ("identifier",) or nxt.kind in LITERAL_TOKEN_KINDS
            or nxt.text in ("(", "this", "super", "new", "!", "~")
        )
        if primitive:
            starts_value = starts_value or nxt.text in ("+", "-", "++", "--")
        if not (primitive or complex_type) and not starts_value:
            raise ParseFail("ambiguous parens, not a cast")
        if (primitive or complex_type) and not starts_value and nxt.text not in ("+", "-"):
            raise ParseFail("cast without operand")
        return _node("cast_expression", [lp, ctype, rp, self.parse_unary()])

    def parse_argument_list(self) -> Node:
        kids = [self.expect("(")]
        while not self.at(")"):
            kids.append(self.parse_expression())
            if self.at(","):
                kids.append(self.advance())
            elif not self.at(")"):
                raise ParseFail("bad argument list")
        kids.append(self.expect(")"))
        return _node("argument_list", kids)

    def parse_postfix(self) -> Node:
        expr = self.parse_primary()
        while True:
            tok = self.peek()
            if tok is None:
                return expr
            if tok.text == "." and tok.kind == ".":
                nxt = self.peek(1)
                if nxt is None:
                    return expr
                if nxt.kind == "identifier":
                    dot = self.advance()
                    name = self.advance()
                    if self.at("("):
                        args = self.parse_argument_list()
                        expr = _node("method_invocation", [expr, dot, name, args])
                    else:
                        expr = _node("field_access", [expr, dot, name])
                    continue
                if nxt.text == "class":
                    dot = self.advance()
                    cls = self.advance()
                    expr = _node("class_literal", [expr, dot, cls])
                    continue
                if nxt.text == "new":  # qualified creation, rare
                    raise ParseFail("qualified new unsupported")
                return expr
            if tok.text == "[" and tok.kind == "[":
                lb = self.advance()
                index = self.parse_expression()
                rb = self.expect("]")
                expr = _node("array_access", [expr, lb, index, rb])
                continue
            if tok.text == "(" and tok.kind == "(" and expr.kind == "identifier":
                args = self.parse_argument_list()
                expr = _node("method_invocation", [expr, args])
                continue
            if tok.text in ("++", "--"):
                op = self.advance()
                expr = _node("update_expression", [expr, op])
                continue
            if tok.text == "::":
                op = self.advance()
                name = self.advance() if (self.at_kind("identifier") or self.at("new")) else None
                if name is None:
                    raise ParseFail("bad method reference")
                expr = _node("method_reference", [expr, op, name])
                continue
            return expr

    def parse_primary(self) -> Node:
        tok = self.peek()
        if tok is None:
            raise ParseFail("expected expression")
        if tok.kind in LITERAL_TOKEN_KINDS:
            return self.advance()
        if tok.kind == "identifier":
            return self.advance()
        if tok.kind == "keyword":
            if tok.text in NAMED_LITERALS:
                return self.advance()
            if tok.text == "new":
                return self.parse_new()
            if tok.text in PRIMITIVE_KINDS:  # int.class, int[]::new edge: parse as type leaf
                saved = self.pos
                t = self.parse_type(allow_void=True)
                if self.at(".") and self.peek(1) is not None and self.peek(1).text == "class":
                    return t
                self.pos = saved
                raise ParseFail("primitive in expression position")
            if tok.text == "switch":
                raise ParseFail("switch expression unsupported")
        if tok.text == "(" and tok.kind == "(":
            lp = self.advance()
            inner = self.parse_expression()
            rp = self.expect(")")
            return _node("parenthesized_expression", [lp, inner, rp])
        raise ParseFail(f"unexpected token {tok.text!r}")

    def parse_new(self) -> Node:
        kw = self.expect("new")
        ntype = self.parse_type_no_dims()
        if self.at("["):
            kids = [kw, ntype]
            while self.at("["):
                lb = self.advance()
                if self.at("]"):
                    kids.append(_node("dimensions", [lb, self.advance()]))
                else:
                    size = self.parse_expression()
                    kids.append(_node("dimensions_expr", [lb, size, self.expect("]")]))
            if self.at("{"):
                kids.append(self.parse_array_initializer())
            return _node("array_creation_expression", kids)
        args = self.parse_argument_list()
        kids = [kw, ntype, args]
        if self.at("{"):  # anonymous class
            kids.append(self.parse_class_body())
        return _node("object_creation_expression", kids)

    def parse_type_no_dims(self) -> Node:
        tok = self.peek()
        if tok is None:
            raise ParseFail("expected type")
        if tok.kind == "keyword" and tok.text in PRIMITIVE_KINDS and tok.text != "void":
            word = self.advance()
            return Node(PRIMITIVE_KINDS[tok.text], word.start, word.end, named=True, children=[word])
        base = Node("type_identifier", *self.expect_kind("identifier").span, named=True)
        while self.at(".") and self.peek(1) is not None and self.peek(1).kind == "identifier":
            dot = self.advance()
            nxt = self.advance()
            base = _node("scoped_type_identifier", [base, dot, Node("type_identifier", nxt.start, nxt.end, named=True)])
        if self.at("<"):
            base = _node("generic_type", [base, self.parse_type_arguments()])
        return base

    def parse_array_initializer(self) -> Node:
        kids = [self.expect("{")]
        while not self.at("}"):
            if self.at("{"):
                kids.append(self.parse_array_initializer())
            else:
                kids.append(self.parse_expression())
            if self.at(","):
                kids.append(self.advance())
            elif not self.at("}"):
                raise ParseFail("bad array initializer")
        kids.append(self.expect("}"))
        return _node("array_initializer", kids)


def _splice_comments(root: Node, comments: list[JavaToken]) -> None:
    for tok in comments:
        leaf = Node(tok.kind, tok.start, tok.end, named=True)
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


def parse_java(source: bytes) -> Node:
    parser = JavaParser(source)
    root = parser.parse_program()
    _splice_comments(root, parser.comments)
    return root
