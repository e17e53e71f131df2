"""Matching and text-surgery helpers shared by the strategy modules."""

from __future__ import annotations

import builtins

from codemorph.tree import COMMENT_KINDS, Node, SyntaxTree

JAVA_STATEMENT_KINDS = frozenset({
    "local_variable_declaration", "expression_statement", "if_statement",
    "while_statement", "do_statement", "for_statement", "enhanced_for_statement",
    "try_statement", "switch_statement", "return_statement", "throw_statement",
    "break_statement", "continue_statement", "synchronized_statement",
    "assert_statement", "labeled_statement", "block", "yield_statement", ";",
})

PY_STATEMENT_KINDS = frozenset({
    "expression_statement", "if_statement", "while_statement", "for_statement",
    "try_statement", "with_statement", "function_definition", "class_definition",
    "decorated_definition", "return_statement", "pass_statement",
    "break_statement", "continue_statement", "import_statement",
    "import_from_statement", "raise_statement", "global_statement",
    "nonlocal_statement", "delete_statement", "assert_statement",
})

PY_BUILTINS = frozenset(dir(builtins)) | frozenset(("self", "cls"))


def parent_map(root: Node) -> dict[int, Node]:
    parents: dict[int, Node] = {}
    for node in root.walk():
        for child in node.children:
            parents[id(child)] = node
    return parents


def ancestors(parents: dict[int, Node], node: Node):
    cur = parents.get(id(node))
    while cur is not None:
        yield cur
        cur = parents.get(id(cur))


def nearest(parents: dict[int, Node], node: Node, kinds: frozenset[str] | set[str]) -> Node | None:
    for anc in ancestors(parents, node):
        if anc.kind in kinds:
            return anc
    return None


def text(tree: SyntaxTree, node: Node) -> str:
    return tree.text_of(node)


def no_comments(node: Node) -> list[Node]:
    """Children with spliced comment leaves filtered out, for positional
    matching."""
    return [c for c in node.children if c.kind not in COMMENT_KINDS]


def line_start(source: bytes, pos: int) -> int:
    nl = source.rfind(b"\n", 0, pos)
    return nl + 1


def line_end(source: bytes, pos: int) -> int:
    nl = source.find(b"\n", pos)
    return len(source) if nl == -1 else nl


def indent_at(source: bytes, pos: int) -> bytes:
    """Leading whitespace of the line containing pos."""
    start = line_start(source, pos)
    end = start
    while end < len(source) and source[end:end + 1] in (b" ", b"\t"):
        end += 1
    return source[start:end]


def indent_unit(source: bytes, node: Node) -> bytes:
    """Indentation step inferred from the first indented line under node;
    falls back to four spaces."""
    base = indent_at(source, node.start)
    segment = source[node.start:node.end]
    for raw_line in segment.split(b"\n")[1:]:
        stripped = raw_line.lstrip(b" \t")
        if not stripped:
            continue
        indent = raw_line[: len(raw_line) - len(stripped)]
        if len(indent) > len(base):
            return indent[len(base):]
    return b"    "


def all_identifier_texts(tree: SyntaxTree) -> set[str]:
    names = set()
    for node in tree.root.walk():
        if node.kind in ("identifier", "type_identifier") and node.is_leaf:
            names.add(text(tree, node))
    return names


def fresh_name(base: str, taken: set[str]) -> str:
    k = 1
    while f"{base}{k}" in taken:
        k += 1
    return f"{base}{k}"


def statements_of_block(block: Node, language_kinds: frozenset[str]) -> list[Node]:
    return [c for c in block.children if c.kind in language_kinds and c.kind not in COMMENT_KINDS]


def has_multiline_string(tree: SyntaxTree, node: Node) -> bool:
    """True when any string leaf under node spans lines; reindenting such
    a region would rewrite string contents."""
    for leaf in node.leaves():
        if leaf.kind in ("string", "string_literal", "text_block") and "\n" in tree.text_of(leaf):
            return True
    return False


def reindent(block_text: bytes, old_indent: bytes, new_indent: bytes) -> bytes | None:
    """Shift every line from old_indent to new_indent; None when a
    non-blank line does not begin with old_indent."""
    out: list[bytes] = []
    for i, line in enumerate(block_text.split(b"\n")):
        if i == 0:
            out.append(line)  # first line starts mid-line at the anchor
            continue
        if not line.strip():
            out.append(line)
            continue
        if not line.startswith(old_indent):
            return None
        out.append(new_indent + line[len(old_indent):])
    return b"\n".join(out)


# ------------------------------------------------------------------ Java shapes

def java_if_parts(node: Node) -> tuple[Node, Node, Node | None]:
    """(condition_parens, consequence, alternative|None) of an if_statement."""
    kids = no_comments(node)
    cond = kids[1]
    consequence = kids[2]
    alternative = None
    for i, child in enumerate(kids):
        if child.kind == "else" and i + 1 < len(kids):
            alternative = kids[i + 1]
    return cond, consequence, alternative


def java_condition_expr(paren: Node) -> Node:
    # parenthesized_expression is [ '(', expr, ')' ]
    return no_comments(paren)[1]


def java_for_parts(node: Node) -> dict:
    """Positional split of for_statement children."""
    kids = [c for c in node.children if c.kind not in COMMENT_KINDS]
    out = {"init_decl": None, "init_exprs": [], "cond": None, "update": [], "body": kids[-1]}
    i = 2  # skip 'for' '('
    if kids[i].kind == "local_variable_declaration":
        out["init_decl"] = kids[i]
        i += 1
    else:
        while kids[i].kind != ";":
            if kids[i].kind != ",":
                out["init_exprs"].append(kids[i])
            i += 1
        i += 1  # ';'
    if kids[i].kind != ";":
        out["cond"] = kids[i]
        i += 1
    i += 1  # ';'
    while kids[i].kind != ")":
        if kids[i].kind != ",":
            out["update"].append(kids[i])
        i += 1
    return out


def java_block_statements(block: Node) -> list[Node]:
    return statements_of_block(block, JAVA_STATEMENT_KINDS)


def java_method_bodies(tree: SyntaxTree) -> list[Node]:
    bodies = []
    for node in tree.root.walk():
        if node.kind in ("method_declaration", "constructor_declaration"):
            block = node.child_of_kind("block")
            if block is not None:
                bodies.append(block)
    return bodies


def java_declared_types(tree: SyntaxTree) -> dict[str, str]:
    """identifier -> declared type kind for locals/params/fields, used to
    infer floating-ness."""
    out: dict[str, str] = {}
    for node in tree.root.walk():
        if node.kind in ("local_variable_declaration", "field_declaration"):
            type_node = next((c for c in node.children
                              if c.kind.endswith("_type") or c.kind in ("type_identifier", "generic_type", "array_type", "scoped_type_identifier")), None)
            if type_node is None:
                continue
            for decl in node.children:
                if decl.kind == "variable_declarator":
                    out[_leaf_key(tree, decl.children[0])] = type_node.kind
        elif node.kind == "formal_parameter":
            type_node = node.children[-2] if len(node.children) >= 2 else None
            name = node.children[-1]
            if type_node is not None and name.kind == "identifier":
                out[_leaf_key(tree, name)] = type_node.kind
    return out


def _leaf_key(tree: SyntaxTree, node: Node) -> str:
    return tree.text_of(node)


# ------------------------------------------------------------------ Python shapes

def py_block_of(node: Node) -> Node | None:
    return node.child_of_kind("block")


def py_block_statements(block: Node) -> list[Node]:
    return statements_of_block(block, PY_STATEMENT_KINDS)


def py_function_bodies(tree: SyntaxTree) -> list[Node]:
    return [py_block_of(n) for n in tree.root.walk()
            if n.kind == "function_definition" and py_block_of(n) is not None]


def anchor_statement_block(tree: SyntaxTree) -> tuple[Node, list[Node]] | None:
    """The statement list junk/comment insertion anchors to: the first
    function/method body when one exists, else the top-level statements."""
    if tree.language.value == "java":
        bodies = java_method_bodies(tree)
        if bodies:
            return bodies[0], java_block_statements(bodies[0])
        stmts = statements_of_block(tree.root, JAVA_STATEMENT_KINDS)
        if stmts:
            return tree.root, stmts
        return None
    for node in tree.root.walk():
        if node.kind == "function_definition":
            block = py_block_of(node)
            if block is not None:
                return block, py_block_statements(block)
    stmts = statements_of_block(tree.root, PY_STATEMENT_KINDS)
    if stmts:
        return tree.root, stmts
    return None


def is_pure_expression(node: Node, allow_calls: bool = False) -> bool:
    """Side-effect-free check: identifiers, literals, arithmetic/boolean
    operators, comparisons, parens and (for Java) field access."""
    pure_leaf = {
        "identifier", "integer", "float", "true", "false", "none",
        "decimal_integer_literal", "hex_integer_literal", "octal_integer_literal",
        "binary_integer_literal", "decimal_floating_point_literal",
        "hex_floating_point_literal", "character_literal", "null_literal", "string",
        "string_literal",
    }
    pure_inner = {
        "binary_operator", "unary_operator", "boolean_operator", "not_operator",
        "comparison_operator", "parenthesized_expression", "binary_expression",
        "unary_expression", "field_access",
    }
    for sub in node.walk():
        if sub.is_leaf:
            if sub.named and sub.kind not in pure_leaf:
                return False
        elif sub.kind not in pure_inner:
            if not (allow_calls and sub.kind in ("call", "method_invocation", "argument_list")):
                return False
    return True
