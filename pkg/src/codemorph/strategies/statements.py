"""Statement-level rewrites: returns, declarations, comparisons,
compound assignments, unary updates and brace normalization."""

from __future__ import annotations

from codemorph.edits import Edit
from codemorph.lang import Language
from codemorph.strategies.base import Category, Site, TransformConfig, per_site, register
from codemorph.strategies.common import (
    all_identifier_texts,
    fresh_name,
    indent_at,
    java_declared_types,
    java_for_parts,
    line_start,
    no_comments,
    parent_map,
    text,
)
from codemorph.tree import COMMENT_KINDS, Node, SyntaxTree

JAVA = Language.JAVA
PY = Language.PYTHON

COMPLEMENT = {"<": ">=", ">": "<=", "<=": ">", ">=": "<", "==": "!=", "!=": "=="}
MIRROR = {"<": ">", ">": "<", "<=": ">=", ">=": "<=", "==": "==", "!=": "!="}

JAVA_LITERAL_TYPES = {
    "decimal_integer_literal": "int",
    "hex_integer_literal": "int",
    "octal_integer_literal": "int",
    "binary_integer_literal": "int",
    "decimal_floating_point_literal": "double",
    "string_literal": "String",
    "character_literal": "char",
    "true": "boolean",
    "false": "boolean",
}

PY_LITERAL_KINDS = frozenset({"integer", "float", "string", "true", "false", "none"})

ATOMIC_VALUE_KINDS = frozenset({
    "identifier", "integer", "float", "string", "true", "false", "none",
    "decimal_integer_literal", "hex_integer_literal", "octal_integer_literal",
    "binary_integer_literal", "decimal_floating_point_literal",
    "hex_floating_point_literal", "string_literal", "character_literal",
    "null_literal", "parenthesized_expression", "call", "method_invocation",
    "attribute", "field_access", "subscript", "array_access", "this",
})

# python parents under which `not (...)` keeps its meaning without parens
PY_NOT_SAFE_PARENTS = frozenset({
    "expression_statement", "assignment", "augmented_assignment",
    "return_statement", "if_statement", "while_statement", "elif_clause",
    "boolean_operator", "not_operator", "parenthesized_expression",
    "argument_list", "keyword_argument", "pair", "list", "tuple", "set",
    "conditional_expression", "assert_statement", "expression_list",
    "if_clause", "named_expression", "lambda", "subscript", "yield",
    "with_item", "default_parameter", "typed_default_parameter",
})


def _owns_line(tree: SyntaxTree, node: Node) -> bool:
    start = line_start(tree.source, node.start)
    return not tree.source[start:node.start].strip()


def _java_literal_java_type(tree: SyntaxTree, node: Node) -> str | None:
    base = JAVA_LITERAL_TYPES.get(node.kind)
    if base is None:
        return None
    txt = text(tree, node).lower()
    if node.kind.endswith("integer_literal") and txt.endswith("l"):
        return "long"
    if node.kind == "decimal_floating_point_literal" and txt.endswith("f"):
        return "float"
    return base


# --------------------------------------------------------------------- GS-1

def _gs1_find(tree: SyntaxTree) -> list[Site]:
    sites = []
    for node in tree.root.walk():
        if node.kind != "return_statement":
            continue
        values = [c for c in node.children if c.named and c.kind not in COMMENT_KINDS]
        if len(values) != 1:
            continue
        value = values[0]
        if tree.language is JAVA:
            if _java_literal_java_type(tree, value) is None:
                continue
        elif value.kind not in PY_LITERAL_KINDS or not _owns_line(tree, node):
            continue  # python inline suites cannot take the two-line form
        sites.append(Site(node.start, node.end, value))
    return sites


def _gs1_build(tree: SyntaxTree, site: Site, config: TransformConfig) -> list[Edit]:
    node_span = (site.start, site.end)
    value = site.data
    taken = all_identifier_texts(tree)
    name = fresh_name("ret", taken)
    indent = indent_at(tree.source, site.start)
    lit = tree.bytes_of(value)
    if tree.language is JAVA:
        jtype = _java_literal_java_type(tree, value)
        decl = jtype.encode() + b" " + name.encode() + b" = " + lit + b";"
        ret = b"return " + name.encode() + b";"
        if tree.source[line_start(tree.source, site.start):site.start].strip():
            new = decl + b" " + ret  # mid-line return keeps one line
        else:
            new = decl + b"\n" + indent + ret
    else:
        new = name.encode() + b" = " + lit + b"\n" + indent + b"return " + name.encode()
    return [Edit(node_span[0], node_span[1], new)]


register("GS-1", Category.GRAMMATICAL_STATEMENT, {JAVA, PY},
         "return a literal through a fresh local variable",
         "no literal-returning statement")(per_site(_gs1_find, _gs1_build))


# --------------------------------------------------------------------- GS-2

def _decl_parts(decl: Node) -> tuple[Node | None, list[Node]]:
    type_node = next((c for c in decl.children if c.kind.endswith("_type")
                      or c.kind in ("type_identifier", "generic_type", "array_type", "scoped_type_identifier")), None)
    declarators = [c for c in decl.children if c.kind == "variable_declarator"]
    return type_node, declarators


def _gs2_find(tree: SyntaxTree) -> list[Site]:
    sites = []
    for block in tree.root.walk():
        stmts = [c for c in no_comments(block) if c.named or c.kind == ";"]
        for prev, nxt in zip(stmts, stmts[1:]):
            if prev.kind != "local_variable_declaration" or nxt.kind != "for_statement":
                continue
            type_node, declarators = _decl_parts(prev)
            if type_node is None or len(declarators) != 1 or len(declarators[0].children) != 1:
                continue  # needs exactly `T name;` with no initializer
            name = text(tree, declarators[0].children[0])
            parts = java_for_parts(nxt)
            if parts["init_decl"] is not None or len(parts["init_exprs"]) != 1:
                continue
            init = parts["init_exprs"][0]
            if init.kind != "assignment_expression" or init.children[0].kind != "identifier":
                continue
            if text(tree, init.children[0]) != name or text(tree, init.children[1]) != "=":
                continue
            used_after = any(
                leaf.kind == "identifier" and leaf.start >= nxt.end and text(tree, leaf) == name
                for leaf in tree.root.leaves())
            if used_after or not _owns_line(tree, prev):
                continue
            sites.append(Site(prev.start, nxt.end, (prev, init, type_node)))
    return sites


def _gs2_build(tree: SyntaxTree, site: Site, config: TransformConfig) -> list[Edit]:
    decl, init, type_node = site.data
    start = line_start(tree.source, decl.start)
    end = decl.end
    # eat the rest of the declaration's line
    while end < len(tree.source) and tree.source[end:end + 1] in (b" ", b"\t"):
        end += 1
    if tree.source[end:end + 1] == b"\n":
        end += 1
    return [
        Edit(start, end, b""),
        Edit(init.start, init.start, tree.bytes_of(type_node) + b" "),
    ]


register("GS-2", Category.GRAMMATICAL_STATEMENT, {JAVA},
         "move a preceding bare declaration into the for-loop header",
         "no declaration immediately preceding a matching for loop")(per_site(_gs2_find, _gs2_build))


# --------------------------------------------------------------------- GS-3

def _gs3_find(tree: SyntaxTree) -> list[Site]:
    sites = []
    for node in tree.root.walk():
        if node.kind != "for_statement":
            continue
        parts = java_for_parts(node)
        decl = parts["init_decl"]
        if decl is None:
            continue
        type_node, declarators = _decl_parts(decl)
        if type_node is None or len(declarators) != 1:
            continue
        declarator = declarators[0]
        if len(declarator.children) < 3:  # name '=' value required
            continue
        name = text(tree, declarator.children[0])
        outside = any(
            leaf.kind == "identifier" and text(tree, leaf) == name
            and not (node.start <= leaf.start < node.end)
            for leaf in tree.root.leaves())
        if outside:
            continue
        sites.append(Site(node.start, node.end, (decl, type_node, declarator)))
    return sites


def _gs3_build(tree: SyntaxTree, site: Site, config: TransformConfig) -> list[Edit]:
    decl, type_node, declarator = site.data
    indent = indent_at(tree.source, site.start)
    name = text(tree, declarator.children[0])
    decl_line = tree.bytes_of(type_node) + b" " + name.encode() + b";\n" + indent
    return [
        Edit(site.start, site.start, decl_line),  # after the line indent
        Edit(type_node.start, declarator.start, b""),
    ]


register("GS-3", Category.GRAMMATICAL_STATEMENT, {JAVA},
         "move the for-loop declaration out of the header",
         "no for loop declaring its counter")(per_site(_gs3_find, _gs3_build))


# --------------------------------------------------------------------- GS-4

def _gs4_find(tree: SyntaxTree) -> list[Site]:
    sites = []
    parents = parent_map(tree.root)
    for node in tree.root.walk():
        if node.kind != "local_variable_declaration":
            continue
        parent = parents.get(id(node))
        if parent is not None and parent.kind == "for_statement":
            continue
        mods = node.child_of_kind("modifiers")
        if mods is not None and any(c.kind == "final" for c in mods.children):
            continue
        type_node, declarators = _decl_parts(node)
        if type_node is None or len(declarators) != 1:
            continue
        declarator = declarators[0]
        kids = declarator.children
        if len(kids) < 3 or kids[-2].kind != "=":
            continue
        if kids[-1].kind == "array_initializer":
            continue  # `{...}` shorthand is illegal after the split
        sites.append(Site(node.start, node.end, (type_node, declarator)))
    return sites


def _gs4_build(tree: SyntaxTree, site: Site, config: TransformConfig) -> list[Edit]:
    type_node, declarator = site.data
    kids = declarator.children
    eq_index = next(i for i, c in enumerate(kids) if c.kind == "=")
    name_and_dims = tree.source[kids[0].start:kids[eq_index - 1].end]
    name = tree.bytes_of(kids[0])
    value = tree.source[kids[eq_index + 1].start:kids[-1].end]
    new = tree.bytes_of(type_node) + b" " + name_and_dims + b"; " + name + b" = " + value + b";"
    return [Edit(site.start, site.end, new)]


register("GS-4", Category.GRAMMATICAL_STATEMENT, {JAVA},
         "split a declaration with initializer into declare-then-assign",
         "no splittable declaration")(per_site(_gs4_find, _gs4_build))


# --------------------------------------------------------------------- GS-5 / GS-6

def _comparison_sites(tree: SyntaxTree) -> list[tuple[Node, Node, Node, Node]]:
    """(node, left, op_leaf, right) for single-operator comparisons."""
    out = []
    for node in tree.root.walk():
        if tree.language is JAVA:
            if node.kind != "binary_expression" or len(node.children) != 3:
                continue
            left, op, right = node.children
            if op.kind not in COMPLEMENT:
                continue
        else:
            if node.kind != "comparison_operator":
                continue
            kids = [c for c in node.children if c.kind not in COMMENT_KINDS]
            if len(kids) != 3:
                continue  # chained comparisons excluded
            left, op, right = kids
            if op.kind not in COMPLEMENT:
                continue
        out.append((node, left, op, right))
    return out


def _is_float_operand(tree: SyntaxTree, node: Node, declared: dict[str, str]) -> bool:
    if node.kind in ("decimal_floating_point_literal", "hex_floating_point_literal", "float"):
        return True
    if node.kind == "identifier" and declared.get(text(tree, node)) == "floating_point_type":
        return True
    return False


def _gs5_find(tree: SyntaxTree) -> list[Site]:
    declared = java_declared_types(tree) if tree.language is JAVA else {}
    parents = parent_map(tree.root)
    sites = []
    for node, left, op, right in _comparison_sites(tree):
        if _is_float_operand(tree, left, declared) or _is_float_operand(tree, right, declared):
            continue  # complement negation is unsound around NaN
        parent = parents.get(id(node))
        needs_parens = (tree.language is PY and parent is not None
                        and parent.kind not in PY_NOT_SAFE_PARENTS)
        sites.append(Site(node.start, node.end, (left, op, right, needs_parens)))
    return sites


def _gs5_build(tree: SyntaxTree, site: Site, config: TransformConfig) -> list[Edit]:
    left, op, right, needs_parens = site.data
    comp = COMPLEMENT[op.kind].encode()
    inner = tree.bytes_of(left) + b" " + comp + b" " + tree.bytes_of(right)
    if tree.language is JAVA:
        new = b"!(" + inner + b")"
    else:
        new = b"not (" + inner + b")"
        if needs_parens:
            new = b"(" + new + b")"
    return [Edit(site.start, site.end, new)]


register("GS-5", Category.GRAMMATICAL_STATEMENT, {JAVA, PY},
         "negate a comparison and complement its operator",
         "no eligible comparison")(per_site(_gs5_find, _gs5_build))


def _gs6_find(tree: SyntaxTree) -> list[Site]:
    atoms = frozenset({
        "identifier", "integer", "float", "true", "false", "none",
        "decimal_integer_literal", "hex_integer_literal", "octal_integer_literal",
        "binary_integer_literal", "decimal_floating_point_literal",
        "string_literal", "character_literal", "null_literal",
        "field_access", "attribute", "this",
    })
    sites = []
    for node, left, op, right in _comparison_sites(tree):
        if left.kind not in atoms or right.kind not in atoms:
            continue  # operand evaluation order becomes observable otherwise
        sites.append(Site(node.start, node.end, (left, op, right)))
    return sites


def _gs6_build(tree: SyntaxTree, site: Site, config: TransformConfig) -> list[Edit]:
    left, op, right = site.data
    new = tree.bytes_of(right) + b" " + MIRROR[op.kind].encode() + b" " + tree.bytes_of(left)
    return [Edit(site.start, site.end, new)]


register("GS-6", Category.GRAMMATICAL_STATEMENT, {JAVA, PY},
         "mirror a comparison by swapping its operands",
         "no comparison over side-effect-free operands")(per_site(_gs6_find, _gs6_build))


# --------------------------------------------------------------------- GS-7

def _gs7_find(tree: SyntaxTree) -> list[Site]:
    sites = []
    for node in tree.root.walk():
        if tree.language is JAVA:
            if node.kind != "assignment_expression" or len(no_comments(node)) != 3:
                continue
            target, op, value = no_comments(node)
            if op.kind == "=" or not op.kind.endswith("="):
                continue
        else:
            if node.kind != "augmented_assignment" or len(no_comments(node)) != 3:
                continue
            target, op, value = no_comments(node)
        if target.kind != "identifier":
            continue  # subscript/field targets would be evaluated twice
        sites.append(Site(node.start, node.end, (target, op, value)))
    return sites


def _gs7_build(tree: SyntaxTree, site: Site, config: TransformConfig) -> list[Edit]:
    target, op, value = site.data
    bin_op = op.kind[:-1].encode()
    name = tree.bytes_of(target)
    value_bytes = tree.bytes_of(value)
    if value.kind not in ATOMIC_VALUE_KINDS:
        value_bytes = b"(" + value_bytes + b")"
    return [Edit(site.start, site.end, name + b" = " + name + b" " + bin_op + b" " + value_bytes)]


register("GS-7", Category.GRAMMATICAL_STATEMENT, {JAVA, PY},
         "expand a compound assignment into its long form",
         "no compound assignment with a simple target")(per_site(_gs7_find, _gs7_build))


# --------------------------------------------------------------------- GS-8

def _gs8_find(tree: SyntaxTree) -> list[Site]:
    sites = []
    for node in tree.root.walk():
        if node.kind != "expression_statement":
            continue
        exprs = [c for c in node.children if c.named and c.kind not in COMMENT_KINDS]
        if len(exprs) != 1 or exprs[0].kind != "update_expression":
            continue
        update = exprs[0]
        operand = next((c for c in update.children if c.kind == "identifier"), None)
        op = next((c for c in update.children if c.kind in ("++", "--")), None)
        if operand is None or op is None:
            continue
        sites.append(Site(update.start, update.end, (operand, op)))
    return sites


def _gs8_build(tree: SyntaxTree, site: Site, config: TransformConfig) -> list[Edit]:
    operand, op = site.data
    name = tree.bytes_of(operand)
    sign = b"+" if op.kind == "++" else b"-"
    return [Edit(site.start, site.end, name + b" = " + name + b" " + sign + b" 1")]


register("GS-8", Category.GRAMMATICAL_STATEMENT, {JAVA},
         "expand an increment/decrement statement into an assignment",
         "no increment/decrement statement")(per_site(_gs8_find, _gs8_build))


# --------------------------------------------------------------------- GS-9 / GS-10

_JAVA_BODY_SLOTS = (
    ("if_statement", "consequence"), ("if_statement", "alternative"),
    ("while_statement", "body"), ("for_statement", "body"),
    ("enhanced_for_statement", "body"), ("do_statement", "body"),
)


def _java_control_bodies(tree: SyntaxTree):
    """(owner, body_statement, role) triples for brace-sensitive slots."""
    for node in tree.root.walk():
        kids = no_comments(node)
        if node.kind == "if_statement":
            consequence, alternative = kids[2], None
            for i, child in enumerate(kids):
                if child.kind == "else" and i + 1 < len(kids):
                    alternative = kids[i + 1]
            yield node, consequence, "consequence"
            if alternative is not None:
                yield node, alternative, "alternative"
        elif node.kind in ("while_statement", "enhanced_for_statement", "for_statement"):
            yield node, kids[-1], "body"
        elif node.kind == "do_statement":
            yield node, kids[1], "body"


def _gs9_find(tree: SyntaxTree) -> list[Site]:
    sites = []
    for owner, body, role in _java_control_bodies(tree):
        if body.kind == "block" or body.kind in COMMENT_KINDS:
            continue
        if role == "alternative" and body.kind == "if_statement":
            continue  # keep else-if chains; that reshaping is B-4's job
        if body.kind == "local_variable_declaration":
            continue
        sites.append(Site(body.start, body.end, body))
    return sites


def _gs9_build(tree: SyntaxTree, site: Site, config: TransformConfig) -> list[Edit]:
    return [Edit(site.start, site.start, b"{ "), Edit(site.end, site.end, b" }")]


register("GS-9", Category.GRAMMATICAL_STATEMENT, {JAVA},
         "wrap single-statement control bodies in braces",
         "no brace-less control body")(per_site(_gs9_find, _gs9_build))


def _trailing_open_if(node: Node) -> bool:
    """True when node ends in an if with no else (an unbraced trailing
    position a following `else` would rebind to)."""
    if node.kind == "if_statement":
        alternative = None
        for i, child in enumerate(node.children):
            if child.kind == "else" and i + 1 < len(node.children):
                alternative = node.children[i + 1]
        return True if alternative is None else _trailing_open_if(alternative)
    if node.kind in ("while_statement", "for_statement", "enhanced_for_statement", "labeled_statement"):
        return _trailing_open_if(node.children[-1])
    return False


def _gs10_find(tree: SyntaxTree) -> list[Site]:
    sites = []
    for owner, body, role in _java_control_bodies(tree):
        if body.kind != "block":
            continue
        kids = body.children
        if len(kids) != 3:  # exactly '{' stmt '}' (comments disqualify)
            continue
        stmt = kids[1]
        if stmt.kind == "local_variable_declaration" or stmt.kind in COMMENT_KINDS or stmt.kind == ";":
            continue
        after = tree.source[body.end:].lstrip()
        if after.startswith(b"else") and _trailing_open_if(stmt):
            continue  # dangling else would rebind
        sites.append(Site(body.start, body.end, (body, stmt)))
    return sites


def _gs10_build(tree: SyntaxTree, site: Site, config: TransformConfig) -> list[Edit]:
    body, stmt = site.data
    return [Edit(body.start, stmt.start, b""), Edit(stmt.end, body.end, b"")]


register("GS-10", Category.GRAMMATICAL_STATEMENT, {JAVA},
         "unwrap single-statement blocks by dropping their braces",
         "no single-statement block")(per_site(_gs10_find, _gs10_build))
