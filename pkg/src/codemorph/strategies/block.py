"""Block-level rewrites: loop conversions, else-if reshaping, branch
negation/swap, condition splitting and initializer extraction."""

from __future__ import annotations

from codemorph.edits import Edit
from codemorph.lang import Language
from codemorph.strategies.base import Category, Site, TransformConfig, per_site, register
from codemorph.strategies.common import (
    all_identifier_texts,
    ancestors,
    fresh_name,
    has_multiline_string,
    indent_at,
    indent_unit,
    is_pure_expression,
    java_for_parts,
    java_if_parts,
    line_start,
    no_comments,
    parent_map,
    py_block_statements,
    reindent,
    text,
)
from codemorph.tree import COMMENT_KINDS, Node, SyntaxTree

JAVA = Language.JAVA
PY = Language.PYTHON

LOOP_KINDS = frozenset({"for_statement", "while_statement", "do_statement", "enhanced_for_statement"})


def _has_owned_continue(parents, loop: Node) -> bool:
    """A continue bound to this loop (or any labeled continue) would skip a
    relocated update statement."""
    for node in loop.walk():
        if node.kind != "continue_statement":
            continue
        if any(c.kind == "identifier" for c in node.children):
            return True  # labeled continue: resolving the label is not worth it
        owner = None
        for anc in ancestors(parents, node):
            if anc.kind in LOOP_KINDS:
                owner = anc
                break
        if owner is loop:
            return True
    return False


def _owns_line(tree: SyntaxTree, node: Node) -> bool:
    return not tree.source[line_start(tree.source, node.start):node.start].strip()


# --------------------------------------------------------------------- B-1

def _b1_java_find(tree: SyntaxTree) -> list[Site]:
    parents = parent_map(tree.root)
    sites = []
    for node in tree.root.walk():
        if node.kind != "for_statement":
            continue
        if _has_owned_continue(parents, node):
            continue
        if not _owns_line(tree, node):
            continue
        parts = java_for_parts(node)
        decl = parts["init_decl"]
        if decl is not None:
            # moving the declaration up must not collide with outer names
            names = [text(tree, d.children[0]) for d in no_comments(decl)
                     if d.kind == "variable_declarator"]
            outside = any(
                leaf.kind == "identifier" and text(tree, leaf) in names
                and not (node.start <= leaf.start < node.end)
                for leaf in tree.root.leaves())
            if outside:
                continue
        sites.append(Site(node.start, node.end, parts))
    return sites


def _b1_java_build(tree: SyntaxTree, site: Site, config: TransformConfig) -> list[Edit]:
    parts = site.data
    src = tree.source
    indent = indent_at(src, site.start)
    body = parts["body"]
    init_text = b""
    if parts["init_decl"] is not None:
        init_text = tree.bytes_of(parts["init_decl"])
    elif parts["init_exprs"]:
        init_text = b" ".join(tree.bytes_of(e) + b";" for e in parts["init_exprs"])
    cond_text = tree.bytes_of(parts["cond"]) if parts["cond"] is not None else b"true"
    update_stmts = b" ".join(tree.bytes_of(u) + b";" for u in parts["update"])
    head = (init_text + b"\n" + indent) if init_text else b""
    head += b"while (" + cond_text + b") "
    edits = []
    if body.kind == "block":
        edits.append(Edit(site.start, body.start, head))
        if update_stmts:
            body_kids = no_comments(body)
            stmts = [c for c in body_kids if c.kind not in ("{", "}")]
            closing = body_kids[-1]
            single_line = bool(src[line_start(src, closing.start):closing.start].strip())
            if not stmts or single_line:
                edits.append(Edit(closing.start, closing.start, update_stmts + b" "))
            else:
                # the closing brace line already carries the loop indent;
                # prepend only the extra depth so the update sits with the body
                inner_indent = indent_at(src, stmts[0].start)
                extra = inner_indent[len(indent):] if inner_indent.startswith(indent) else b"    "
                edits.append(Edit(closing.start, closing.start,
                                  extra + update_stmts + b"\n" + indent))
    else:
        edits.append(Edit(site.start, body.start, head + b"{ "))
        tail = (b" " + update_stmts if update_stmts else b"") + b" }"
        edits.append(Edit(body.end, body.end, tail))
    return edits


def _py_int_literal(node: Node, tree: SyntaxTree) -> int | None:
    if node.kind == "integer":
        return int(text(tree, node))
    if node.kind == "unary_operator":
        kids = no_comments(node)
        if len(kids) == 2 and kids[0].kind == "-" and kids[1].kind == "integer":
            return -int(text(tree, kids[1]))
    return None


def _py_assigned_names(tree: SyntaxTree, node: Node) -> set[str]:
    names: set[str] = set()
    for sub in node.walk():
        kids = no_comments(sub)
        if sub.kind in ("assignment", "augmented_assignment", "named_expression") and kids:
            for leaf in kids[0].walk():
                if leaf.kind == "identifier" and leaf.is_leaf:
                    names.add(text(tree, leaf))
        elif sub.kind == "for_statement" and len(kids) > 1:
            for leaf in kids[1].walk():
                if leaf.kind == "identifier" and leaf.is_leaf:
                    names.add(text(tree, leaf))
    return names


def _b1_py_find(tree: SyntaxTree) -> list[Site]:
    parents = parent_map(tree.root)
    sites = []
    for node in tree.root.walk():
        if node.kind != "for_statement":
            continue
        kids = no_comments(node)
        if any(c.kind == "else_clause" for c in kids):
            continue
        if kids[0].kind != "for" or kids[1].kind != "identifier":
            continue  # only plain single-identifier targets
        var = kids[1]
        iterable = kids[3]
        block = kids[5] if len(kids) > 5 and kids[5].kind == "block" else None
        if block is None or kids[4].kind != ":":
            continue
        if _has_owned_continue(parents, node) or not _owns_line(tree, node):
            continue
        if iterable.kind != "call":
            continue
        ckids = no_comments(iterable)
        if len(ckids) != 2 or ckids[0].kind != "identifier" or text(tree, ckids[0]) != "range":
            continue
        args = [c for c in no_comments(ckids[1]) if c.kind not in ("(", ")", ",")]
        if not 1 <= len(args) <= 3:
            continue
        if any(a.kind == "keyword_argument" for a in args):
            continue
        step = 1
        if len(args) == 3:
            lit = _py_int_literal(args[2], tree)
            if lit is None or lit == 0:
                continue
            step = lit
        if not all(is_pure_expression(a) for a in args):
            continue
        var_name = text(tree, var)
        body_assigned = _py_assigned_names(tree, block)
        if var_name in body_assigned:
            continue  # while form would let body writes leak into the update
        arg_names = {text(tree, leaf) for a in args for leaf in a.walk()
                     if leaf.kind == "identifier" and leaf.is_leaf}
        if arg_names & body_assigned:
            continue  # range() evaluates its bounds once; the body must not move them
        used_after = any(
            leaf.kind == "identifier" and leaf.is_leaf and leaf.start >= node.end
            and text(tree, leaf) == var_name
            for leaf in tree.root.leaves())
        if used_after:
            continue  # exit value differs between for and while forms
        if has_multiline_string(tree, node):
            continue
        sites.append(Site(node.start, node.end, (var, args, step, block, kids[4])))
    return sites


_PY_ATOM_ARGS = frozenset({"identifier", "integer", "float", "parenthesized_expression",
                           "call", "attribute", "subscript"})


def _b1_py_build(tree: SyntaxTree, site: Site, config: TransformConfig) -> list[Edit]:
    var, args, step, block, colon = site.data
    src = tree.source
    indent = indent_at(src, site.start)
    name = tree.bytes_of(var)
    if len(args) == 1:
        start_b, stop_b = b"0", tree.bytes_of(args[0])
        stop_kind = args[0].kind
    else:
        start_b, stop_b = tree.bytes_of(args[0]), tree.bytes_of(args[1])
        stop_kind = args[1].kind
    if stop_kind not in _PY_ATOM_ARGS:
        stop_b = b"(" + stop_b + b")"  # `while i < a or b` would rebind
    cmp_op = b"<" if step > 0 else b">"
    step_b = str(step).encode()
    edits = [
        Edit(site.start, site.start, name + b" = " + start_b + b"\n" + indent),
        Edit(site.start, colon.start, b"while " + name + b" " + cmp_op + b" " + stop_b),
    ]
    inline = bool(src[line_start(src, block.start):block.start].strip())
    if inline:
        edits.append(Edit(block.end, block.end, b"; " + name + b" += " + step_b))
    else:
        stmts = py_block_statements(block)
        inner_indent = indent_at(src, stmts[0].start)
        pos = _line_end(src, block.end)
        edits.append(Edit(pos, pos, b"\n" + inner_indent + name + b" += " + step_b))
    return edits


def _line_end(source: bytes, pos: int) -> int:
    nl = source.find(b"\n", pos)
    return len(source) if nl == -1 else nl


def _b1_find(tree: SyntaxTree) -> list[Site]:
    return _b1_java_find(tree) if tree.language is JAVA else _b1_py_find(tree)


def _b1_build(tree: SyntaxTree, site: Site, config: TransformConfig) -> list[Edit]:
    if tree.language is JAVA:
        return _b1_java_build(tree, site, config)
    return _b1_py_build(tree, site, config)


register("B-1", Category.BLOCK, {JAVA, PY},
         "rewrite counted for loops as equivalent while loops",
         "no convertible for loop")(per_site(_b1_find, _b1_build))


# --------------------------------------------------------------------- B-2

def _b2_find(tree: SyntaxTree) -> list[Site]:
    sites = []
    for node in tree.root.walk():
        if node.kind != "while_statement":
            continue
        kids = no_comments(node)
        paren = kids[1]
        sites.append(Site(node.start, node.end, (kids[0], paren)))
    return sites


def _b2_build(tree: SyntaxTree, site: Site, config: TransformConfig) -> list[Edit]:
    kw, paren = site.data
    pkids = no_comments(paren)
    lparen, rparen = pkids[0], pkids[-1]
    return [
        Edit(kw.start, kw.end, b"for"),
        Edit(lparen.end, lparen.end, b"; "),
        Edit(rparen.start, rparen.start, b";"),
    ]


register("B-2", Category.BLOCK, {JAVA},
         "rewrite while loops as for loops with empty init/update",
         "no while loop")(per_site(_b2_find, _b2_build))


# --------------------------------------------------------------------- B-3

def _b3_java_find(tree: SyntaxTree) -> list[Site]:
    sites = []
    for node in tree.root.walk():
        if node.kind != "if_statement":
            continue
        _, _, alternative = java_if_parts(node)
        if alternative is None or alternative.kind != "block":
            continue
        kids = alternative.children
        if len(kids) != 3 or kids[1].kind != "if_statement":
            continue  # need exactly `{ if ... }`, comments disqualify
        sites.append(Site(alternative.start, alternative.end, (alternative, kids[1])))
    return sites


def _b3_py_find(tree: SyntaxTree) -> list[Site]:
    parents = parent_map(tree.root)
    sites = []
    for node in tree.root.walk():
        if node.kind != "else_clause":
            continue
        owner = parents.get(id(node))
        if owner is None or owner.kind != "if_statement":
            continue  # for/while/try else-clauses cannot become elif
        kids = no_comments(node)
        block = kids[-1]
        if block.kind != "block":
            continue
        stmts = py_block_statements(block)
        if len(stmts) != 1 or stmts[0].kind != "if_statement":
            continue
        inner = stmts[0]
        if [c for c in block.children if c.kind in COMMENT_KINDS and c.start < inner.start]:
            continue  # a comment above the if has no home after flattening
        if not _owns_line(tree, inner) or has_multiline_string(tree, inner):
            continue
        sites.append(Site(node.start, node.end, (node, inner)))
    return sites


def _b3_build(tree: SyntaxTree, site: Site, config: TransformConfig) -> list[Edit]:
    if tree.language is JAVA:
        block, inner = site.data
        return [Edit(block.start, inner.start, b""), Edit(inner.end, block.end, b"")]
    clause, inner = site.data
    src = tree.source
    else_indent = indent_at(src, clause.start)
    inner_indent = indent_at(src, inner.start)
    if_kw = no_comments(inner)[0]
    segment = src[if_kw.end:inner.end]
    shifted = reindent(segment, inner_indent, else_indent)
    if shifted is None:
        return []
    return [Edit(clause.start, clause.end, b"elif" + shifted)]


def _b3_find(tree: SyntaxTree) -> list[Site]:
    return _b3_java_find(tree) if tree.language is JAVA else _b3_py_find(tree)


register("B-3", Category.BLOCK, {JAVA, PY},
         "flatten an else whose only statement is an if into else-if",
         "no else block wrapping a lone if")(per_site(_b3_find, _b3_build))


# --------------------------------------------------------------------- B-4

def _b4_find(tree: SyntaxTree) -> list[Site]:
    sites = []
    if tree.language is JAVA:
        for node in tree.root.walk():
            if node.kind != "if_statement":
                continue
            _, _, alternative = java_if_parts(node)
            if alternative is None or alternative.kind != "if_statement":
                continue
            sites.append(Site(alternative.start, alternative.end, alternative))
        return sites
    for node in tree.root.walk():
        if node.kind != "if_statement":
            continue
        kids = no_comments(node)
        elifs = [c for c in kids if c.kind == "elif_clause"]
        if not elifs:
            continue
        first = elifs[0]
        if has_multiline_string(tree, node):
            continue
        if tree.source[line_start(tree.source, first.start):first.start].strip():
            continue
        sites.append(Site(first.start, node.end, (first, node)))
    return sites


def _b4_build(tree: SyntaxTree, site: Site, config: TransformConfig) -> list[Edit]:
    if tree.language is JAVA:
        alt = site.data
        return [Edit(alt.start, alt.start, b"{ "), Edit(alt.end, alt.end, b" }")]
    first, if_stmt = site.data
    src = tree.source
    ind = indent_at(src, first.start)
    unit = indent_unit(src, if_stmt)
    elif_kw = no_comments(first)[0]
    segment = src[elif_kw.end:if_stmt.end]
    shifted = reindent(segment, ind, ind + unit)
    if shifted is None:
        return []
    new = b"else:\n" + ind + unit + b"if" + shifted
    return [Edit(first.start, if_stmt.end, new)]


register("B-4", Category.BLOCK, {JAVA, PY},
         "nest an else-if branch inside an explicit else block",
         "no else-if chain")(per_site(_b4_find, _b4_build))


# --------------------------------------------------------------------- B-5

def _b5_find(tree: SyntaxTree) -> list[Site]:
    sites = []
    if tree.language is JAVA:
        for node in tree.root.walk():
            if node.kind != "if_statement":
                continue
            cond, consequence, alternative = java_if_parts(node)
            if alternative is None or alternative.kind == "if_statement":
                continue
            if consequence.kind == "if_statement":
                continue  # unbraced if-consequence would capture the else
            sites.append(Site(node.start, node.end, (cond, consequence, alternative)))
        return sites
    for node in tree.root.walk():
        if node.kind != "if_statement":
            continue
        kids = no_comments(node)
        if any(c.kind == "elif_clause" for c in kids):
            continue
        else_clause = next((c for c in kids if c.kind == "else_clause"), None)
        if else_clause is None:
            continue
        cond = kids[1]
        then_block = kids[3]
        else_block = no_comments(else_clause)[-1]
        if then_block.kind != "block" or else_block.kind != "block":
            continue
        sites.append(Site(node.start, node.end, (cond, then_block, else_block)))
    return sites


def _b5_build(tree: SyntaxTree, site: Site, config: TransformConfig) -> list[Edit]:
    cond, then_part, else_part = site.data
    if tree.language is JAVA:
        inner = no_comments(cond)[1]
        wrap = [Edit(inner.start, inner.start, b"!("), Edit(inner.end, inner.end, b")")]
    else:
        wrap = [Edit(cond.start, cond.start, b"not ("), Edit(cond.end, cond.end, b")")]
    then_bytes = tree.bytes_of(then_part)
    else_bytes = tree.bytes_of(else_part)
    if tree.language is PY:
        then_indent = indent_at(tree.source, then_part.start)
        else_indent = indent_at(tree.source, else_part.start)
        if then_indent != else_indent:
            return []
        inline_then = tree.source[line_start(tree.source, then_part.start):then_part.start].strip()
        inline_else = tree.source[line_start(tree.source, else_part.start):else_part.start].strip()
        if bool(inline_then) != bool(inline_else):
            return []
    return wrap + [
        Edit(then_part.start, then_part.end, else_bytes),
        Edit(else_part.start, else_part.end, then_bytes),
    ]


register("B-5", Category.BLOCK, {JAVA, PY},
         "negate the if condition and swap the two branches",
         "no if/else pair")(per_site(_b5_find, _b5_build))


# --------------------------------------------------------------------- B-6

def _b6_find(tree: SyntaxTree) -> list[Site]:
    sites = []
    if tree.language is JAVA:
        for node in tree.root.walk():
            if node.kind != "if_statement":
                continue
            cond, consequence, alternative = java_if_parts(node)
            if alternative is not None:
                continue
            expr = no_comments(cond)[1]
            if expr.kind != "binary_expression":
                continue
            ekids = no_comments(expr)
            if len(ekids) != 3 or ekids[1].kind != "&&":
                continue
            sites.append(Site(node.start, node.end, (expr, ekids[0], ekids[2], consequence)))
        return sites
    for node in tree.root.walk():
        if node.kind != "if_statement":
            continue
        kids = no_comments(node)
        if any(c.kind in ("elif_clause", "else_clause") for c in kids):
            continue
        cond = kids[1]
        if cond.kind != "boolean_operator":
            continue
        ckids = no_comments(cond)
        if len(ckids) != 3 or ckids[1].kind != "and":
            continue
        block = kids[3]
        if has_multiline_string(tree, node) or not _owns_line(tree, node):
            continue
        sites.append(Site(node.start, node.end, (cond, ckids[0], ckids[2], block, node)))
    return sites


def _b6_build(tree: SyntaxTree, site: Site, config: TransformConfig) -> list[Edit]:
    if tree.language is JAVA:
        expr, left, right, consequence = site.data
        return [
            Edit(expr.start, expr.end, tree.bytes_of(left)),
            Edit(consequence.start, consequence.start,
                 b"{ if (" + tree.bytes_of(right) + b") "),
            Edit(consequence.end, consequence.end, b" }"),
        ]
    cond, left, right, block, if_stmt = site.data
    src = tree.source
    ind = indent_at(src, if_stmt.start)
    unit = indent_unit(src, if_stmt)
    inline = bool(src[line_start(src, block.start):block.start].strip())
    if inline:
        new = tree.bytes_of(left) + b":\n" + ind + unit + b"if " + tree.bytes_of(right) \
            + src[cond.end:if_stmt.end]
        return [Edit(cond.start, if_stmt.end, new)]
    segment = src[cond.end:if_stmt.end]
    shifted = reindent(segment, ind, ind + unit)
    if shifted is None:
        return []
    new = tree.bytes_of(left) + b":\n" + ind + unit + b"if " + tree.bytes_of(right) + shifted
    return [Edit(cond.start, if_stmt.end, new)]


register("B-6", Category.BLOCK, {JAVA, PY},
         "split a short-circuit AND condition into nested ifs",
         "no if with a top-level AND condition")(per_site(_b6_find, _b6_build))


# --------------------------------------------------------------------- B-7

def _b7_find(tree: SyntaxTree) -> list[Site]:
    parents = parent_map(tree.root)
    sites = []
    for node in tree.root.walk():
        if node.kind != "expression_statement":
            continue
        kids = no_comments(node)
        if len(kids) != 1 or kids[0].kind != "assignment":
            continue
        akids = no_comments(kids[0])
        if len(akids) != 3 or akids[0].kind != "identifier" or akids[1].kind != "=":
            continue
        value = akids[2]
        if not is_pure_expression(value):
            continue
        if value.kind == "string" or any(l.kind == "string" for l in value.leaves()):
            continue
        if not _owns_line(tree, node):
            continue
        parent = parents.get(id(node))
        if parent is None or parent.kind not in ("block", "module"):
            continue
        sites.append(Site(node.start, node.end, (node, akids[0], value)))
    return sites


def _b7_build(tree: SyntaxTree, site: Site, config: TransformConfig) -> list[Edit]:
    stmt, target, value = site.data
    src = tree.source
    taken = all_identifier_texts(tree)
    name = fresh_name("func_cm", taken)
    params: list[str] = []
    for leaf in value.walk():
        if leaf.kind == "identifier" and leaf.is_leaf:
            t = text(tree, leaf)
            if t not in params:
                params.append(t)
    ind = indent_at(src, stmt.start)
    plist = ", ".join(params).encode()
    helper = (f"def {name}(".encode() + plist + b"):\n"
              + ind + b"    return " + tree.bytes_of(value) + b"\n" + ind)
    call = name.encode() + b"(" + plist + b")"
    return [
        Edit(stmt.start, stmt.start, helper),  # after the line indent
        Edit(value.start, value.end, call),
    ]


register("B-7", Category.BLOCK, {PY},
         "extract a pure initializer expression into a helper function",
         "no pure-initializer assignment")(per_site(_b7_find, _b7_build))
