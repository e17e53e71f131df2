"""Insertion/deletion rewrites: comments, junk code, padding returns,
unused imports, comment stripping, print removal and dead declarations."""

from __future__ import annotations

from codemorph.edits import Edit
from codemorph.lang import Language
from codemorph.strategies.base import (
    Category,
    InsertLocation,
    Plan,
    Site,
    TransformConfig,
    apply_policy,
    per_site,
    register,
)
from codemorph.strategies.common import (
    all_identifier_texts,
    anchor_statement_block,
    ancestors,
    fresh_name,
    indent_at,
    is_pure_expression,
    line_end,
    line_start,
    no_comments,
    parent_map,
    py_block_statements,
    text,
)
from codemorph.strategies.tokens import _call_of, _py_import_of
from codemorph.tree import COMMENT_KINDS, Node, SyntaxTree

JAVA = Language.JAVA
PY = Language.PYTHON


def _insertion_point(tree: SyntaxTree, config: TransformConfig) -> tuple[int, bytes, bool] | None:
    """(byte offset, indent, at_line_start) for the configured junk/comment
    location within the anchor statement list."""
    anchor = anchor_statement_block(tree)
    if anchor is None:
        return None
    block, stmts = anchor
    if not stmts:
        return None
    first = stmts[0]
    if tree.language is PY:
        # inline suites (`def f(): pass`) cannot take an inserted line
        if tree.source[line_start(tree.source, first.start):first.start].strip():
            return None
    loc = config.insert_location
    if loc is InsertLocation.FRONT:
        pos = line_start(tree.source, first.start)
        return pos, indent_at(tree.source, first.start), True
    if loc is InsertLocation.END or len(stmts) == 1:
        last = stmts[-1]
        return line_end(tree.source, last.end), indent_at(tree.source, last.start), False
    k = config.rng().randrange(1, len(stmts))  # interior boundary
    target = stmts[k]
    return line_start(tree.source, target.start), indent_at(tree.source, target.start), True


# --------------------------------------------------------------------- ID-1

def _id1_planner(tree: SyntaxTree, config: TransformConfig) -> Plan | None:
    point = _insertion_point(tree, config)
    if point is None:
        return None
    pos, indent, at_line_start = point
    marker = b"//" if tree.language is JAVA else b"#"
    comment = marker + f" auto-generated note {config.seed}".encode()
    if at_line_start:
        payload = indent + comment + b"\n"
    else:
        payload = b"\n" + indent + comment
    return Plan([Site(pos, pos)], [Edit(pos, pos, payload)])


register("ID-1", Category.INSERT_DELETE, {JAVA, PY},
         "insert a comment unrelated to the code",
         "no statement list to anchor an insertion")(_id1_planner)


# --------------------------------------------------------------------- ID-2

def _junk_templates(tree: SyntaxTree) -> list[bytes]:
    taken = all_identifier_texts(tree)
    name = fresh_name("unused", taken).encode()
    if tree.language is JAVA:
        return [b"int " + name + b" = 0;", b"if (false) {}"]
    return [name + b" = 0", b"if False: pass"]


def _id2_planner(tree: SyntaxTree, config: TransformConfig) -> Plan | None:
    point = _insertion_point(tree, config)
    if point is None:
        return None
    pos, indent, at_line_start = point
    templates = _junk_templates(tree)
    if config.junk_template_index is not None:
        junk = templates[config.junk_template_index % len(templates)]
    else:
        junk = config.rng().choice(templates)
    if at_line_start:
        payload = indent + junk + b"\n"
    else:
        payload = b"\n" + indent + junk
    return Plan([Site(pos, pos)], [Edit(pos, pos, payload)])


register("ID-2", Category.INSERT_DELETE, {JAVA, PY},
         "insert inert junk code (dead branch or unused local)",
         "no statement list to anchor an insertion")(_id2_planner)


# --------------------------------------------------------------------- ID-3

def _java_is_void(method: Node) -> bool:
    return method.child_of_kind("void_type") is not None


def _id3_find(tree: SyntaxTree) -> list[Site]:
    sites = []
    if tree.language is JAVA:
        for node in tree.root.walk():
            if node.kind != "method_declaration" or not _java_is_void(node):
                continue
            block = node.child_of_kind("block")
            if block is None:
                continue
            stmts = [c for c in no_comments(block) if c.kind not in ("{", "}")]
            if stmts and stmts[-1].kind == "return_statement":
                continue
            last = stmts[-1] if stmts else no_comments(block)[0]
            indent = indent_at(tree.source, stmts[0].start) if stmts \
                else indent_at(tree.source, block.start) + b"    "
            sites.append(Site(block.start, block.end, (last, indent, bool(stmts))))
        return sites
    for node in tree.root.walk():
        if node.kind != "function_definition":
            continue
        block = node.child_of_kind("block")
        if block is None:
            continue
        stmts = py_block_statements(block)
        if not stmts or stmts[-1].kind == "return_statement":
            continue
        if tree.source[line_start(tree.source, stmts[0].start):stmts[0].start].strip():
            continue  # inline suite cannot take an appended line
        sites.append(Site(block.start, block.end, (stmts[-1], indent_at(tree.source, stmts[0].start), True)))
    return sites


def _id3_edit(tree: SyntaxTree, site: Site) -> tuple[int, int, bytes]:
    """(position, inner_depth_key, payload) for one appended return."""
    last, indent, has_stmts = site.data
    if tree.language is JAVA:
        if not has_stmts:
            return last.end, site.start, b" return;"
        pos = line_end(tree.source, last.end)
        if pos >= site.end:  # single-line body: `{ s(); }`
            return last.end, site.start, b" return;"
        return pos, site.start, b"\n" + indent + b"return;"
    return line_end(tree.source, last.end), site.start, b"\n" + indent + b"return None"


def _id3_planner(tree: SyntaxTree, config: TransformConfig) -> Plan | None:
    sites = _id3_find(tree)
    if not sites:
        return None
    chosen = apply_policy(sites, config)  # nested bodies are independent
    if not chosen:
        return None
    # nested bodies may end on the same line: merge same-position inserts,
    # innermost payload first
    grouped: dict[int, list[tuple[int, bytes]]] = {}
    for site in chosen:
        pos, depth_key, payload = _id3_edit(tree, site)
        grouped.setdefault(pos, []).append((depth_key, payload))
    edits = []
    for pos, items in grouped.items():
        items.sort(key=lambda item: -item[0])
        edits.append(Edit(pos, pos, b"".join(p for _, p in items)))
    return Plan(chosen, edits)


register("ID-3", Category.INSERT_DELETE, {JAVA, PY},
         "append an explicit default return to a function body",
         "no function body lacking a trailing return")(_id3_planner)


# --------------------------------------------------------------------- ID-4

def _id4_planner(tree: SyntaxTree, config: TransformConfig) -> Plan | None:
    if tree.language is JAVA:
        marker, stmt = "UUID", b"import java.util.UUID;\n"
        already = "UUID" in all_identifier_texts(tree)
    else:
        marker, stmt = "uuid", b"import uuid\n"
        already = "uuid" in all_identifier_texts(tree) or _py_import_of(tree, "uuid")
    if already:
        return None
    import_kinds = ("import_declaration",) if tree.language is JAVA \
        else ("import_statement", "import_from_statement")
    pos = 0
    anchors = [c for c in tree.root.children if c.kind in import_kinds]
    if not anchors and tree.language is JAVA:
        pkg = tree.root.child_of_kind("package_declaration")
        if pkg is not None:
            anchors = [pkg]
    if anchors:
        pos = line_end(tree.source, anchors[-1].end)
        pos = min(pos + 1, len(tree.source))
        if pos == len(tree.source) and not tree.source.endswith(b"\n"):
            stmt = b"\n" + stmt.rstrip(b"\n")
    return Plan([Site(pos, pos)], [Edit(pos, pos, stmt)])


register("ID-4", Category.INSERT_DELETE, {JAVA, PY},
         "add an unused library import",
         "import target name already present")(_id4_planner)


# --------------------------------------------------------------------- ID-5

def _id5_find(tree: SyntaxTree) -> list[Site]:
    sites = []
    for node in tree.root.walk():
        if node.kind in COMMENT_KINDS and node.is_leaf:
            sites.append(Site(node.start, node.end, node))
    return sites


def _id5_build(tree: SyntaxTree, site: Site, config: TransformConfig) -> list[Edit]:
    src = tree.source
    start_of_line = line_start(src, site.start)
    end_of_line = line_end(src, site.end - 1)
    owns_line = not src[start_of_line:site.start].strip() and end_of_line == site.end
    if owns_line:
        return [Edit(start_of_line, min(end_of_line + 1, len(src)), b"")]
    begin = site.start
    while begin > start_of_line and src[begin - 1:begin] in (b" ", b"\t"):
        begin -= 1
    end = site.end
    if not src[start_of_line:site.start].strip():  # comment first, code after
        begin = site.start
        while end < end_of_line and src[end:end + 1] in (b" ", b"\t"):
            end += 1
    return [Edit(begin, end, b"")]


register("ID-5", Category.INSERT_DELETE, {JAVA, PY},
         "delete all comments",
         "no comments present")(per_site(_id5_find, _id5_build))


# --------------------------------------------------------------------- ID-6

def _java_print_statement(tree: SyntaxTree, node: Node) -> bool:
    if node.kind != "expression_statement":
        return False
    kids = no_comments(node)
    if len(kids) != 2 or kids[0].kind != "method_invocation":
        return False
    ckids = no_comments(kids[0])
    if len(ckids) != 4 or ckids[0].kind != "field_access":
        return False
    target = text(tree, ckids[0])
    name = text(tree, ckids[2])
    return target in ("System.out", "System.err") and name.startswith("print")


def _id6_find(tree: SyntaxTree) -> list[Site]:
    sites = []
    for node in tree.root.walk():
        if tree.language is JAVA:
            if _java_print_statement(tree, node):
                sites.append(Site(node.start, node.end, node))
            continue
        if node.kind != "expression_statement":
            continue
        kids = no_comments(node)
        if len(kids) == 1 and _call_of(tree, kids[0], "print") is not None:
            sites.append(Site(node.start, node.end, node))
    return sites


def _id6_build(tree: SyntaxTree, site: Site, config: TransformConfig) -> list[Edit]:
    return [Edit(site.start, site.end, b";" if tree.language is JAVA else b"pass")]


register("ID-6", Category.INSERT_DELETE, {JAVA, PY},
         "replace print statements with empty statements",
         "no print statement")(per_site(_id6_find, _id6_build))


# --------------------------------------------------------------------- ID-7

def _enclosing_scope(parents, node: Node, tree: SyntaxTree) -> Node:
    kinds = frozenset({"method_declaration", "constructor_declaration"}) if tree.language is JAVA \
        else frozenset({"function_definition"})
    for anc in ancestors(parents, node):
        if anc.kind in kinds:
            return anc
    return tree.root


def _inside_loop(parents, node: Node) -> bool:
    loop_kinds = frozenset({"for_statement", "while_statement", "do_statement",
                            "enhanced_for_statement"})
    return any(a.kind in loop_kinds for a in ancestors(parents, node))


def _id7_find(tree: SyntaxTree) -> list[Site]:
    parents = parent_map(tree.root)
    sites = []
    site_blocks: dict[int, tuple[int, int]] = {}  # site start -> (block id, stmt count)
    for node in tree.root.walk():
        if tree.language is JAVA:
            if node.kind != "local_variable_declaration":
                continue
            parent = parents.get(id(node))
            if parent is None or parent.kind not in ("block", "program"):
                continue
            declarators = [c for c in no_comments(node) if c.kind == "variable_declarator"]
            if len(declarators) != 1:
                continue
            declarator = declarators[0]
            dkids = no_comments(declarator)
            if len(dkids) >= 3 and not is_pure_expression(dkids[-1]):
                continue
            name = text(tree, dkids[0])
        else:
            if node.kind != "expression_statement":
                continue
            kids = no_comments(node)
            if len(kids) != 1 or kids[0].kind != "assignment":
                continue
            akids = no_comments(kids[0])
            if len(akids) != 3 or akids[0].kind != "identifier" or akids[1].kind != "=":
                continue
            if not is_pure_expression(akids[2]):
                continue
            parent = parents.get(id(node))
            if parent is None or parent.kind not in ("block", "module"):
                continue
            if parent.kind == "block":
                n_stmts = len(py_block_statements(parent))
                if n_stmts < 2:
                    continue  # removal would empty the suite
                site_blocks[node.start] = (id(parent), n_stmts)
            name = text(tree, akids[0])
        scope = _enclosing_scope(parents, node, tree)
        check_whole_scope = _inside_loop(parents, node)
        used = False
        for leaf in scope.walk():
            if leaf.kind != "identifier" or not leaf.is_leaf or text(tree, leaf) != name:
                continue
            if node.start <= leaf.start < node.end:
                continue  # the declaration itself
            if leaf.start >= node.end or check_whole_scope:
                used = True
                break
        if used:
            continue
        if tree.language is PY:
            if any(n.kind in ("global_statement", "nonlocal_statement")
                   and name in [text(tree, l) for l in n.leaves() if l.kind == "identifier"]
                   for n in scope.walk()):
                continue
        if tree.source[line_start(tree.source, node.start):node.start].strip():
            continue  # must own its line for clean removal
        sites.append(Site(node.start, node.end, node))
    # cap removals per python suite so at least one statement survives
    taken_per_block: dict[int, int] = {}
    capped = []
    for site in sites:
        info = site_blocks.get(site.start)
        if info is None:
            capped.append(site)
            continue
        block_id, n_stmts = info
        used = taken_per_block.get(block_id, 0)
        if used >= n_stmts - 1:
            continue
        taken_per_block[block_id] = used + 1
        capped.append(site)
    return capped


def _id7_build(tree: SyntaxTree, site: Site, config: TransformConfig) -> list[Edit]:
    start = line_start(tree.source, site.start)
    end = line_end(tree.source, site.end - 1)
    remainder = tree.source[site.end:end]
    if remainder.strip():  # trailing comment or code stays on the line
        return [Edit(site.start, site.end + (len(remainder) - len(remainder.lstrip())), b"")]
    return [Edit(start, min(end + 1, len(tree.source)), b"")]


register("ID-7", Category.INSERT_DELETE, {JAVA, PY},
         "remove a declaration whose variable is never used",
         "no unused variable")(per_site(_id7_find, _id7_build))
