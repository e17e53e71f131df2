"""Token-level rewrites: boolean/int literal swaps, numeric type widening
and console I/O API substitution."""

from __future__ import annotations

from codemorph.edits import Edit
from codemorph.lang import Language
from codemorph.strategies.base import (
    Category,
    Plan,
    Site,
    TransformConfig,
    per_site,
    register,
    select_sites,
)
from codemorph.strategies.common import (
    ancestors,
    line_start,
    no_comments,
    parent_map,
    text,
)
from codemorph.strategies.statements import ATOMIC_VALUE_KINDS
from codemorph.tree import Node, SyntaxTree

JAVA = Language.JAVA
PY = Language.PYTHON


# --------------------------------------------------------------------- GT-1

def _gt1_find(tree: SyntaxTree) -> list[Site]:
    parents = parent_map(tree.root)
    sites = []
    for node in tree.root.walk():
        if node.kind not in ("true", "false"):
            continue
        parent = parents.get(id(node))
        if parent is not None and parent.kind == "comparison_operator" \
                and any(c.kind == "is" for c in parent.children):
            continue  # `x is True` must keep its identity semantics
        sites.append(Site(node.start, node.end, node.kind))
    return sites


def _gt1_build(tree: SyntaxTree, site: Site, config: TransformConfig) -> list[Edit]:
    return [Edit(site.start, site.end, b"1" if site.data == "true" else b"0")]


register("GT-1", Category.GRAMMATICAL_TOKEN, {PY},
         "replace boolean literals with their integer equivalents",
         "no boolean literal")(per_site(_gt1_find, _gt1_build))


# --------------------------------------------------------------------- GT-2

_CONDITION_WRAPPERS = frozenset({"parenthesized_expression", "boolean_operator", "not_operator"})


def _in_condition_position(parents: dict[int, Node], node: Node) -> bool:
    cur = node
    parent = parents.get(id(cur))
    while parent is not None and parent.kind in _CONDITION_WRAPPERS:
        cur = parent
        parent = parents.get(id(cur))
    if parent is None:
        return False
    kids = no_comments(parent)
    if parent.kind in ("if_statement", "while_statement", "elif_clause", "if_clause"):
        return len(kids) > 1 and kids[1] is cur
    if parent.kind == "assert_statement":
        return len(kids) > 1 and kids[1] is cur
    if parent.kind == "conditional_expression":  # value if COND else other
        return len(kids) > 2 and kids[2] is cur
    return False


def _gt2_find(tree: SyntaxTree) -> list[Site]:
    parents = parent_map(tree.root)
    sites = []
    for node in tree.root.walk():
        if node.kind != "integer" or text(tree, node) not in ("1", "0"):
            continue
        if not _in_condition_position(parents, node):
            continue
        sites.append(Site(node.start, node.end, text(tree, node)))
    return sites


def _gt2_build(tree: SyntaxTree, site: Site, config: TransformConfig) -> list[Edit]:
    return [Edit(site.start, site.end, b"True" if site.data == "1" else b"False")]


register("GT-2", Category.GRAMMATICAL_TOKEN, {PY},
         "replace 1/0 condition literals with boolean equivalents",
         "no integer literal in a condition position")(per_site(_gt2_find, _gt2_build))


# --------------------------------------------------------------------- GT-3 / GT-4 shared analysis

def _java_decl_sites(tree: SyntaxTree, type_text: str, forbid_division: bool) -> list[Site]:
    """Local declarations of the primitive `type_text` whose variables never
    escape through calls, indexing, reassignment-to-others or returns."""
    parents = parent_map(tree.root)
    leaves = [n for n in tree.root.walk() if n.kind == "identifier" and n.is_leaf]
    sites = []
    for node in tree.root.walk():
        if node.kind != "local_variable_declaration":
            continue
        kids = no_comments(node)
        type_node = kids[0] if kids[0].kind.endswith("_type") else None
        if type_node is None and len(kids) > 1 and kids[1].kind.endswith("_type"):
            type_node = kids[1]  # modifiers precede the type
        if type_node is None or text(tree, type_node) != type_text:
            continue
        names = {text(tree, d.children[0]) for d in kids if d.kind == "variable_declarator"}
        if not names or not all(
                _widening_safe(tree, parents, leaves, node, name, forbid_division) for name in names):
            continue
        sites.append(Site(type_node.start, type_node.end, type_node))
    return sites


def _widening_safe(tree: SyntaxTree, parents, leaves, decl: Node, name: str,
                   forbid_division: bool) -> bool:
    for leaf in leaves:
        if text(tree, leaf) != name:
            continue
        in_own_decl = decl.start <= leaf.start < decl.end
        for anc in ancestors(parents, leaf):
            if anc.kind == "argument_list":
                return False  # overload selection could change
            if anc.kind == "array_access":
                return False  # long is not a valid array index
            if anc.kind == "return_statement":
                return False
            if forbid_division and anc.kind == "binary_expression":
                op = next((c for c in no_comments(anc) if not c.named), None)
                if op is not None and op.kind in ("/", "%"):
                    return False
            if anc.kind == "variable_declarator" and not in_own_decl:
                return False  # feeds another variable's initializer
            if anc.kind == "assignment_expression":
                kids = no_comments(anc)
                target = kids[0]
                if not (target.kind == "identifier" and text(tree, target) == name):
                    return False  # value flows into a different variable
            if anc.kind in ("method_declaration", "constructor_declaration", "program"):
                break
    return True


def _py_annotation_sites(tree: SyntaxTree, from_name: str) -> list[Site]:
    sites = []
    for node in tree.root.walk():
        slots: list[Node] = []
        kids = no_comments(node)
        if node.kind == "typed_parameter" and len(kids) >= 3:
            slots.append(kids[2])
        elif node.kind == "typed_default_parameter" and len(kids) >= 3:
            slots.append(kids[2])
        elif node.kind == "assignment" and len(kids) >= 3 and kids[1].kind == ":":
            slots.append(kids[2])
        elif node.kind == "function_definition":
            for i, child in enumerate(kids):
                if child.kind == "->" and i + 1 < len(kids):
                    slots.append(kids[i + 1])
        for slot in slots:
            for leaf in slot.walk():
                if leaf.kind == "identifier" and leaf.is_leaf and text(tree, leaf) == from_name:
                    sites.append(Site(leaf.start, leaf.end, leaf))
    return sites


def _gt3_find(tree: SyntaxTree) -> list[Site]:
    if tree.language is JAVA:
        return _java_decl_sites(tree, "int", forbid_division=False)
    return _py_annotation_sites(tree, "bool")


def _gt3_build(tree: SyntaxTree, site: Site, config: TransformConfig) -> list[Edit]:
    return [Edit(site.start, site.end, b"long" if tree.language is JAVA else b"int")]


register("GT-3", Category.GRAMMATICAL_TOKEN, {JAVA, PY},
         "widen an integral declared type one step",
         "no widenable integral declaration")(per_site(_gt3_find, _gt3_build))


def _gt4_find(tree: SyntaxTree) -> list[Site]:
    if tree.language is JAVA:
        # float -> double widening plus int -> double (division-guarded)
        sites = _java_decl_sites(tree, "float", forbid_division=False)
        sites += _java_decl_sites(tree, "int", forbid_division=True)
        sites.sort(key=lambda s: s.start)
        return sites
    return _py_annotation_sites(tree, "int")


def _gt4_build(tree: SyntaxTree, site: Site, config: TransformConfig) -> list[Edit]:
    return [Edit(site.start, site.end, b"double" if tree.language is JAVA else b"float")]


register("GT-4", Category.GRAMMATICAL_TOKEN, {JAVA, PY},
         "widen a declared type to floating point",
         "no widenable numeric declaration or annotation")(per_site(_gt4_find, _gt4_build))


# --------------------------------------------------------------------- GT-5 / GT-6

def _py_import_of(tree: SyntaxTree, module: str) -> bool:
    for node in tree.root.walk():
        if node.kind in ("import_statement", "import_from_statement"):
            for leaf in node.leaves():
                if leaf.kind == "identifier" and text(tree, leaf) == module:
                    return True
    return False


def _py_import_edit(tree: SyntaxTree, module: str) -> list[Edit]:
    if _py_import_of(tree, module):
        return []
    imports = [c for c in tree.root.children
               if c.kind in ("import_statement", "import_from_statement")]
    if imports:  # keep the import block together
        end = tree.source.find(b"\n", imports[-1].end)
        pos = len(tree.source) if end == -1 else end + 1
        prefix = b"" if end != -1 else b"\n"
        return [Edit(pos, pos, prefix + f"import {module}\n".encode())]
    return [Edit(0, 0, f"import {module}\n".encode())]


def _call_of(tree: SyntaxTree, node: Node, func_name: str) -> Node | None:
    """argument_list when node is a call to the bare identifier func_name."""
    if node.kind != "call":
        return None
    kids = no_comments(node)
    if len(kids) != 2 or kids[0].kind != "identifier" or text(tree, kids[0]) != func_name:
        return None
    return kids[1]


def _positional_args(args: Node) -> list[Node]:
    inner = [c for c in no_comments(args) if c.kind not in ("(", ")", ",")]
    return inner


def _gt5_planner(tree: SyntaxTree, config: TransformConfig) -> Plan | None:
    rebound = any(
        n.kind in ("default_parameter", "typed_parameter", "assignment")
        and text(tree, no_comments(n)[0]) == "input"
        for n in tree.root.walk() if no_comments(n))
    if rebound:
        return None
    sites = []
    for node in tree.root.walk():
        args = _call_of(tree, node, "input")
        if args is None or _positional_args(args):
            continue  # prompt arguments would change observable output
        sites.append(Site(node.start, node.end, node))
    if not sites:
        return None
    chosen = select_sites(sites, config)
    edits = _py_import_edit(tree, "sys")
    for site in chosen:
        edits.append(Edit(site.start, site.end, b'sys.stdin.readline().rstrip("\\n")'))
    return Plan(chosen, edits)


register("GT-5", Category.GRAMMATICAL_TOKEN, {PY},
         "read console input through the stdin stream API",
         "no bare input() call")(_gt5_planner)


def _java_println_sites(tree: SyntaxTree) -> list[Site]:
    sites = []
    for node in tree.root.walk():
        if node.kind != "expression_statement":
            continue
        kids = no_comments(node)
        if len(kids) != 2 or kids[0].kind != "method_invocation":
            continue
        call = kids[0]
        ckids = no_comments(call)
        if len(ckids) != 4:  # object '.' name args
            continue
        obj, _dot, name, args = ckids
        if obj.kind != "field_access" or text(tree, obj) not in ("System.out", "System.err"):
            continue
        if text(tree, name) != "println":
            continue
        pos = _positional_args(args)
        if len(pos) > 1:
            continue
        sites.append(Site(call.start, call.end, (name, args, pos)))
    return sites


def _gt6_java_build(tree: SyntaxTree, site: Site, config: TransformConfig) -> list[Edit]:
    name, args, pos = site.data
    edits = [Edit(name.start, name.end, b"print")]
    if not pos:
        lparen = no_comments(args)[0]
        edits.append(Edit(lparen.end, lparen.end, b'"\\n"'))
        return edits
    arg = pos[0]
    arg_bytes = tree.bytes_of(arg)
    if arg.kind not in ATOMIC_VALUE_KINDS:
        arg_bytes = b"(" + arg_bytes + b")"
    edits.append(Edit(arg.start, arg.end, arg_bytes + b' + "\\n"'))
    return edits


def _gt6_planner(tree: SyntaxTree, config: TransformConfig) -> Plan | None:
    if tree.language is JAVA:
        sites = _java_println_sites(tree)
        if not sites:
            return None
        chosen = select_sites(sites, config)
        edits: list[Edit] = []
        for site in chosen:
            edits.extend(_gt6_java_build(tree, site, config))
        return Plan(chosen, edits)
    sites = []
    for node in tree.root.walk():
        if node.kind != "expression_statement":
            continue
        kids = no_comments(node)
        if len(kids) != 1:
            continue
        args = _call_of(tree, kids[0], "print")
        if args is None:
            continue
        pos = _positional_args(args)
        if len(pos) > 1 or any(p.kind in ("keyword_argument", "list_splat", "dictionary_splat",
                                          "generator_expression") for p in pos):
            continue
        sites.append(Site(kids[0].start, kids[0].end, pos))
    if not sites:
        return None
    chosen = select_sites(sites, config)
    edits = _py_import_edit(tree, "sys")
    for site in chosen:
        pos = site.data
        if not pos:
            new = b'sys.stdout.write("\\n")'
        else:
            new = b"sys.stdout.write(str(" + tree.bytes_of(pos[0]) + b') + "\\n")'
        edits.append(Edit(site.start, site.end, new))
    return Plan(chosen, edits)


register("GT-6", Category.GRAMMATICAL_TOKEN, {JAVA, PY},
         "write console output through the stream API",
         "no single-argument print statement")(_gt6_planner)
