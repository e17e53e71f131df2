"""Identifier rewrites: renaming defined functions/classes and local
variables/parameters to positional placeholders.

Renaming is uniform textual alpha-renaming inside the declaring scope:
every occurrence of a renamed name maps to the same fresh placeholder,
the map is injective, and placeholders never collide with any identifier
already present in the snippet. Names that match imports, builtins or
outward-binding declarations are left alone.
"""

from __future__ import annotations

from codemorph.edits import Edit
from codemorph.lang import Language
from codemorph.strategies.base import Category, Plan, Site, TransformConfig, register
from codemorph.strategies.common import (
    PY_BUILTINS,
    all_identifier_texts,
    no_comments,
    parent_map,
    text,
)
from codemorph.tree import Node, SyntaxTree

JAVA = Language.JAVA
PY = Language.PYTHON

JAVA_OBJECT_METHODS = frozenset({"toString", "equals", "hashCode", "main", "compareTo", "run", "close"})


def _fresh_placeholder(base: str, counter: int, taken: set[str]) -> tuple[str, int]:
    while f"{base}{counter}" in taken:
        counter += 1
    name = f"{base}{counter}"
    taken.add(name)
    return name, counter + 1


# --------------------------------------------------------------------- I-1

def _py_imported_names(tree: SyntaxTree) -> set[str]:
    names = set()
    for node in tree.root.walk():
        if node.kind in ("import_statement", "import_from_statement"):
            for leaf in node.leaves():
                if leaf.kind == "identifier":
                    names.add(text(tree, leaf))
    return names


def _java_override_annotated(tree: SyntaxTree, method: Node) -> bool:
    mods = method.child_of_kind("modifiers")
    if mods is None:
        return False
    return any("Override" in text(tree, c) for c in mods.children
               if c.kind in ("annotation", "marker_annotation"))


def _i1_collect(tree: SyntaxTree) -> list[tuple[str, Node, str]]:
    """(kind, name_leaf, base) for renameable definitions in source order."""
    defs = []
    if tree.language is PY:
        imported = _py_imported_names(tree)
        for node in tree.root.walk():
            if node.kind not in ("function_definition", "class_definition"):
                continue
            kids = no_comments(node)
            name_leaf = next((c for c in kids if c.kind == "identifier"), None)
            if name_leaf is None:
                continue
            name = text(tree, name_leaf)
            if name.startswith("__") or name in imported or name in PY_BUILTINS:
                continue
            base = "func" if node.kind == "function_definition" else "class"
            defs.append((name, name_leaf, base))
    else:
        class_names = set()
        for node in tree.root.walk():
            kids = no_comments(node)
            if node.kind in ("class_declaration", "interface_declaration", "enum_declaration"):
                name_leaf = next((c for c in kids if c.kind == "identifier"), None)
                if name_leaf is not None:
                    class_names.add(text(tree, name_leaf))
                    defs.append((text(tree, name_leaf), name_leaf, "class"))
            elif node.kind == "method_declaration":
                if _java_override_annotated(tree, node):
                    continue
                name_leaf = next((c for i, c in enumerate(kids)
                                  if c.kind == "identifier" and i + 1 < len(kids)
                                  and kids[i + 1].kind == "formal_parameters"), None)
                if name_leaf is None:
                    continue
                name = text(tree, name_leaf)
                if name in JAVA_OBJECT_METHODS:
                    continue
                defs.append((name, name_leaf, "func"))
        # constructors rename with their class; a method sharing a name
        # with a variable would drag variable references along, so skip it
        value_names = _java_value_names(tree)
        defs = [(n, leaf, base) for (n, leaf, base) in defs
                if not (base == "func" and (n in class_names or n in value_names))]
    defs.sort(key=lambda item: item[1].start)
    # drop duplicate names (overloads rename together through occurrences)
    seen: set[str] = set()
    unique = []
    for name, leaf, base in defs:
        if name not in seen:
            seen.add(name)
            unique.append((name, leaf, base))
    return unique


def _java_value_names(tree: SyntaxTree) -> set[str]:
    names = set()
    for node in tree.root.walk():
        if node.kind == "variable_declarator":
            names.add(text(tree, node.children[0]))
        elif node.kind in ("formal_parameter", "spread_parameter", "enhanced_for_statement"):
            name_leaf = next((c for c in no_comments(node) if c.kind == "identifier"), None)
            if name_leaf is not None:
                names.add(text(tree, name_leaf))
    return names


def _py_variable_names(tree: SyntaxTree) -> set[str]:
    """Names bound as plain variables anywhere (guard against renaming a
    class/function name that is shadowed by a variable)."""
    names = set()
    for node in tree.root.walk():
        if node.kind in ("assignment", "augmented_assignment"):
            target = no_comments(node)[0]
            for leaf in target.walk():
                if leaf.kind == "identifier" and leaf.is_leaf:
                    names.add(text(tree, leaf))
    return names


def _i1_occurrences(tree: SyntaxTree, name: str) -> list[Node]:
    """Identifier and type-identifier leaves that denote `name` as a
    callable/type reference (attribute members only behind self/this)."""
    parents = parent_map(tree.root)
    out = []
    for leaf in tree.root.walk():
        if not leaf.is_leaf or leaf.kind not in ("identifier", "type_identifier"):
            continue
        if text(tree, leaf) != name:
            continue
        parent = parents.get(id(leaf))
        if parent is None:
            continue
        if parent.kind in ("attribute", "field_access", "method_invocation"):
            kids = no_comments(parent)
            if kids and kids[0] is not leaf:  # member position: obj.NAME
                obj = kids[0]
                if obj.kind not in ("this",) and text(tree, obj) not in ("self", "cls"):
                    continue
        if parent.kind in ("import_statement", "import_from_statement", "dotted_name",
                           "aliased_import", "scoped_identifier"):
            continue
        out.append(leaf)
    return out


def _i1_planner(tree: SyntaxTree, config: TransformConfig) -> Plan | None:
    defs = _i1_collect(tree)
    if tree.language is PY:
        shadowed = _py_variable_names(tree)
        defs = [d for d in defs if d[0] not in shadowed]
    if not defs:
        return None
    taken = all_identifier_texts(tree)
    counters = {"func": 1, "class": 1}
    sites: list[Site] = []
    edits: list[Edit] = []
    for name, leaf, base in defs:
        placeholder, counters[base] = _fresh_placeholder(base, counters[base], taken)
        occurrences = _i1_occurrences(tree, name)
        sites.append(Site(leaf.start, leaf.end, name))
        for node in occurrences:
            edits.append(Edit(node.start, node.end, placeholder.encode()))
    return Plan(sites, edits)


register("I-1", Category.IDENTIFIER, {JAVA, PY},
         "rename defined functions and classes to positional placeholders",
         "no renameable function or class definition")(_i1_planner)


# --------------------------------------------------------------------- I-2

PY_SCOPE_KINDS = frozenset({"function_definition", "lambda"})
JAVA_SCOPE_KINDS = frozenset({"method_declaration", "constructor_declaration", "lambda_expression"})


def _scope_walk(scope: Node, scope_kinds: frozenset[str]):
    """Preorder walk that stops at nested scopes (their bindings are
    their own)."""
    stack = list(reversed(scope.children))
    yield scope
    while stack:
        node = stack.pop()
        yield node
        if node.kind in scope_kinds:
            continue
        stack.extend(reversed(node.children))


def _py_binding_names(tree: SyntaxTree, scope: Node) -> list[str]:
    """Names bound as locals/params inside scope, in first-binding order."""
    order: list[str] = []

    def bind(leaf: Node) -> None:
        name = text(tree, leaf)
        if name not in order:
            order.append(name)

    def collect_target(target: Node) -> None:
        if target.kind == "identifier" and target.is_leaf:
            bind(target)
        elif target.kind in ("pattern_list", "tuple_pattern", "list_splat_pattern", "expression_list", "tuple"):
            for child in no_comments(target):
                collect_target(child)

    for node in _scope_walk(scope, PY_SCOPE_KINDS):
        if node is not scope and node.kind in PY_SCOPE_KINDS:
            continue
        kids = no_comments(node)
        if node.kind in ("parameters", "lambda_parameters"):
            for param in kids:
                if param.kind == "identifier":
                    bind(param)
                elif param.kind in ("default_parameter", "typed_parameter", "typed_default_parameter"):
                    bind(no_comments(param)[0])
                elif param.kind in ("list_splat_pattern", "dictionary_splat_pattern"):
                    name_leaf = next((c for c in no_comments(param) if c.kind == "identifier"), None)
                    if name_leaf is not None:
                        bind(name_leaf)
        elif node.kind == "assignment" and kids[1].kind in ("=", ":"):
            collect_target(kids[0])
        elif node.kind == "augmented_assignment":
            collect_target(kids[0])
        elif node.kind == "for_statement" or node.kind == "for_in_clause":
            idx = 1 if node.kind == "for_statement" else next(
                (i for i, c in enumerate(kids) if c.kind == "for"), 0) + 1
            if idx < len(kids):
                collect_target(kids[idx])
        elif node.kind == "with_item" and len(kids) == 3:
            collect_target(kids[2])
        elif node.kind == "except_clause":
            for i, child in enumerate(kids):
                if child.kind == "as" and i + 1 < len(kids):
                    collect_target(kids[i + 1])
        elif node.kind == "named_expression":
            collect_target(kids[0])
    return order


def _py_nonrenameable(tree: SyntaxTree) -> set[str]:
    names = set(PY_BUILTINS) | _py_imported_names(tree)
    for node in tree.root.walk():
        if node.kind in ("global_statement", "nonlocal_statement"):
            for leaf in node.leaves():
                if leaf.kind == "identifier":
                    names.add(text(tree, leaf))
        elif node.kind == "keyword_argument":
            names.add(text(tree, no_comments(node)[0]))
        elif node.kind in ("function_definition", "class_definition"):
            name_leaf = next((c for c in no_comments(node) if c.kind == "identifier"), None)
            if name_leaf is not None:
                names.add(text(tree, name_leaf))
    return names


def _java_binding_names(tree: SyntaxTree, scope: Node) -> list[str]:
    order: list[str] = []

    def bind(leaf: Node) -> None:
        name = text(tree, leaf)
        if name not in order:
            order.append(name)

    for node in _scope_walk(scope, JAVA_SCOPE_KINDS):
        if node is not scope and node.kind in JAVA_SCOPE_KINDS:
            continue
        kids = no_comments(node)
        if node.kind in ("formal_parameter", "spread_parameter", "catch_formal_parameter", "resource"):
            name_leaf = next((c for c in kids if c.kind == "identifier"), None)
            if name_leaf is not None:
                bind(name_leaf)
        elif node.kind == "catch_clause":
            name_leaf = next((c for c in kids if c.kind == "identifier"), None)
            if name_leaf is not None:
                bind(name_leaf)
        elif node.kind == "variable_declarator":
            bind(kids[0])
        elif node.kind == "enhanced_for_statement":
            name_leaf = next((c for c in kids if c.kind == "identifier"), None)
            if name_leaf is not None:
                bind(name_leaf)
        elif node.kind == "inferred_parameters":
            for child in kids:
                if child.kind == "identifier":
                    bind(child)
        elif node.kind == "lambda_expression" and kids[0].kind == "identifier":
            bind(kids[0])
    return order


def _java_nonrenameable(tree: SyntaxTree) -> set[str]:
    names = set()
    for node in tree.root.walk():
        kids = no_comments(node)
        if node.kind == "field_declaration":
            for decl in kids:
                if decl.kind == "variable_declarator":
                    names.add(text(tree, decl.children[0]))
        elif node.kind in ("class_declaration", "interface_declaration", "enum_declaration",
                           "method_declaration", "constructor_declaration"):
            name_leaf = next((c for c in kids if c.kind == "identifier"), None)
            if name_leaf is not None:
                names.add(text(tree, name_leaf))
        elif node.kind == "import_declaration":
            for leaf in node.leaves():
                if leaf.kind == "identifier":
                    names.add(text(tree, leaf))
    return names


def _scopes(tree: SyntaxTree) -> list[Node]:
    kinds = PY_SCOPE_KINDS if tree.language is PY else JAVA_SCOPE_KINDS
    return [n for n in tree.root.walk() if n.kind in kinds]


def _occurrence_excluded(tree: SyntaxTree, parents, leaf: Node) -> bool:
    parent = parents.get(id(leaf))
    if parent is None:
        return True
    kids = no_comments(parent)
    if parent.kind in ("attribute", "field_access") and kids and kids[-1] is leaf:
        return True  # member name after the dot
    if parent.kind == "method_invocation":
        # [name, args] or [obj, '.', name, args]: name slot is not a variable
        if len(kids) >= 2 and kids[-1].kind == "argument_list" and kids[-2] is leaf:
            return True
    if parent.kind == "call" and kids and kids[0] is leaf:
        # bare call target may still be a variable holding a callable; keep
        return False
    if parent.kind == "keyword_argument" and kids and kids[0] is leaf:
        return True
    if parent.kind in ("import_statement", "import_from_statement", "dotted_name",
                       "aliased_import", "scoped_identifier", "labeled_statement"):
        return True
    if parent.kind in ("function_definition", "class_definition",
                       "method_declaration", "constructor_declaration"):
        return True  # definition name handled by I-1
    return False


def _i2_planner(tree: SyntaxTree, config: TransformConfig) -> Plan | None:
    scopes = _scopes(tree)
    if not scopes:
        return None
    parents = parent_map(tree.root)
    blocked = _py_nonrenameable(tree) if tree.language is PY else _java_nonrenameable(tree)
    scope_names: dict[int, dict[str, str]] = {}
    taken = all_identifier_texts(tree)
    counter = 1
    order_binder = _py_binding_names if tree.language is PY else _java_binding_names
    for scope in sorted(scopes, key=lambda s: s.start):
        mapping: dict[str, str] = {}
        for name in order_binder(tree, scope):
            if name in blocked or name.startswith("__"):
                continue
            placeholder, counter = _fresh_placeholder("var", counter, taken)
            mapping[name] = placeholder
        if mapping:
            scope_names[id(scope)] = mapping
    if not scope_names:
        return None

    def innermost_mapping(leaf: Node) -> str | None:
        name = text(tree, leaf)
        node = parents.get(id(leaf))
        while node is not None:
            mapping = scope_names.get(id(node))
            if mapping and name in mapping:
                return mapping[name]
            node = parents.get(id(node))
        return None

    edits: list[Edit] = []
    spans: list[Site] = []
    for leaf in tree.root.walk():
        if not leaf.is_leaf or leaf.kind != "identifier":
            continue
        if _occurrence_excluded(tree, parents, leaf):
            continue
        placeholder = innermost_mapping(leaf)
        if placeholder is None:
            continue
        edits.append(Edit(leaf.start, leaf.end, placeholder.encode()))
        spans.append(Site(leaf.start, leaf.end, text(tree, leaf)))
    if not edits:
        return None
    return Plan(spans, edits)


register("I-2", Category.IDENTIFIER, {JAVA, PY},
         "rename local variables and parameters to positional placeholders",
         "no renameable local variable or parameter")(_i2_planner)
