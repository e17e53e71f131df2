"""Concrete syntax trees with byte-span nodes.

Every node carries a half-open byte range [start, end) against the
originating source bytes. Leaf spans never overlap and appear in source
order under depth-first traversal; the bytes between consecutive leaf
spans are whitespace only. Keyword and punctuation leaves are anonymous
(kind == their text), named leaves carry grammar symbol names such as
"identifier" or "decimal_integer_literal".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

ERROR_KIND = "ERROR"
MISSING_KIND = "MISSING"

COMMENT_KINDS = frozenset({"comment", "line_comment", "block_comment"})


@dataclass
class Node:
    kind: str
    start: int
    end: int
    named: bool = True
    children: list["Node"] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.start > self.end:
            raise ValueError(f"bad span [{self.start},{self.end}) for {self.kind}")
        if not self.kind:
            raise ValueError("node kind must be non-empty")

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def walk(self) -> Iterator["Node"]:
        """Depth-first preorder over the subtree, self included."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def leaves(self) -> Iterator["Node"]:
        for node in self.walk():
            if node.is_leaf:
                yield node

    def find_all(self, kind: str) -> list["Node"]:
        return [n for n in self.walk() if n.kind == kind]

    def child_of_kind(self, kind: str) -> "Node | None":
        for child in self.children:
            if child.kind == kind:
                return child
        return None

    def __repr__(self) -> str:  # compact, for test failure output
        return f"({self.kind} [{self.start},{self.end}) x{len(self.children)})"


@dataclass
class SyntaxTree:
    root: Node
    source: bytes
    language: object  # Language; kept loose to avoid an import cycle

    def text_of(self, node: Node) -> str:
        return self.source[node.start:node.end].decode("utf-8")

    def bytes_of(self, node: Node) -> bytes:
        return self.source[node.start:node.end]

    def sexp(self) -> str:
        """Render named structure, useful when debugging matchers."""

        def go(node: Node) -> str:
            if node.is_leaf:
                return f"({node.kind})" if node.named else node.kind
            inner = " ".join(go(c) for c in node.children)
            return f"({node.kind} {inner})"

        return go(self.root)


@dataclass(frozen=True)
class Token:
    text: str
    kind: str


@dataclass(frozen=True)
class TokenSequence:
    tokens: tuple[Token, ...]

    def texts(self) -> list[str]:
        return [t.text for t in self.tokens]

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[Token]:
        return iter(self.tokens)


def has_errors(tree: SyntaxTree) -> bool:
    """True iff any node is an error or missing marker."""
    return any(n.kind in (ERROR_KIND, MISSING_KIND) for n in tree.root.walk())


def tokens_dfs(tree: SyntaxTree, include_comments: bool = True) -> TokenSequence:
    """Leaf tokens in depth-first order.

    With include_comments=False ("code-only" mode) comment leaves are
    dropped, which is the view used for search preprocessing and for
    comparing comment-deleting transformations.
    """
    out: list[Token] = []
    for leaf in tree.root.leaves():
        if leaf.start == leaf.end:
            continue  # zero-width markers (e.g. MISSING) carry no text
        if not include_comments and leaf.kind in COMMENT_KINDS:
            continue
        out.append(Token(tree.text_of(leaf), leaf.kind))
    return TokenSequence(tuple(out))
