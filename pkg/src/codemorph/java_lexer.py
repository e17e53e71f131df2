"""Byte-level Java lexer.

Produces tokens with exact byte spans; comments come out as ordinary
tokens and are filtered/spliced by the parser. Unknown bytes become
one-byte ERROR tokens so downstream error recovery can keep going.
"""

from __future__ import annotations

from dataclasses import dataclass

from codemorph.grammar import java_grammar

IDENT_START = frozenset(
    b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_$"
)
IDENT_CONT = IDENT_START | frozenset(b"0123456789")
DIGITS = frozenset(b"0123456789")
WS = frozenset(b" \t\r\n\f")


@dataclass(frozen=True)
class JavaToken:
    kind: str  # identifier / keyword / literal kinds / operator text / comment kinds / ERROR
    start: int
    end: int
    text: str

    @property
    def is_comment(self) -> bool:
        return self.kind in ("line_comment", "block_comment")


def _classify_number(text: str) -> str:
    lowered = text.lower()
    if lowered.startswith("0x"):
        return "hex_floating_point_literal" if ("p" in lowered or "." in lowered) else "hex_integer_literal"
    if lowered.startswith("0b"):
        return "binary_integer_literal"
    if "." in lowered or "e" in lowered.split("x")[0] or lowered.endswith(("f", "d")):
        return "decimal_floating_point_literal"
    if lowered.startswith("0") and len(lowered) > 1 and lowered.rstrip("l").isdigit():
        return "octal_integer_literal"
    return "decimal_integer_literal"


def lex(source: bytes) -> list[JavaToken]:
    grammar = java_grammar()
    keywords = frozenset(grammar["keywords"])
    operators = sorted(grammar["operators"], key=len, reverse=True)
    op_bytes = [op.encode() for op in operators]

    tokens: list[JavaToken] = []
    i = 0
    n = len(source)

    def emit(kind: str, start: int, end: int) -> None:
        tokens.append(JavaToken(kind, start, end, source[start:end].decode("utf-8", "replace")))

    while i < n:
        b = source[i]
        if b in WS:
            i += 1
            continue
        start = i
        # comments
        if source.startswith(b"//", i):
            j = source.find(b"\n", i)
            j = n if j == -1 else j
            emit("line_comment", start, j)
            i = j
            continue
        if source.startswith(b"/*", i):
            j = source.find(b"*/", i + 2)
            j = n if j == -1 else j + 2
            emit("block_comment", start, j)
            i = j
            continue
        # identifiers / keywords (non-ASCII bytes allowed inside identifiers)
        if b in IDENT_START or b >= 0x80:
            j = i + 1
            while j < n and (source[j] in IDENT_CONT or source[j] >= 0x80):
                j += 1
            text = source[start:j].decode("utf-8", "replace")
            emit("keyword" if text in keywords else "identifier", start, j)
            i = j
            continue
        # numbers (a leading '.' digit form like .5 as well)
        if b in DIGITS or (b == ord(".") and i + 1 < n and source[i + 1] in DIGITS):
            j = i
            seen_exp = False
            while j < n:
                c = source[j]
                if c in b"eEpP" and j + 1 < n and source[j + 1] in b"+-0123456789":
                    seen_exp = True
                    j += 1
                elif seen_exp and c in b"+-" and source[j - 1] in b"eEpP":
                    j += 1
                elif c in DIGITS or c in b"abcdefABCDEF_.xXbB":
                    j += 1
                elif c in b"lLfFdD":
                    j += 1
                else:
                    break
            # greedy scan can overrun: "1.foo()" — back off trailing '.'
            while source[j - 1:j] == b"." and not (j < n and source[j] in DIGITS):
                j -= 1
            emit(_classify_number(source[start:j].decode("ascii", "replace")), start, j)
            i = j
            continue
        # char / string / text block
        if b == ord("'"):
            j = i + 1
            while j < n and source[j] != ord("'"):
                j += 2 if source[j] == ord("\\") else 1
            emit("character_literal", start, min(j + 1, n))
            i = min(j + 1, n)
            continue
        if b == ord('"'):
            if source.startswith(b'"""', i):
                j = source.find(b'"""', i + 3)
                j = n if j == -1 else j + 3
                emit("text_block", start, j)
                i = j
                continue
            j = i + 1
            while j < n and source[j] not in b'"\n':
                j += 2 if source[j] == ord("\\") else 1
            emit("string_literal", start, min(j + 1, n))
            i = min(j + 1, n)
            continue
        # operators / punctuation
        for op in op_bytes:
            if source.startswith(op, i):
                text = op.decode()
                emit(text, start, i + len(op))
                i += len(op)
                break
        else:
            emit("ERROR", start, i + 1)
            i += 1
    return tokens
