"""Byte-range edits against an original text.

A transformation is an ordered set of non-overlapping replacements on the
ORIGINAL bytes; applying them right-to-left means earlier spans never
shift. Untouched bytes are guaranteed to appear unchanged in the output.
"""

from __future__ import annotations

from dataclasses import dataclass

from codemorph.errors import OverlappingEdits, SpanOutOfBounds


@dataclass(frozen=True)
class Edit:
    start: int
    end: int
    replacement: bytes

    def __post_init__(self) -> None:
        if isinstance(self.replacement, str):
            object.__setattr__(self, "replacement", self.replacement.encode("utf-8"))
        if self.start > self.end:
            raise ValueError(f"bad edit span [{self.start},{self.end})")

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)


@dataclass(frozen=True)
class EditSet:
    edits: tuple[Edit, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "edits", tuple(sorted(self.edits, key=lambda e: (e.start, e.end))))
        prev_end = None
        for edit in self.edits:
            if prev_end is not None and edit.start < prev_end:
                raise OverlappingEdits(f"edit at {edit.span} overlaps previous end {prev_end}")
            # Two zero-width inserts at the same offset would be ambiguous.
            if prev_end is not None and edit.start == prev_end and edit.start == edit.end:
                prev = self.edits[self.edits.index(edit) - 1]
                if prev.start == prev.end == edit.start:
                    raise OverlappingEdits(f"duplicate insertion point at {edit.start}")
            prev_end = edit.end

    def __len__(self) -> int:
        return len(self.edits)

    def spans(self) -> list[tuple[int, int]]:
        return [e.span for e in self.edits]


def apply_edits(text: bytes, edits: EditSet) -> bytes:
    """Replace each edit span in text, right-to-left."""
    for edit in edits.edits:
        if edit.end > len(text) or edit.start > len(text):
            raise SpanOutOfBounds(f"edit span {edit.span} outside text of length {len(text)}")
    out = text
    for edit in reversed(edits.edits):
        out = out[:edit.start] + edit.replacement + out[edit.end:]
    return out
