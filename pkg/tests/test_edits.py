"""Byte-edit application: examples plus locality/identity properties."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from codemorph.edits import Edit, EditSet, apply_edits
from codemorph.errors import OverlappingEdits, SpanOutOfBounds


def test_empty_edit_set_is_identity():
    assert apply_edits(b"abc", EditSet()) == b"abc"


def test_single_replacement():
    edits = EditSet((Edit(1, 3, b"= x +"),))
    assert apply_edits(b"x+=1", edits) == b"x= x +1"


def test_out_of_bounds_rejected():
    with pytest.raises(SpanOutOfBounds):
        apply_edits(b"abc", EditSet((Edit(2, 5, b"x"),)))


def test_overlapping_rejected():
    with pytest.raises(OverlappingEdits):
        EditSet((Edit(0, 3, b"x"), Edit(2, 4, b"y")))


def test_duplicate_insert_point_rejected():
    with pytest.raises(OverlappingEdits):
        EditSet((Edit(1, 1, b"x"), Edit(1, 1, b"y")))


def test_edits_sorted_on_construction():
    edits = EditSet((Edit(4, 5, b"B"), Edit(0, 1, b"A")))
    assert [e.start for e in edits.edits] == [0, 4]


@given(st.binary(max_size=40))
def test_identity_property(text):
    assert apply_edits(text, EditSet()) == text


@st.composite
def text_and_edits(draw):
    text = draw(st.binary(min_size=0, max_size=60))
    n = draw(st.integers(min_value=0, max_value=4))
    cuts = sorted(draw(st.lists(st.integers(min_value=0, max_value=len(text)),
                                min_size=2 * n, max_size=2 * n)))
    edits = []
    for i in range(n):
        start, end = cuts[2 * i], cuts[2 * i + 1]
        if edits and edits[-1].end == start and edits[-1].start == edits[-1].end == start == end:
            continue
        replacement = draw(st.binary(max_size=6))
        edits.append(Edit(start, end, replacement))
    try:
        return text, EditSet(tuple(edits))
    except OverlappingEdits:
        return text, EditSet()


@given(text_and_edits())
def test_locality_property(arg):
    """Bytes outside the edit spans appear unchanged and in order."""
    text, edits = arg
    result = apply_edits(text, edits)
    expected = b""
    prev = 0
    for edit in edits.edits:
        expected += text[prev:edit.start] + bytes(edit.replacement)
        prev = edit.end
    expected += text[prev:]
    assert result == expected
