"""Exception types shared across the toolkit."""

from __future__ import annotations


class CodemorphError(Exception):
    """Base class for all toolkit errors."""


class GrammarUnavailable(CodemorphError):
    """A language grammar resource could not be located or loaded."""


class InvalidEncoding(CodemorphError):
    """Snippet text is not valid UTF-8."""


class OverlappingEdits(CodemorphError):
    """Two edits in the same edit set touch overlapping byte ranges."""


class SpanOutOfBounds(CodemorphError):
    """An edit span does not lie within the target text."""


class LanguageMismatch(CodemorphError):
    """A strategy was asked to run on a language it is not defined for."""


class InternalRenderError(CodemorphError):
    """Applying an edit set produced text that no longer parses.

    This is always a bug in a strategy, never a data problem, so it is
    raised rather than reported as NotApplicable.
    """


class MalformedLine(CodemorphError):
    """A corpus line failed to decode or is missing required fields."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class EmptyRankList(CodemorphError):
    """MRR was requested over zero ranks."""


class EmptyCorpus(CodemorphError):
    """A corpus-level score was requested over zero instances."""


class ZeroBaseline(CodemorphError):
    """A relative change was requested against a zero baseline."""


class EmptyCategory(CodemorphError):
    """A category aggregate was requested over zero strategy rows."""


class ShapeMismatch(CodemorphError):
    """Reports being averaged do not share row structure."""


class UnknownFormat(CodemorphError):
    """An unsupported output format name was requested."""
