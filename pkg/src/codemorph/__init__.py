"""codemorph: semantic-preserving Java/Python source transformations plus
robustness-delta evaluation tooling for code models."""

from codemorph.lang import Language, SourceSnippet

__all__ = ["Language", "SourceSnippet"]
__version__ = "0.1.0"
