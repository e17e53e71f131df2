"""Languages and the source snippet unit that flows through the pipeline."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from codemorph.errors import InvalidEncoding


class Language(Enum):
    JAVA = "java"
    PYTHON = "python"

    @classmethod
    def parse(cls, name: str) -> "Language":
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise ValueError(f"unsupported language: {name!r}") from None


@dataclass(frozen=True)
class SourceSnippet:
    """One code unit: an id, a language and the raw UTF-8 text."""

    id: str
    language: Language
    text: bytes

    def __post_init__(self) -> None:
        if isinstance(self.text, str):  # accept str for convenience
            object.__setattr__(self, "text", self.text.encode("utf-8"))
        try:
            self.text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InvalidEncoding(f"snippet {self.id!r}: {exc}") from None

    @property
    def str_text(self) -> str:
        return self.text.decode("utf-8")
