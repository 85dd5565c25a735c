"""Tokenizer for session files."""

from __future__ import annotations

import re
from dataclasses import dataclass


@dataclass(frozen=True)
class Span:
    line: int
    col: int
    end_line: int = 0
    end_col: int = 0

    def __str__(self):
        return f"{self.line}:{self.col}"


class DSLError(Exception):
    """Error raised while reading or running a session; carries a source span."""

    def __init__(self, message: str, span: Span | None = None, expected=None):
        self.message = message
        self.span = span
        self.expected = sorted(expected) if expected else []
        super().__init__(self.render())

    def render(self) -> str:
        where = f"{self.span}: " if self.span else ""
        msg = f"{where}{self.message}"
        if self.expected:
            msg += " (expected one of: " + ", ".join(self.expected) + ")"
        return msg


class ParseError(DSLError):
    pass


class SemanticError(DSLError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str  # ID, INT, STRING, EOF, or the punctuation text itself
    text: str
    span: Span


KEYWORDS = {"ring", "ideal", "module", "let", "coker", "twists", "GF"}

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<INT>\d+)
  | (?P<ID>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<STRING>"[^"\n]*")
  | (?P<punct>[()\[\],;=+\-*^/])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> list[Token]:
    out = []
    line, col, i = 1, 1, 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m:
            raise ParseError(f"unexpected character {text[i]!r}", Span(line, col, line, col + 1))
        kind = m.lastgroup
        s = m.group()
        end = Span(line, col, line, col + len(s))
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind == "punct":
                out.append(Token(s, s, end))
            elif kind == "ID" and s in KEYWORDS:
                out.append(Token(s, s, end))
            elif kind in ("INT", "ID", "STRING"):
                out.append(Token(kind, s, end))
            col += len(s)
        i = m.end()
    out.append(Token("EOF", "", Span(line, col, line, col)))
    return out
