"""Syntax tree of a session.  Spans never take part in equality."""

from __future__ import annotations

from dataclasses import dataclass, field

from .lexer import Span


def _span():
    return field(default=None, compare=False, repr=False)


# -- expressions ---------------------------------------------------------------


@dataclass
class Num:
    value: int
    span: Span | None = _span()


@dataclass
class Str:
    value: str
    span: Span | None = _span()


@dataclass
class Name:
    ident: str
    span: Span | None = _span()


@dataclass
class BinOp:
    op: str  # + - * ^
    left: object
    right: object
    span: Span | None = _span()


@dataclass
class Neg:
    operand: object
    span: Span | None = _span()


@dataclass
class Tuple:
    """Parenthesised list: grouping with one item, an ideal literal otherwise."""

    items: list
    span: Span | None = _span()


@dataclass
class ListLit:
    items: list
    span: Span | None = _span()


@dataclass
class Call:
    func: str
    args: list
    kwargs: list  # [(name, expr)]
    span: Span | None = _span()


@dataclass
class Coker:
    rows: list  # list of rows, each a list of expressions
    twists: list | None = None
    span: Span | None = _span()


# -- statements ----------------------------------------------------------------


@dataclass
class RingDecl:
    name: str
    prime: int
    variables: list
    relations: list
    span: Span | None = _span()


@dataclass
class Binding:
    kind: str  # ideal, module, let
    name: str
    value: object
    span: Span | None = _span()


@dataclass
class Command:
    call: Call
    span: Span | None = _span()


@dataclass
class Session:
    statements: list = field(default_factory=list)
