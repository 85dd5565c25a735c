"""Session language: parsing, printing, execution and rendering."""

from .executor import CommandError, Config, Report, Session, execute_session, infer_twists
from .lexer import DSLError, ParseError, SemanticError, Span
from .parser import parse_expression, parse_polynomial, parse_session
from .printer import render_session
from .render import render

__all__ = [
    "CommandError",
    "Config",
    "DSLError",
    "ParseError",
    "Report",
    "SemanticError",
    "Session",
    "Span",
    "execute_session",
    "infer_twists",
    "parse_expression",
    "parse_polynomial",
    "parse_session",
    "render",
    "render_session",
]
