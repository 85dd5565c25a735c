"""Recursive-descent parser for session files.

Grammar::

    session  := stmt*
    stmt     := ring | binding | call ";"
    ring     := "ring" ID "=" "GF" "(" INT ")" "[" ID ("," ID)* "]"
                ["/" "(" expr ("," expr)* ")"] ";"
    binding  := ("ideal" | "module" | "let") ID "=" expr ";"
    expr     := term (("+" | "-") term)*
    term     := unary ("*" unary)*
    unary    := "-" unary | power
    power    := atom ["^" INT]
    atom     := INT | STRING | ID | call | "(" expr ("," expr)* ")"
              | "[" [expr ("," expr)*] "]" | coker
    call     := ID "(" [arg ("," arg)*] ")"      arg := expr | ID "=" expr
    coker    := "coker" "[" row ("," row)* "]" ["twists" "[" int ("," int)* "]"]
"""

from __future__ import annotations

from . import ast
from .lexer import KEYWORDS, ParseError, SemanticError, Span, Token, tokenize
from ..poly import is_prime

# builtins that exist once a ring is declared
BUILTINS = ("R", "k")


class Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    # -- token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def accept(self, kind: str):
        if self.tok.kind == kind:
            return self.advance()
        return None

    def expect(self, *kinds: str) -> Token:
        if self.tok.kind in kinds:
            return self.advance()
        self.fail(set(kinds))

    def fail(self, expected):
        t = self.tok
        got = "end of input" if t.kind == "EOF" else repr(t.text)
        raise ParseError(f"unexpected {got}", t.span, expected)

    # -- statements
    def session(self) -> ast.Session:
        out = []
        while self.tok.kind != "EOF":
            out.append(self.statement())
        return ast.Session(out)

    def statement(self):
        t = self.tok
        if t.kind == "ring":
            return self.ring()
        if t.kind in ("ideal", "module", "let"):
            self.advance()
            name = self.expect("ID")
            self.expect("=")
            value = self.expr()
            self.expect(";")
            return ast.Binding(t.kind, name.text, value, t.span)
        if t.kind == "ID" and self.peek().kind == "(":
            call = self.call()
            self.expect(";")
            return ast.Command(call, t.span)
        self.fail({"ring", "ideal", "module", "let", "ID"})

    def ring(self):
        start = self.expect("ring")
        name = self.expect("ID").text
        self.expect("=")
        self.expect("GF")
        self.expect("(")
        p = self.expect("INT")
        self.expect(")")
        self.expect("[")
        names = [self.expect("ID").text]
        while self.accept(","):
            names.append(self.expect("ID").text)
        self.expect("]")
        rels = []
        if self.accept("/"):
            self.expect("(")
            rels.append(self.expr())
            while self.accept(","):
                rels.append(self.expr())
            self.expect(")")
        self.expect(";")
        prime = int(p.text)
        if not is_prime(prime):
            raise SemanticError(f"{prime} is not prime", p.span)
        return ast.RingDecl(name, prime, names, rels, start.span)

    # -- expressions
    def expr(self):
        left = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.advance()
            left = ast.BinOp(op.kind, left, self.term(), op.span)
        return left

    def term(self):
        left = self.unary()
        while self.tok.kind == "*":
            op = self.advance()
            left = ast.BinOp("*", left, self.unary(), op.span)
        return left

    def unary(self):
        if self.tok.kind == "-":
            t = self.advance()
            return ast.Neg(self.unary(), t.span)
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok.kind == "^":
            op = self.advance()
            e = self.expect("INT")
            return ast.BinOp("^", base, ast.Num(int(e.text), e.span), op.span)
        return base

    def atom(self):
        t = self.tok
        if t.kind == "INT":
            self.advance()
            return ast.Num(int(t.text), t.span)
        if t.kind == "STRING":
            self.advance()
            return ast.Str(t.text[1:-1], t.span)
        if t.kind == "ID":
            if self.peek().kind == "(":
                return self.call()
            self.advance()
            return ast.Name(t.text, t.span)
        if t.kind == "(":
            self.advance()
            items = [self.expr()]
            while self.accept(","):
                items.append(self.expr())
            self.expect(")")
            return ast.Tuple(items, t.span)
        if t.kind == "[":
            self.advance()
            items = []
            if self.tok.kind != "]":
                items.append(self.expr())
                while self.accept(","):
                    items.append(self.expr())
            self.expect("]")
            return ast.ListLit(items, t.span)
        if t.kind == "coker":
            return self.coker()
        self.fail({"INT", "STRING", "ID", "(", "[", "coker"})

    def call(self):
        name = self.expect("ID")
        self.expect("(")
        args, kwargs = [], []
        if self.tok.kind != ")":
            while True:
                if self.tok.kind == "ID" and self.peek().kind == "=":
                    key = self.advance().text
                    self.advance()
                    kwargs.append((key, self.expr()))
                else:
                    if kwargs:
                        raise ParseError("positional argument after keyword argument", self.tok.span)
                    args.append(self.expr())
                if not self.accept(","):
                    break
        self.expect(")")
        return ast.Call(name.text, args, kwargs, name.span)

    def coker(self):
        start = self.expect("coker")
        self.expect("[")
        rows = [self.row()]
        while self.accept(","):
            rows.append(self.row())
        self.expect("]")
        twists = None
        if self.accept("twists"):
            self.expect("[")
            twists = [self.signed_int()]
            while self.accept(","):
                twists.append(self.signed_int())
            self.expect("]")
        if len({len(r) for r in rows}) > 1:
            raise ParseError("matrix rows have different lengths", start.span)
        return ast.Coker(rows, twists, start.span)

    def row(self):
        self.expect("[")
        items = [self.expr()]
        while self.accept(","):
            items.append(self.expr())
        self.expect("]")
        return items

    def signed_int(self) -> int:
        neg = self.accept("-")
        v = int(self.expect("INT").text)
        return -v if neg else v


# -- scope check ---------------------------------------------------------------


def _names(node):
    """Yield every Name node inside an expression."""
    if isinstance(node, ast.Name):
        yield node
    elif isinstance(node, ast.BinOp):
        yield from _names(node.left)
        yield from _names(node.right)
    elif isinstance(node, ast.Neg):
        yield from _names(node.operand)
    elif isinstance(node, (ast.Tuple, ast.ListLit)):
        for x in node.items:
            yield from _names(x)
    elif isinstance(node, ast.Call):
        for x in node.args:
            yield from _names(x)
        for _, x in node.kwargs:
            yield from _names(x)
    elif isinstance(node, ast.Coker):
        for r in node.rows:
            for x in r:
                yield from _names(x)


def check_scopes(session: ast.Session):
    """Every identifier must be declared earlier; exactly one ring per session."""
    ring = None
    known: set = set()
    for st in session.statements:
        if isinstance(st, ast.RingDecl):
            if ring is not None:
                raise SemanticError(f"a ring ({ring.name}) is already active; one ring per session", st.span)
            if len(set(st.variables)) != len(st.variables):
                raise SemanticError("repeated variable name", st.span)
            clash = [v for v in st.variables if v in KEYWORDS]
            if clash:
                raise SemanticError(f"{clash[0]} is reserved", st.span)
            ring = st
            known = set(st.variables) | {st.name, *BUILTINS}
            for rel in st.relations:
                for n in _names(rel):
                    if n.ident not in st.variables:
                        raise SemanticError(f"undeclared identifier {n.ident!r}", n.span)
            continue
        if ring is None:
            raise SemanticError("no active ring", st.span)
        value = st.call if isinstance(st, ast.Command) else st.value
        for n in _names(value):
            if n.ident not in known:
                raise SemanticError(f"undeclared identifier {n.ident!r}", n.span)
        if isinstance(st, ast.Binding):
            known.add(st.name)


def parse_session(text: str, check: bool = True) -> ast.Session:
    s = Parser(text).session()
    if check:
        check_scopes(s)
    return s


def parse_expression(text: str):
    p = Parser(text)
    e = p.expr()
    p.expect("EOF")
    return e


def parse_polynomial(text: str, ring):
    """Parse a polynomial over ``ring`` (a PolyRing)."""
    from .executor import eval_polynomial

    return eval_polynomial(parse_expression(text), ring)
