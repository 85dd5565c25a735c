"""Run a parsed session against the engine and collect reports."""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from typing import Any

from .. import homological as hom
from .. import lab
from ..cache import ResolutionCache
from ..groebner import DEFAULT_DEGREE_CAP, DegreeCapError
from ..hilbert import HilbertSeries
from ..modules import INFINITE, HilbertFunction, Ideal, PresentedModule, QuotientRing, vec_from_polys
from ..poly import PolyRing, Polynomial, UsageError
from ..resolution import BettiTable, GradedFreeResolution, betti_table, syzygy_module, transpose
from . import ast
from .lexer import DSLError, SemanticError, Span
from .printer import expr as print_expr


class CommandError(DSLError):
    """An engine error raised by a command, tagged with the command's span."""

    def __init__(self, cause: Exception, span: Span | None):
        self.cause = cause
        super().__init__(f"{type(cause).__name__}: {cause}", span)


@dataclass
class Config:
    prime: int | None = None  # overrides the ring declaration when set
    order: str = "grevlex"
    res_bound: int = 10
    hom_bound: int = 10
    degree_bound: int = DEFAULT_DEGREE_CAP
    eta_bound: int = 100
    seed: int = 0
    cache: ResolutionCache | None = None
    timings: bool = False

    def provenance(self, prime: int) -> dict:
        return {
            "prime": prime,
            "order": self.order,
            "bounds": {
                "res": self.res_bound,
                "hom": self.hom_bound,
                "degree": self.degree_bound,
                "eta": self.eta_bound,
            },
            "seed": self.seed,
        }


@dataclass
class Report:
    command: str
    kind: str
    result: Any
    provenance: dict = field(default_factory=dict)
    wall_time: float | None = None
    cache_hits: int | None = None
    value: Any = field(default=None, compare=False, repr=False)

    def to_json(self) -> dict:
        out = {"command": self.command, "kind": self.kind, "result": self.result, "provenance": self.provenance}
        if self.wall_time is not None:
            out["wall_time"] = self.wall_time
        if self.cache_hits is not None:
            out["cache_hits"] = self.cache_hits
        return out

    @classmethod
    def from_json(cls, d: dict) -> "Report":
        return cls(d["command"], d["kind"], d["result"], d["provenance"], d.get("wall_time"), d.get("cache_hits"))


# ---------------------------------------------------------------------------
# polynomial evaluation (used by PolyRing.parse too)


def eval_polynomial(node, ring: PolyRing) -> Polynomial:
    names = {n: g for n, g in zip(ring.names, ring.gens())}

    def ev(n):
        if isinstance(n, ast.Num):
            return ring.const(n.value)
        if isinstance(n, ast.Name):
            if n.ident not in names:
                raise SemanticError(f"undeclared identifier {n.ident!r}", n.span)
            return names[n.ident]
        if isinstance(n, ast.Neg):
            return -ev(n.operand)
        if isinstance(n, ast.Tuple) and len(n.items) == 1:
            return ev(n.items[0])
        if isinstance(n, ast.BinOp):
            if n.op == "^":
                return ev(n.left) ** n.right.value
            a, b = ev(n.left), ev(n.right)
            return a + b if n.op == "+" else a - b if n.op == "-" else a * b
        raise SemanticError("not a polynomial", getattr(n, "span", None))

    return ev(node)


# ---------------------------------------------------------------------------
# twist inference


def infer_twists(ring: QuotientRing, rows: list, span=None) -> list:
    """Smallest row degrees making every entry of the matrix homogeneous.

    Rows and columns form a bipartite graph with an edge for each nonzero
    entry; entry degrees fix degree differences along edges.  Each
    connected component is normalised so its smallest row degree is 0.
    """
    nr, nc = len(rows), len(rows[0]) if rows else 0
    edges: dict = {("r", i): [] for i in range(nr)}
    edges.update({("c", j): [] for j in range(nc)})
    for i in range(nr):
        for j in range(nc):
            f = rows[i][j]
            if f.is_zero():
                continue
            if not f.is_homogeneous():
                raise SemanticError(f"matrix entry {f} is not homogeneous", span)
            e = f.degree()
            # column degree = row degree + entry degree
            edges[("r", i)].append((("c", j), e))
            edges[("c", j)].append((("r", i), -e))
    deg: dict = {}
    for i in range(nr):
        start = ("r", i)
        if start in deg:
            continue
        deg[start] = 0
        comp = [start]
        todo = deque([start])
        while todo:
            u = todo.popleft()
            for v, e in edges[u]:
                if v not in deg:
                    deg[v] = deg[u] + e
                    comp.append(v)
                    todo.append(v)
                elif deg[v] != deg[u] + e:
                    raise SemanticError("no twists make this matrix homogeneous", span)
        low = min(deg[u] for u in comp if u[0] == "r")
        for u in comp:
            deg[u] -= low
    return [deg[("r", i)] for i in range(nr)]


# ---------------------------------------------------------------------------
# session


def _is_int(v):
    return isinstance(v, int) and not isinstance(v, bool)


class Session:
    def __init__(self, config: Config | None = None):
        self.config = config or Config()
        self.ring: QuotientRing | None = None
        self.ring_name = None
        self.env: dict = {}
        self.cache_hits = 0

    # -- coercions
    def poly(self, v, span=None) -> Polynomial:
        if _is_int(v):
            return self.ring.poly.const(v)
        if isinstance(v, Polynomial):
            return v
        raise SemanticError(f"expected a ring element, got {_typename(v)}", span)

    def ideal(self, v, span=None) -> Ideal:
        if isinstance(v, Ideal):
            return v
        if isinstance(v, list):
            return self.ring.ideal([self.poly(x, span) for x in v])
        return self.ring.ideal([self.poly(v, span)])

    def module(self, v, span=None) -> PresentedModule:
        if isinstance(v, PresentedModule):
            return v
        if isinstance(v, GradedFreeResolution):
            return v.module
        raise SemanticError(f"expected a module, got {_typename(v)}", span)

    def integer(self, v, span=None) -> int:
        if _is_int(v):
            return v
        raise SemanticError(f"expected an integer, got {_typename(v)}", span)

    def modules(self, v, span=None) -> list:
        if not isinstance(v, list):
            v = [v]
        return [self.module(m, span) for m in v]

    # -- resolution with cache
    def resolve(self, M: PresentedModule, length: int) -> GradedFreeResolution:
        c = self.config.cache
        if c is None:
            return GradedFreeResolution(M, length)
        before = c.hits
        res = c.resolve(M, length, self.config.order, self.config.degree_bound)
        self.cache_hits += c.hits - before
        return res

    # -- statements
    def declare_ring(self, st: ast.RingDecl):
        if self.ring is not None:
            raise SemanticError("one ring per session", st.span)
        p = self.config.prime or st.prime
        try:
            poly = PolyRing(st.variables, p, self.config.order)
            rels = [eval_polynomial(r, poly) for r in st.relations]
            self.ring = QuotientRing(poly, rels, self.config.degree_bound)
        except UsageError as e:
            raise CommandError(e, st.span) from e
        self.ring_name = st.name
        self.env = {
            st.name: self.ring.free(),
            "R": self.ring.free(),
            "k": self.ring.residue_field(),
        }
        for n, g in zip(poly.names, poly.gens()):
            self.env[n] = g

    def eval(self, node):
        if isinstance(node, ast.Num):
            return node.value
        if isinstance(node, ast.Str):
            return node.value
        if isinstance(node, ast.Name):
            if node.ident not in self.env:
                raise SemanticError(f"undeclared identifier {node.ident!r}", node.span)
            return self.env[node.ident]
        if isinstance(node, ast.Neg):
            v = self.eval(node.operand)
            return -v if _is_int(v) else -self.poly(v, node.span)
        if isinstance(node, ast.BinOp):
            a = self.eval(node.left)
            if node.op == "^":
                e = node.right.value
                return a**e if _is_int(a) else self.poly(a, node.span) ** e
            b = self.eval(node.right)
            if _is_int(a) and _is_int(b):
                return a + b if node.op == "+" else a - b if node.op == "-" else a * b
            a, b = self.poly(a, node.span), self.poly(b, node.span)
            return a + b if node.op == "+" else a - b if node.op == "-" else a * b
        if isinstance(node, ast.Tuple):
            if len(node.items) == 1:
                return self.eval(node.items[0])
            return self.ideal([self.eval(x) for x in node.items], node.span)
        if isinstance(node, ast.ListLit):
            return [self.eval(x) for x in node.items]
        if isinstance(node, ast.Coker):
            return self.coker(node)
        if isinstance(node, ast.Call):
            return self.call(node)
        raise SemanticError(f"cannot evaluate {type(node).__name__}", getattr(node, "span", None))

    def coker(self, node: ast.Coker) -> PresentedModule:
        rows = [[self.ring.reduce(self.poly(self.eval(x), node.span)) for x in r] for r in node.rows]
        if node.twists is not None:
            if len(node.twists) != len(rows):
                raise SemanticError("twists must list one degree per matrix row", node.span)
            degs = list(node.twists)
        else:
            degs = infer_twists(self.ring, rows, node.span)
        ncols = len(rows[0])
        cols = [vec_from_polys(self.ring, [rows[i][j] for i in range(len(rows))]) for j in range(ncols)]
        try:
            return PresentedModule(self.ring, degs, cols)
        except UsageError as e:
            raise CommandError(e, node.span) from e

    def matrix_columns(self, v, span) -> list:
        """A list of rows (as written in the DSL) turned into column dicts."""
        if not isinstance(v, list) or not all(isinstance(r, list) for r in v):
            raise SemanticError("expected a matrix [[...], ...]", span)
        rows = [[self.poly(x, span) for x in r] for r in v]
        if not rows:
            return []
        return [vec_from_polys(self.ring, [r[j] for r in rows]) for j in range(len(rows[0]))]

    def call(self, node: ast.Call):
        spec = COMMANDS.get(node.func)
        if spec is None:
            raise SemanticError(f"unknown command {node.func!r}", node.span)
        args = [self.eval(a) for a in node.args]
        kwargs = {k: self.eval(v) for k, v in node.kwargs}
        try:
            return spec(self, node, *args, **kwargs)
        except TypeError as e:
            raise SemanticError(f"bad arguments to {node.func}: {e}", node.span) from e
        except (UsageError, DegreeCapError, hom.InvariantViolation) as e:
            raise CommandError(e, node.span) from e

    def run(self, session: ast.Session) -> list:
        reports = []
        for st in session.statements:
            if isinstance(st, ast.RingDecl):
                self.declare_ring(st)
                continue
            if self.ring is None:
                raise SemanticError("no active ring", st.span)
            if isinstance(st, ast.Binding):
                v = self.eval(st.value)
                if st.kind == "ideal":
                    v = self.ideal(v, st.span)
                elif st.kind == "module":
                    v = self.module(v, st.span)
                self.env[st.name] = v
                continue
            t0 = time.perf_counter()
            hits0 = self.cache_hits
            value = self.eval(st.call)
            wall = time.perf_counter() - t0
            kind, result = describe(value)
            rep = Report(print_expr(st.call), kind, result, self.config.provenance(self.ring.p), value=value)
            if self.config.timings:
                rep.wall_time = round(wall, 6)
                rep.cache_hits = self.cache_hits - hits0
            reports.append(rep)
        return reports


def execute_session(session: ast.Session, config: Config | None = None) -> list:
    return Session(config).run(session)


def _typename(v) -> str:
    if _is_int(v):
        return "integer"
    return {
        Polynomial: "ring element",
        Ideal: "ideal",
        PresentedModule: "module",
        GradedFreeResolution: "resolution",
        str: "string",
        list: "list",
    }.get(type(v), type(v).__name__)


# ---------------------------------------------------------------------------
# result descriptions


def _module_json(M: PresentedModule) -> dict:
    return {
        "generators": list(M.degrees),
        "relations": len(M.columns),
        "relation_degrees": list(M.col_degrees),
        "hilbert_series": M.hilbert_series().to_json(),
    }


def _length_json(n):
    return "inf" if n is INFINITE else n


def describe(value) -> tuple:
    if isinstance(value, BettiTable):
        return "betti", value.to_json()
    if isinstance(value, GradedFreeResolution):
        bt = betti_table(value)
        return "resolution", {
            "betti": bt.to_json(),
            "complete": value.complete,
            "projective_dimension": value.projective_dimension,
        }
    if isinstance(value, PresentedModule):
        return "module", _module_json(value)
    if isinstance(value, Ideal):
        return "ideal", {"generators": [str(g) for g in value.gens]}
    if isinstance(value, Polynomial):
        return "element", {"value": str(value)}
    if isinstance(value, bool):
        return "boolean", {"value": value}
    if _is_int(value) or value is INFINITE:
        return "integer", {"value": _length_json(value)}
    if isinstance(value, HilbertFunction):
        return "hilbert", {"values": list(value.values), "series": value.series.to_json()}
    if isinstance(value, list) and value and all(isinstance(h, hom.HomologyModule) for h in value):
        return value[0].kind.lower(), {"modules": [h.to_json() for h in value]}
    if isinstance(value, hom.RegularSequence):
        return "regular_sequence", {
            "found": True,
            "elements": [str(x) for x in value.elements],
            "trials": value.trials,
        }
    if isinstance(value, hom.NotFound):
        return "regular_sequence", {
            "found": False,
            "elements": [str(x) for x in value.found],
            "slot": value.slot,
            "trials": value.trials,
            "reason": value.reason,
        }
    if value is None:
        return "none", None
    names = {
        hom.DepthCertificate: "depth",
        lab.EtaEstimate: "eta",
        lab.InequalityReport: "audit",
        lab.RigidityReport: "rigidity",
        lab.SplittingReport: "splitting",
        lab.Periodicity: "periodicity",
        lab.ComplexityEstimate: "complexity",
        lab.VanishingReport: "vanishing",
        lab.AdditivityReport: "additivity",
    }
    for cls, name in names.items():
        if isinstance(value, cls):
            return name, value.to_json()
    raise SemanticError(f"cannot report a value of type {_typename(value)}")


# ---------------------------------------------------------------------------
# command table; each entry takes (session, call node, *args, **kwargs)


def _c_depth(s, n, a, M):
    return hom.depth(s.ideal(a, n.span), s.module(M, n.span))


def _c_resolve(s, n, M, length=None):
    if isinstance(M, GradedFreeResolution):
        M = M.module
    L = s.config.res_bound if length is None else s.integer(length, n.span)
    return s.resolve(s.module(M, n.span), L)


def _c_betti(s, n, x, upto=None):
    if isinstance(x, GradedFreeResolution):
        res = x
    else:
        res = s.resolve(s.module(x, n.span), s.config.res_bound)
    up = None if upto is None else s.integer(upto, n.span)
    return betti_table(res, up)


def _c_tor(s, n, M, N, i_max=None):
    M, N = s.module(M, n.span), s.module(N, n.span)
    i = s.config.hom_bound if i_max is None else s.integer(i_max, n.span)
    return hom.tor(M, N, i, s.resolve(M, i + 1))


def _c_ext(s, n, M, N, i_max=None):
    M, N = s.module(M, n.span), s.module(N, n.span)
    i = s.config.hom_bound if i_max is None else s.integer(i_max, n.span)
    return hom.ext(M, N, i, s.resolve(M, i + 1))


def _c_transpose(s, n, M):
    return transpose(s.module(M, n.span))


def _c_syzygy(s, n, M, k=1):
    M = s.module(M, n.span)
    k = s.integer(k, n.span)
    return syzygy_module(M, k, s.resolve(M, k + 1) if k else None)


def _c_eta(s, n, M, N, bound=None):
    b = s.config.eta_bound if bound is None else s.integer(bound, n.span)
    return lab.eta_estimate(s.module(M, n.span), s.module(N, n.span), b)


def _c_audit(s, n, a, N, k, bound=8):
    return lab.audit_depth_inequality(s.ideal(a, n.span), s.module(N, n.span), s.integer(k, n.span), bound=s.integer(bound))


def _c_probe(s, n, M, k, tests=None, bound=8):
    M = s.module(M, n.span)
    tests = lab.default_tests(s.ring) if tests is None else s.modules(tests, n.span)
    return lab.probe_tor_rigidity(M, s.integer(k, n.span), tests, s.integer(bound, n.span))


def _c_split(s, n, N, k, xs, form="lemma42"):
    N = s.module(N, n.span)
    if isinstance(xs, Ideal):
        xs = list(xs.gens)
    elif not isinstance(xs, (list, hom.RegularSequence)):
        xs = [xs]
    if isinstance(xs, list):
        xs = [s.poly(x, n.span) for x in xs]
    return lab.verify_cut_syzygy_splitting(N, s.integer(k, n.span), xs, form)


def _c_hilbert(s, n, M, D=12):
    M = s.module(M, n.span)
    lo = min(M.degrees) if M.degrees else 0
    return M.hilbert_function(s.integer(D, n.span), lo)


def _c_dim(s, n, M):
    return s.module(M, n.span).dimension()


def _c_length(s, n, M):
    return hom.length(s.module(M, n.span))


def _c_periodicity(s, n, N, bound=12):
    return lab.detect_periodicity(s.module(N, n.span), s.integer(bound, n.span))


def _c_complexity(s, n, M, bound=12):
    return lab.complexity_estimate(s.module(M, n.span), s.integer(bound, n.span))


def _c_regseq(s, n, a, mods, k, annihilate=None, budget=200):
    N = None if annihilate is None else s.module(annihilate, n.span)
    return hom.find_regular_sequence(
        s.ideal(a, n.span), s.modules(mods, n.span), s.integer(k, n.span), N, seed=s.config.seed, budget=s.integer(budget)
    )


def _c_is_regular(s, n, x, M):
    return hom.is_regular_element(s.poly(x, n.span), s.module(M, n.span))


def _c_annihilates(s, n, x, N):
    return hom.annihilates_ext1(s.poly(x, n.span), s.module(N, n.span))


def _c_vanishing(s, n, B, A, m, bound=12, r=0):
    return lab.check_vanishing_propagation(
        s.module(B, n.span), s.module(A, n.span), s.integer(m, n.span), s.integer(bound), s.integer(r)
    )


def _c_quotient(s, n, x, a=None):
    if a is None:
        return s.ideal(x, n.span).quotient_module()
    M = s.module(x, n.span)
    return M.quotient_by(list(s.ideal(a, n.span).gens))


def _c_sum(s, n, *mods):
    return lab.direct_sum([s.module(m, n.span) for m in mods], s.ring)


def _c_twist(s, n, M, d):
    return s.module(M, n.span).twist(s.integer(d, n.span))


def _c_free(s, n, degrees):
    if _is_int(degrees):
        degrees = [0] * degrees
    return s.ring.free([s.integer(d, n.span) for d in degrees])


def _c_annihilator(s, n, M):
    return hom.annihilator(s.module(M, n.span))


def _c_ideal(s, n, *gens):
    return s.ideal(list(gens), n.span)


def _c_additivity(s, n, M1, M, M2, iota, pi, N, bound=None):
    b = s.config.eta_bound if bound is None else s.integer(bound, n.span)
    maps = (s.matrix_columns(iota, n.span), s.matrix_columns(pi, n.span))
    return lab.eta_additivity_check(
        s.module(M1, n.span), s.module(M, n.span), s.module(M2, n.span), maps, s.module(N, n.span), b
    )


COMMANDS = {
    "depth": _c_depth,
    "resolve": _c_resolve,
    "betti": _c_betti,
    "tor": _c_tor,
    "ext": _c_ext,
    "transpose": _c_transpose,
    "syzygy": _c_syzygy,
    "eta": _c_eta,
    "audit": _c_audit,
    "probe_rigidity": _c_probe,
    "verify_splitting": _c_split,
    "hilbert": _c_hilbert,
    "dim": _c_dim,
    "length": _c_length,
    "periodicity": _c_periodicity,
    "complexity": _c_complexity,
    "regular_sequence": _c_regseq,
    "is_regular": _c_is_regular,
    "annihilates": _c_annihilates,
    "vanishing": _c_vanishing,
    "quotient": _c_quotient,
    "sum": _c_sum,
    "twist": _c_twist,
    "free": _c_free,
    "annihilator": _c_annihilator,
    "ideal": _c_ideal,
    "additivity": _c_additivity,
}
