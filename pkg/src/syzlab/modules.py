"""Graded quotient rings, ideals and finitely presented modules."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .groebner import DEFAULT_DEGREE_CAP, Engine, ideal_basis
from .hilbert import HilbertSeries, free_series, series_from_leads
from .poly import (
    FreeModule,
    MonomialOrder,
    NON_HOMOGENEOUS,
    PolyRing,
    Polynomial,
    UsageError,
    Vector,
    d_axpy,
    d_mul_poly,
    format_dict,
    vector_degree,
)


class _Infinite:
    """Length of a module that is not of finite length."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Infinite"

    def __str__(self):
        return "inf"


INFINITE = _Infinite()


class QuotientRing:
    """``R = F_p[x_1..x_v] / I`` with ``I`` homogeneous."""

    def __init__(self, poly: PolyRing, relations: Sequence = (), cap: int = DEFAULT_DEGREE_CAP):
        self.poly = poly
        rels = []
        for f in relations:
            f = _as_poly(poly, f)
            if f.is_zero():
                continue
            if not f.is_homogeneous():
                raise UsageError(f"relation {f} is not homogeneous")
            if f.degree() == 0:
                raise UsageError("relations generate the unit ideal")
            rels.append(f)
        self.relations = tuple(rels)
        self.cap = cap
        self.gb = ideal_basis(poly, [f.d for f in rels], cap)
        self._hs = None
        self._key = None

    # -- identity ------------------------------------------------------------
    @property
    def p(self):
        return self.poly.p

    @property
    def nvars(self):
        return self.poly.nvars

    def canonical(self) -> str:
        if self._key is None:
            gb = sorted(format_dict(self.poly, g) for g in self.gb)
            self._key = f"GF({self.p})[{','.join(self.poly.names)}]/{self.poly.order}/({';'.join(gb)})"
        return self._key

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        rel = ", ".join(str(f) for f in self.relations)
        return f"QuotientRing(GF({self.p})[{','.join(self.poly.names)}]" + (f"/({rel})" if rel else "") + ")"

    # -- elements ------------------------------------------------------------
    def element(self, f) -> Polynomial:
        return _as_poly(self.poly, f)

    def reduce(self, f) -> Polynomial:
        f = self.element(f)
        if not self.gb:
            return f
        eng = Engine(self.poly, (0,), self.gb)
        return Polynomial(self.poly, eng.reduce(dict(f.d))[0])

    def gens(self):
        return self.poly.gens()

    # -- invariants ----------------------------------------------------------
    def hilbert_series(self) -> HilbertSeries:
        if self._hs is None:
            leads = {0: [self.poly.decode(max(g, key=self.poly.mono_key)) for g in self.gb]}
            self._hs = series_from_leads(self.nvars, (0,), leads)
        return self._hs

    @property
    def dimension(self) -> int:
        return self.hilbert_series().dimension()

    @property
    def is_complete_intersection(self) -> bool:
        # homogeneous f_1..f_c form a regular sequence iff HS = prod(1 - t^d_i)/(1-t)^v
        num = {0: 1}
        for f in self.relations:
            d = f.degree()
            nxt: dict = {}
            for e, c in num.items():
                nxt[e] = nxt.get(e, 0) + c
                nxt[e + d] = nxt.get(e + d, 0) - c
            num = {e: c for e, c in nxt.items() if c}
        return HilbertSeries(num, self.nvars) == self.hilbert_series()

    @property
    def codim(self):
        """Number of relations when they form a regular sequence, else None."""
        return len(self.relations) if self.is_complete_intersection else None

    # -- constructors --------------------------------------------------------
    def ideal(self, gens) -> "Ideal":
        return Ideal(self, [self.element(g) for g in gens])

    def free(self, degrees: Sequence[int] = (0,)) -> "PresentedModule":
        return PresentedModule(self, tuple(degrees), [])

    def residue_field(self) -> "PresentedModule":
        return self.cyclic(self.poly.gens())

    def cyclic(self, gens, twist: int = 0) -> "PresentedModule":
        """``R/(gens)`` with its generator in degree ``twist``."""
        cols = []
        for g in gens:
            g = self.element(g)
            if g.is_zero():
                continue
            cols.append(dict(g.d))
        return PresentedModule(self, (twist,), cols)


def _as_poly(ring: PolyRing, f) -> Polynomial:
    if isinstance(f, Polynomial):
        if f.ring != ring:
            raise UsageError("polynomial from a different ring")
        return f
    if isinstance(f, int):
        return ring.const(f)
    if isinstance(f, str):
        return ring.parse(f)
    raise UsageError(f"cannot interpret {f!r} as a polynomial")


@dataclass
class Ideal:
    ring: QuotientRing
    gens: list

    def __post_init__(self):
        for g in self.gens:
            if not g.is_zero() and not g.is_homogeneous():
                raise UsageError(f"ideal generator {g} is not homogeneous")
        self.gens = [g for g in self.gens if not g.is_zero()]

    @property
    def is_proper(self) -> bool:
        # homogeneous: proper iff no generator is a nonzero constant mod I
        reduced = [self.ring.reduce(g) for g in self.gens]
        return all(f.is_zero() or f.degree() != 0 for f in reduced)

    def quotient_module(self) -> "PresentedModule":
        return self.ring.cyclic(self.gens)

    def contains(self, f) -> bool:
        f = self.ring.element(f)
        gb = ideal_basis(self.ring.poly, [g.d for g in self.gens] + list(self.ring.gb), self.ring.cap)
        eng = Engine(self.ring.poly, (0,), gb)
        return not eng.reduce(dict(f.d))[0]

    def __repr__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"


@dataclass
class HilbertFunction:
    values: list
    series: HilbertSeries

    def __getitem__(self, d):
        return self.values[d]


class PresentedModule:
    """Cokernel of a homogeneous matrix ``F_1 -> F_0`` over ``R``.

    ``degrees`` are the degrees of the generators (so ``F_0 = sum R(-d)``);
    ``columns`` are elements of ``F_0`` given as packed-term dicts.
    """

    def __init__(self, ring: QuotientRing, degrees: Sequence[int], columns: Sequence[dict], minimal: bool = False):
        self.ring = ring
        self.degrees = tuple(int(d) for d in degrees)
        r = ring.poly
        cols, cdeg = [], []
        for j, c in enumerate(columns):
            c = {t: v % r.p for t, v in c.items() if v % r.p}
            if not c:
                continue
            if any(r.pos(t) >= len(self.degrees) for t in c):
                raise UsageError(f"column {j} refers to a missing row")
            d = vector_degree(r, self.degrees, c)
            if d is NON_HOMOGENEOUS:
                raise UsageError(f"column {j} is not homogeneous for the given twists")
            cols.append(c)
            cdeg.append(d)
        self.columns = cols
        self.col_degrees = tuple(cdeg)
        self.minimal = minimal
        self._gb = None
        self._hs = None
        self._minpres = None

    # -- basic data ----------------------------------------------------------
    @property
    def nrows(self):
        return len(self.degrees)

    @property
    def ncols(self):
        return len(self.columns)

    def free_module(self) -> FreeModule:
        return FreeModule(self.ring.poly, self.degrees)

    def matrix(self):
        """Entries as a list of rows of Polynomials."""
        r = self.ring.poly
        rows = [[{} for _ in self.columns] for _ in self.degrees]
        for j, c in enumerate(self.columns):
            for t, v in c.items():
                rows[r.pos(t)][j][r.mono(t)] = v
        return [[Polynomial(r, e) for e in row] for row in rows]

    def canonical(self) -> str:
        r = self.ring.poly
        cols = ";".join(format_dict(r, c) + "|" + ",".join(str(r.pos(t)) for t in sorted(c)) for c in self.columns)
        return f"{self.ring.canonical()}::{self.degrees}::{cols}"

    def __repr__(self):
        rows = ["[" + ", ".join(str(e) for e in row) + "]" for row in self.matrix()]
        return f"PresentedModule(twists={list(self.degrees)}, matrix=[{', '.join(rows)}])"

    # -- Gröbner data --------------------------------------------------------
    def gb_engine(self) -> Engine:
        if self._gb is None:
            eng = Engine(self.ring.poly, self.degrees, self.ring.gb, None, None, self.ring.cap)
            eng.run(self.columns, list(self.col_degrees))
            self._gb = eng
        return self._gb

    def reduce(self, vec: dict) -> dict:
        """Normal form of an element of ``F_0`` modulo the relations."""
        return self.gb_engine().reduce(dict(vec))[0]

    def hilbert_series(self) -> HilbertSeries:
        if self._hs is None:
            r = self.ring.poly
            eng = self.gb_engine()
            leads: dict = {}
            for g in eng.G:
                leads.setdefault(r.pos(g.lead), []).append(r.decode(g.lead))
            self._hs = series_from_leads(r.nvars, self.degrees, leads)
        return self._hs

    def hilbert_function(self, D: int = 12, lo: int = 0) -> HilbertFunction:
        hs = self.hilbert_series()
        return HilbertFunction(hs.values(lo, D), hs)

    def is_zero(self) -> bool:
        return self.hilbert_series().is_zero()

    def dimension(self) -> int:
        if self.is_zero():
            raise UsageError("the zero module has no Krull dimension")
        return self.hilbert_series().dimension()

    def length(self):
        n = self.hilbert_series().length()
        return INFINITE if n is None else n

    def is_free(self) -> bool:
        m = self.minimal_presentation()
        return m.ncols == 0

    # -- constructions -------------------------------------------------------
    def twist(self, k: int) -> "PresentedModule":
        """``M(k)``: generators move to degree ``d - k``."""
        return PresentedModule(self.ring, [d - k for d in self.degrees], self.columns, self.minimal)

    def direct_sum(self, other: "PresentedModule") -> "PresentedModule":
        _same_ring(self, other)
        r = self.ring.poly
        off = len(self.degrees) << r.shift
        cols = list(self.columns) + [{t + off: v for t, v in c.items()} for c in other.columns]
        return PresentedModule(self.ring, self.degrees + other.degrees, cols, self.minimal and other.minimal)

    def tensor(self, other: "PresentedModule") -> "PresentedModule":
        """Presentation of ``M (x) N`` on the generators ``e_i (x) f_j``."""
        _same_ring(self, other)
        r = self.ring.poly
        a, b = len(self.degrees), len(other.degrees)
        degs = [da + db for da in self.degrees for db in other.degrees]
        cols = []
        for c in self.columns:
            for j in range(b):
                cols.append({r.term(r.pos(t) * b + j, r.mono(t)): v for t, v in c.items()})
        for c in other.columns:
            for i in range(a):
                cols.append({r.term(i * b + r.pos(t), r.mono(t)): v for t, v in c.items()})
        return PresentedModule(self.ring, degs, cols)

    def quotient_by(self, elements) -> "PresentedModule":
        """``M / (x_1..x_n) M``."""
        r = self.ring.poly
        cols = list(self.columns)
        for x in elements:
            x = self.ring.element(x)
            for k in range(len(self.degrees)):
                cols.append(d_mul_poly(x.d, {r.term(k, 0): 1}, r.p))
        return PresentedModule(self.ring, self.degrees, cols)

    def multiply_columns(self, x) -> "PresentedModule":
        x = self.ring.element(x)
        return PresentedModule(self.ring, self.degrees, [d_mul_poly(x.d, c, self.ring.p) for c in self.columns])

    # -- minimization --------------------------------------------------------
    def minimal_presentation(self) -> "PresentedModule":
        """Minimal generators and minimal relations, entries reduced mod I."""
        if self.minimal:
            return self
        if self._minpres is None:
            degs, cols = eliminate_units(self.ring, self.degrees, self.columns)
            cols = minimal_columns(self.ring, degs, cols)
            self._minpres = PresentedModule(self.ring, degs, cols, minimal=True)
        return self._minpres

    def betti_01(self):
        """Graded (beta_0, beta_1) of the minimal presentation as sorted degree lists."""
        m = self.minimal_presentation()
        return tuple(sorted(m.degrees)), tuple(sorted(m.col_degrees))


def _same_ring(a: PresentedModule, b: PresentedModule):
    if a.ring != b.ring:
        raise UsageError("modules over different rings")


def eliminate_units(ring: QuotientRing, degrees: Sequence[int], columns: Sequence[dict]):
    """Remove generators that are redundant because some relation has a unit entry.

    Each pivot (a column with a nonzero constant in row ``r``) expresses
    ``e_r`` through the other generators; row ``r`` and that column are
    dropped after clearing row ``r`` from every other column.
    """
    r = ring.poly
    p = r.p
    shift = r.shift
    degs = list(degrees)
    cols = [dict(c) for c in columns if c]
    alive_rows = list(range(len(degs)))
    while True:
        pivot = None
        for j, c in enumerate(cols):
            for t in c:
                if t & r.mono_mask == 0:
                    if pivot is None or (t >> shift, j) < (pivot[1] >> shift, pivot[0]):
                        pivot = (j, t)
            if pivot is not None:
                break
        if pivot is None:
            break
        j, t = pivot
        pc = cols.pop(j)
        u = pc[t]
        inv = pow(u, p - 2, p)
        for c in cols:
            # coefficient polynomial of row pos(t) in c
            row = {s - t: v for s, v in c.items() if (s >> shift) == (t >> shift)}
            if not row:
                continue
            for m, v in row.items():
                d_axpy(c, (p - v) * inv % p, m, pc, p)
        cols = [c for c in cols if c]
        alive_rows.remove(t >> shift)
        # rows keep their positions until the end; row t>>shift is now empty in every column
    remap = {old: new for new, old in enumerate(alive_rows)}
    out = []
    for c in cols:
        out.append({r.term(remap[r.pos(t)], r.mono(t)): v for t, v in c.items()})
    return tuple(degs[i] for i in alive_rows), out


def minimal_columns(ring: QuotientRing, degrees: Sequence[int], columns: Sequence[dict]):
    """Minimal generating set of the column span modulo ``I F``, reduced mod ``I``."""
    if not columns:
        return []
    eng = Engine(ring.poly, degrees, ring.gb, None, "minimal", ring.cap)
    eng.run([dict(c) for c in columns], [vector_degree(ring.poly, degrees, c) for c in columns])
    kept = [columns[j] for j in eng.kept]
    return [reduce_mod_ideal(ring, degrees, c) for c in kept]


def reduce_mod_ideal(ring: QuotientRing, degrees: Sequence[int], vec: dict) -> dict:
    if not ring.gb:
        return dict(vec)
    eng = _ideal_engine(ring, len(degrees))
    return eng.reduce(dict(vec))[0]


_IDEAL_ENGINES: dict = {}


def _ideal_engine(ring: QuotientRing, rank: int) -> Engine:
    key = (ring.canonical(), rank)
    eng = _IDEAL_ENGINES.get(key)
    if eng is None:
        # degrees do not matter for reduction by I * e_c
        eng = Engine(ring.poly, (0,) * rank, ring.gb, None, None, ring.cap)
        if len(_IDEAL_ENGINES) > 256:
            _IDEAL_ENGINES.clear()
        _IDEAL_ENGINES[key] = eng
    return eng


def ring_free_series(ring: QuotientRing, degrees: Sequence[int]) -> HilbertSeries:
    return free_series(ring.nvars, degrees, ring.hilbert_series())


def vec_from_polys(ring: QuotientRing, comps) -> dict:
    r = ring.poly
    d = {}
    for i, f in enumerate(comps):
        f = ring.element(f)
        for m, c in f.d.items():
            d[r.term(i, m)] = c
    return d


def to_vector(module: PresentedModule, d: dict) -> Vector:
    return Vector(module.free_module(), d)
