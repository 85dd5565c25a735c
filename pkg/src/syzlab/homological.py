"""Tor, Ext, depth, regular elements and regular-sequence search.

Hilbert series of Tor and Ext are read off cokernels only, using

    HS(H_i) = HS(coker of the outgoing map) - HS(target term)
              + HS(coker of the incoming map)

which follows from additivity on ``0 -> ker -> X -> im -> 0``.  The
subquotient presentation itself is built lazily because it needs two
syzygy computations.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .groebner import Engine
from .hilbert import HilbertSeries
from .modules import (
    INFINITE,
    HilbertFunction,
    Ideal,
    PresentedModule,
    QuotientRing,
    minimal_columns,
    reduce_mod_ideal,
)
from .poly import Polynomial, UsageError, d_mul_poly, vector_degree
from .resolution import GradedFreeResolution, dual_columns, syzygy_module


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; this indicates a bug."""


# ---------------------------------------------------------------------------
# homology of complexes of presented modules


@dataclass
class HomologyModule:
    kind: str
    index: int
    series: HilbertSeries
    _build: Callable | None = field(default=None, repr=False)
    _value: PresentedModule | None = field(default=None, repr=False)

    @property
    def value(self) -> PresentedModule:
        if self._value is None:
            self._value = self._build()
        return self._value

    @property
    def length(self):
        n = self.series.length()
        return INFINITE if n is None else n

    def is_zero(self) -> bool:
        return self.series.is_zero()

    def hilbert(self, D: int = 12, lo: int | None = None) -> HilbertFunction:
        if lo is None:
            lo = min(0, self.series.min_degree() or 0)
        return HilbertFunction(self.series.values(lo, D), self.series)

    def to_json(self):
        n = self.length
        return {
            "kind": self.kind,
            "index": self.index,
            "length": "inf" if n is INFINITE else n,
            "zero": self.is_zero(),
            "hilbert_series": self.series.to_json(),
        }


def _tensor_map(ring: QuotientRing, images: Sequence[dict], b: int) -> list:
    """Images of ``e_l (x) f_j`` (index ``l*b + j``) under ``phi (x) 1``."""
    r = ring.poly
    out = []
    for c in images:
        for j in range(b):
            out.append({r.term(r.pos(t) * b + j, r.mono(t)): v for t, v in c.items()})
    return out


def _tensor_relations(ring: QuotientRing, n: int, N: PresentedModule) -> list:
    r = ring.poly
    b = N.nrows
    out = []
    for k in range(n):
        for c in N.columns:
            out.append({r.term(k * b + r.pos(t), r.mono(t)): v for t, v in c.items()})
    return out


def _project(ring: QuotientRing, tag: dict, n: int) -> dict:
    r = ring.poly
    return {t: v for t, v in tag.items() if r.pos(t) < n}


def kernel_generators(ring: QuotientRing, src_degrees, images, tgt_degrees, tgt_relations) -> list:
    """Generators of ``{v in F_src : phi(v) in Im(tgt_relations)}`` modulo nothing.

    ``images[l]`` is the image of the l-th source basis vector.
    """
    n = len(src_degrees)
    if not tgt_degrees:
        r = ring.poly
        return [{r.term(l, 0): 1} for l in range(n)]
    gens = [dict(c) for c in images] + [dict(c) for c in tgt_relations]
    degs = list(src_degrees) + [vector_degree(ring.poly, tgt_degrees, c) for c in tgt_relations]
    eng = Engine(ring.poly, tgt_degrees, ring.gb, None, "all", ring.cap).run(gens, degs)
    out = []
    for tag, _ in eng.syzygies:
        v = _project(ring, tag, n)
        v = reduce_mod_ideal(ring, src_degrees, v)
        if v:
            out.append(v)
    return minimal_columns(ring, src_degrees, out) if out else []


def subquotient(ring: QuotientRing, degrees, kernel: list, image: list, relations: list) -> PresentedModule:
    """``<kernel> / (<image> + <relations>)`` inside the free module on ``degrees``."""
    r = ring.poly
    if not kernel:
        return PresentedModule(ring, (), [])
    kdeg = [vector_degree(r, degrees, c) for c in kernel]
    gens = [dict(c) for c in kernel] + [dict(c) for c in image if c] + [dict(c) for c in relations if c]
    gdeg = kdeg + [vector_degree(r, degrees, c) for c in image if c] + [vector_degree(r, degrees, c) for c in relations if c]
    eng = Engine(r, degrees, ring.gb, None, "all", ring.cap).run(gens, gdeg)
    n = len(kernel)
    cols = [_project(ring, tag, n) for tag, _ in eng.syzygies]
    return PresentedModule(ring, kdeg, [c for c in cols if c]).minimal_presentation()


def _tensor_free_series(N: PresentedModule, degrees) -> HilbertSeries:
    hs = N.hilbert_series()
    total = HilbertSeries({}, N.ring.nvars)
    for d in degrees:
        total = total + hs.shift(d)
    return total


def _ensure(res: GradedFreeResolution | None, M: PresentedModule, n: int) -> GradedFreeResolution:
    if res is None:
        res = GradedFreeResolution(M, n)
    if res.module is not M and res.module.canonical() != M.canonical():
        raise UsageError("resolution belongs to a different module")
    res.extend(n)
    if res.length < n:
        raise InvariantViolation("resolution shorter than requested")
    return res


def _same_ring(M, N):
    if M.ring != N.ring:
        raise UsageError("modules over different rings")


def tor(M: PresentedModule, N: PresentedModule, i_max: int, res: GradedFreeResolution | None = None) -> list:
    """``Tor_0 .. Tor_{i_max}`` of (M, N) from a minimal resolution of M."""
    _same_ring(M, N)
    if i_max < 0:
        return []
    res = _ensure(res, M, i_max + 1)
    ring = M.ring
    b = N.nrows

    def coker(i):
        # coker(d_i (x) N) on F_{i-1} (x) G
        if i <= 0:
            return HilbertSeries({}, ring.nvars)
        return PresentedModule(ring, res.ranks[i - 1], res.diffs[i]).tensor(N).hilbert_series()

    out = []
    cok = [coker(i) for i in range(i_max + 2)]
    for i in range(i_max + 1):
        prev = _tensor_free_series(N, res.ranks[i - 1]) if i >= 1 else HilbertSeries({}, ring.nvars)
        hs = cok[i + 1] - prev + cok[i]

        def build(i=i):
            degs = [a + d for a in res.ranks[i] for d in N.degrees]
            rels = _tensor_relations(ring, len(res.ranks[i]), N)
            if i >= 1:
                tdeg = [a + d for a in res.ranks[i - 1] for d in N.degrees]
                images = _tensor_map(ring, res.diffs[i], b)
                trel = _tensor_relations(ring, len(res.ranks[i - 1]), N)
                K = kernel_generators(ring, degs, images, tdeg, trel)
            else:
                K = kernel_generators(ring, degs, [], (), [])
            incoming = _tensor_map(ring, res.diffs[i + 1], b)
            return subquotient(ring, degs, K, incoming, rels)

        out.append(HomologyModule("Tor", i, hs, build))
    return out


def ext(M: PresentedModule, N: PresentedModule, i_max: int, res: GradedFreeResolution | None = None) -> list:
    """``Ext^0 .. Ext^{i_max}`` of (M, N) via ``Hom(F, N)``."""
    _same_ring(M, N)
    if i_max < 0:
        return []
    res = _ensure(res, M, i_max + 1)
    ring = M.ring
    b = N.nrows

    def hom_degrees(i):
        return [d - a for a in res.ranks[i] for d in N.degrees]

    def dual(i):
        # d_i^T : F_{i-1}^* -> F_i^*
        return dual_columns(ring, res.ranks[i - 1], res.diffs[i], res.ranks[i])

    def coker(i):
        if i == 0:
            return _tensor_free_series(N, [-a for a in res.ranks[0]])
        rows, cols = dual(i)
        return PresentedModule(ring, rows, cols).tensor(N).hilbert_series()

    out = []
    cok = [coker(i) for i in range(i_max + 2)]
    for i in range(i_max + 1):
        nxt = _tensor_free_series(N, [-a for a in res.ranks[i + 1]])
        hs = cok[i + 1] - nxt + cok[i]

        def build(i=i):
            degs = hom_degrees(i)
            rels = _tensor_relations(ring, len(res.ranks[i]), N)
            _, cols = dual(i + 1)
            images = _tensor_map(ring, cols, b)
            K = kernel_generators(ring, degs, images, hom_degrees(i + 1), _tensor_relations(ring, len(res.ranks[i + 1]), N))
            incoming = _tensor_map(ring, dual(i)[1], b) if i >= 1 else []
            return subquotient(ring, degs, K, incoming, rels)

        out.append(HomologyModule("Ext", i, hs, build))
    return out


def length(M: PresentedModule):
    return M.length()


# ---------------------------------------------------------------------------
# depth


@dataclass
class DepthCertificate:
    ideal: Ideal
    module: PresentedModule
    depth: int
    witness: HomologyModule
    vanishing: list

    @property
    def witness_index(self):
        return self.witness.index

    def recheck(self) -> bool:
        exts = ext(self.ideal.quotient_module(), self.module, self.depth)
        return all(e.is_zero() for e in exts[: self.depth]) and not exts[self.depth].is_zero()

    def to_json(self):
        return {"depth": self.depth, "witness_index": self.witness_index, "vanishing": list(self.vanishing)}


def depth(a: Ideal, M: PresentedModule) -> DepthCertificate:
    """``depth(a, M)`` as the first non-vanishing ``Ext^i(R/a, M)``."""
    if not a.is_proper:
        raise UsageError("depth needs a proper ideal")
    if M.is_zero():
        raise UsageError("depth of the zero module is undefined")
    ring = M.ring
    top = ring.dimension
    Q = a.quotient_module()
    res = GradedFreeResolution(Q, 1)
    exts = ext(Q, M, top, res)
    for i, e in enumerate(exts):
        if not e.is_zero():
            return DepthCertificate(a, M, i, e, list(range(i)))
    raise InvariantViolation("no non-vanishing Ext up to dim R")


# ---------------------------------------------------------------------------
# regular elements


def _homog(ring: QuotientRing, x) -> Polynomial:
    x = ring.element(x)
    if not x.is_zero() and not x.is_homogeneous():
        raise UsageError(f"{x} is not homogeneous")
    return x


def is_regular_element(x, M: PresentedModule) -> bool:
    """Multiplication by ``x`` is injective on ``M``.

    Uses ``HS(M/xM) = (1 - t^deg x) HS(M)``, which holds exactly when the
    kernel of multiplication vanishes.
    """
    ring = M.ring
    x = _homog(ring, x)
    hs = M.hilbert_series()
    if ring.reduce(x).is_zero():
        return hs.is_zero()
    d = x.degree()
    return M.quotient_by([x]).hilbert_series() == hs - hs.shift(d)


def annihilates_ext1(x, N: PresentedModule, E: PresentedModule | None = None) -> bool:
    """``x * Ext^1(N, Omega N) = 0``."""
    ring = N.ring
    x = _homog(ring, x)
    if E is None:
        E = ext1_omega(N)
    if E.nrows == 0:
        return True
    r = ring.poly
    for k in range(E.nrows):
        v = d_mul_poly(x.d, {r.term(k, 0): 1}, ring.p)
        if v and E.reduce(v):
            return False
    return True


def ext1_omega(N: PresentedModule) -> PresentedModule:
    res = GradedFreeResolution(N, 2)
    omega = syzygy_module(N, 1, res)
    if omega.nrows == 0:
        return PresentedModule(N.ring, (), [])
    return ext(N, omega, 1, res)[1].value


def cyclic_kernel(ring: QuotientRing, tgt_degrees, tgt_relations, image: dict, image_degree: int) -> list:
    """Homogeneous generators of ``{f in R : f * image in Im(tgt_relations)}``."""
    gens = [dict(image)] + [dict(c) for c in tgt_relations]
    degs = [image_degree] + [vector_degree(ring.poly, tgt_degrees, c) for c in tgt_relations]
    eng = Engine(ring.poly, tgt_degrees, ring.gb, None, "all", ring.cap).run(gens, degs)
    out = []
    for tag, _ in eng.syzygies:
        f = {ring.poly.mono(t): v for t, v in tag.items() if ring.poly.pos(t) == 0}
        f = ring.reduce(Polynomial(ring.poly, f))
        if not f.is_zero():
            out.append(f)
    return _minimal_ideal_gens(ring, out)


def _minimal_ideal_gens(ring: QuotientRing, gens: list) -> list:
    if not gens:
        return []
    cols = minimal_columns(ring, (0,), [dict(g.d) for g in gens])
    return [Polynomial(ring.poly, c) for c in cols]


def annihilator(E: PresentedModule) -> Ideal:
    ring = E.ring
    r = ring.poly
    if E.is_zero():
        return Ideal(ring, [ring.poly.one()])
    n = E.nrows
    degs, rels, image = [], [], {}
    for k in range(n):
        base = k * n
        # block k is E twisted so that e_k sits in degree 0
        degs.extend(d - E.degrees[k] for d in E.degrees)
        for c in E.columns:
            rels.append({r.term(base + r.pos(t), r.mono(t)): v for t, v in c.items()})
        image[r.term(base + k, 0)] = 1
    return Ideal(ring, cyclic_kernel(ring, degs, rels, image, 0))


def ideal_key(a: Ideal) -> tuple:
    """Canonical form of an ideal of R: its reduced Gröbner basis over S, including I."""
    from .groebner import ideal_basis
    from .poly import format_dict

    ring = a.ring
    gb = ideal_basis(ring.poly, [g.d for g in a.gens] + list(ring.gb), ring.cap)
    return tuple(sorted(format_dict(ring.poly, g) for g in gb))


def intersect(a: Ideal, b: Ideal) -> Ideal:
    ring = a.ring
    r = ring.poly
    rels = [dict(g.d) for g in a.gens] + [{r.term(1, m): v for m, v in g.d.items()} for g in b.gens]
    image = {r.term(0, 0): 1, r.term(1, 0): 1}
    return Ideal(ring, cyclic_kernel(ring, (0, 0), rels, image, 0))


# ---------------------------------------------------------------------------
# regular sequences


@dataclass
class RegularSequence:
    elements: list
    certified_on: list
    search_ideal: Ideal | None = None
    trials: int = 0

    def __len__(self):
        return len(self.elements)

    def recheck(self) -> bool:
        for M in self.certified_on:
            cur = M
            for x in self.elements:
                if not is_regular_element(x, cur):
                    return False
                cur = cur.quotient_by([x])
        return True


@dataclass
class NotFound:
    found: list
    slot: int
    trials: int
    reason: str

    def __bool__(self):
        return False


def _seed_for(*parts) -> int:
    h = hashlib.sha256()
    for p in parts:
        h.update(str(p).encode())
        h.update(b"\x00")
    return int.from_bytes(h.digest()[:8], "big")


def _degree_basis(ring: QuotientRing, gens: list, d: int) -> list:
    """Spanning set of the degree-``d`` piece of the ideal generated by ``gens``."""
    r = ring.poly
    out = []
    for g in gens:
        e = d - g.degree()
        if e < 0:
            continue
        for m in r.all_monomials(e):
            f = ring.reduce(Polynomial(r, {m: 1}) * g)
            if not f.is_zero():
                out.append(f)
    return out


def _candidates(ring: QuotientRing, gens: list, rng: random.Random):
    p = ring.p
    # single generators
    for g in gens:
        yield g
    # two-term combinations in one degree
    for i, g in enumerate(gens):
        for h in gens[i + 1:]:
            if g.degree() == h.degree():
                for c in (1, p - 1, 2):
                    yield g + h.scale(c)
    # random combinations of graded pieces, lowest degrees first
    if not gens:
        return
    lo = min(g.degree() for g in gens)
    window = [lo, lo + 1, lo + 2]
    bases = {d: _degree_basis(ring, gens, d) for d in window}
    while True:
        for d in window:
            B = bases[d]
            if not B:
                continue
            f = ring.poly.zero()
            for b in B:
                f = f + b.scale(rng.randrange(1, p))
            if not f.is_zero():
                yield f


def find_regular_sequence(
    a: Ideal,
    modules: Sequence[PresentedModule],
    n: int,
    annihilate: PresentedModule | None = None,
    seed: int = 0,
    budget: int = 200,
):
    """Search for ``x_1..x_n`` in ``a`` regular on every module of the list.

    With ``annihilate = N`` the elements are also taken inside
    ``Ann Ext^1(N, Omega N)``.
    """
    if n < 1:
        raise UsageError("sequence length must be at least 1")
    ring = a.ring
    search = a
    if annihilate is not None:
        E = ext1_omega(annihilate)
        if not E.is_zero():
            search = intersect(a, annihilator(E))
    gens = _minimal_ideal_gens(ring, [ring.reduce(g) for g in search.gens if not ring.reduce(g).is_zero()])
    rng = random.Random(
        _seed_for(
            ring.canonical(),
            [str(g) for g in a.gens],
            [M.canonical() for M in modules],
            n,
            annihilate.canonical() if annihilate is not None else "",
            seed,
        )
    )
    current = list(modules)
    found: list = []
    total = 0
    for slot in range(n):
        hit = None
        stream = _candidates(ring, gens, rng)
        for trial in range(budget):
            x = next(stream, None)
            if x is None:
                break
            total += 1
            x = ring.reduce(x)
            if x.is_zero():
                continue
            if all(is_regular_element(x, M) for M in current):
                hit = x
                break
        if hit is None:
            return NotFound(found, slot + 1, total, f"no regular element found in {budget} trials")
        found.append(hit)
        current = [M.quotient_by([hit]) for M in current]
    return RegularSequence(found, list(modules), search, total)
