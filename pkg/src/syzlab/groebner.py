"""Buchberger's algorithm for homogeneous submodules of graded free modules.

Quotient rings S/I are handled by adjoining ``r * e_c`` for every
element ``r`` of a Gröbner basis of I and every basis position ``c``.

The engine works degree by degree (normal selection strategy).  It can
record, for every basis element, its expression in terms of the input
generators ("tags").  S-pairs that reduce to zero then yield syzygies
(Schreyer's construction), and in ``minimal`` mode the generators that
survive reduction form a minimal generating set of the submodule modulo
the quotient relations.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Sequence

from .poly import (
    EXP_MAX,
    FreeModule,
    MonomialOrder,
    ModuleOrder,
    NON_HOMOGENEOUS,
    PolyRing,
    UsageError,
    Vector,
    d_axpy,
    d_mul_poly,
    d_scale,
    vector_degree,
)

DEFAULT_DEGREE_CAP = 40


class DegreeCapError(RuntimeError):
    """A computation needed S-pairs beyond the configured degree cap."""

    def __init__(self, degree: int, cap: int, pair=None):
        self.degree = degree
        self.cap = cap
        self.pair = pair
        where = f" (S-pair {pair[0]},{pair[1]})" if pair else ""
        super().__init__(f"degree {degree} exceeds the degree cap {cap}{where}")


class _Elt:
    __slots__ = ("poly", "lead", "deg", "tag", "relation")

    def __init__(self, poly, lead, deg, tag, relation=False):
        self.poly = poly
        self.lead = lead
        self.deg = deg
        self.tag = tag
        self.relation = relation


class Engine:
    """One Buchberger run over a fixed ambient free module.

    ``track`` is None (basis only), ``"all"`` (syzygies of all inputs) or
    ``"minimal"`` (select minimal generators, syzygies among those).
    """

    def __init__(
        self,
        ring: PolyRing,
        degrees: Sequence[int],
        ideal: Sequence[dict] = (),
        order: MonomialOrder | None = None,
        track: str | None = None,
        cap: int = DEFAULT_DEGREE_CAP,
    ):
        if track not in (None, "all", "minimal"):
            raise UsageError(f"unknown tracking mode {track!r}")
        if not 0 < cap <= EXP_MAX:
            raise UsageError(f"degree cap must lie in 1..{EXP_MAX}")
        self.ring = ring
        self.p = ring.p
        self.degrees = tuple(degrees)
        self.order = ModuleOrder(ring, self.degrees, order)
        self.key = self.order.key
        self.track = track
        self.cap = cap
        self.rank1 = len(self.degrees) == 1
        self.G: list[_Elt] = []
        self.by_pos: dict[int, list] = {}
        self.pairs: dict[int, list] = {}
        self.kept: list[int] = []
        self.tag_degrees: list[int] = []
        self.syzygies: list[tuple[dict, int]] = []
        self.stats = {"pairs": 0, "zero_reductions": 0, "criteria_skips": 0}
        for c in range(len(self.degrees)):
            base = c << ring.shift
            for r in ideal:
                poly = {m + base: v for m, v in r.items()}
                lead = max(poly, key=self.key)
                deg = ring.mdeg(lead) + self.degrees[c]
                self._insert(_Elt(poly, lead, deg, {} if track else None, True), pairs=False)
        # pairs among the relation elements of one position reduce to zero
        # with zero tags, so they are never formed

    # -- reduction -----------------------------------------------------------
    def reduce(self, h: dict, tag: dict | None = None):
        """Full normal form of ``h`` (consumed) against the current basis."""
        p = self.p
        key = self.key
        shift = self.ring.shift
        guard = self.ring.guard
        by_pos = self.by_pos
        G = self.G
        heap = [(-key(t), t) for t in h]
        heapq.heapify(heap)
        rem = {}
        while heap:
            t = heapq.heappop(heap)[1]
            c = h.get(t)
            if c is None:
                continue
            r = None
            cands = by_pos.get(t >> shift)
            if cands:
                tb = t | guard
                for lm, idx in cands:
                    if (tb - lm) & guard == guard:
                        r = idx
                        break
            if r is None:
                rem[t] = c
                del h[t]
                continue
            g = G[r]
            q = t - g.lead
            neg = p - c
            for s, a in g.poly.items():
                u = s + q
                old = h.get(u)
                if old is None:
                    h[u] = (neg * a) % p
                    heapq.heappush(heap, (-key(u), u))
                else:
                    v = (old + neg * a) % p
                    if v:
                        h[u] = v
                    else:
                        del h[u]
            if tag is not None and g.tag:
                d_axpy(tag, neg, q, g.tag, p)
        return rem, tag

    # -- basis maintenance -----------------------------------------------------
    def _insert(self, elt: _Elt, pairs=True):
        idx = len(self.G)
        self.G.append(elt)
        pos = elt.lead >> self.ring.shift
        if pairs:
            self._update(idx)
        self.by_pos.setdefault(pos, []).append((elt.lead & self.ring.mono_mask, idx))
        return idx

    def _add(self, h: dict, tag: dict | None):
        lead = max(h, key=self.key)
        c = h[lead]
        if c != 1:
            inv = pow(c, self.p - 2, self.p)
            h = d_scale(h, inv, self.p)
            if tag is not None:
                tag = d_scale(tag, inv, self.p)
        deg = self.ring.mdeg(lead) + self.degrees[lead >> self.ring.shift]
        return self._insert(_Elt(h, lead, deg, tag))

    def _update(self, t: int):
        """Gebauer-Moeller update for the new element ``t``."""
        r = self.ring
        G = self.G
        h = G[t]
        shift, mm = r.shift, r.mono_mask
        pos = h.lead >> shift
        hm = h.lead & mm
        others = [idx for _, idx in self.by_pos.get(pos, [])]
        lcms = {j: r.mlcm(hm, G[j].lead & mm) for j in others}
        divides = r.divides
        kept = []
        for n, j in enumerate(others):
            L = lcms[j]
            if self.rank1 and r.coprime(hm, G[j].lead & mm):
                kept.append(j)
                continue
            if any(divides(lcms[k], L) for k in others[n + 1:]) or any(divides(lcms[k], L) for k in kept):
                self.stats["criteria_skips"] += 1
                continue
            kept.append(j)
        new_pairs = []
        for j in kept:
            L = lcms[j]
            if self.rank1 and r.coprime(hm, G[j].lead & mm):
                self.stats["criteria_skips"] += 1
                self._koszul_syzygy(j, t)
                continue
            new_pairs.append((j, t, (pos << shift) | L))
        # chain criterion on the old pairs
        for deg, plist in self.pairs.items():
            keep = []
            for i, j, L in plist:
                if (L >> shift) == pos and divides(hm, L):
                    Lm = L & mm
                    if r.mlcm(G[i].lead & mm, hm) != Lm and r.mlcm(G[j].lead & mm, hm) != Lm:
                        self.stats["criteria_skips"] += 1
                        continue
                keep.append((i, j, L))
            plist[:] = keep
        for i, j, L in new_pairs:
            deg = r.mdeg(L) + self.degrees[L >> shift]
            self.pairs.setdefault(deg, []).append((i, j, L))

    def _koszul_syzygy(self, i: int, j: int):
        if self.track is None:
            return
        gi, gj = self.G[i], self.G[j]
        if gi.relation or gj.relation:
            # lies in I * (tag module); zero over the quotient ring
            return
        p = self.p
        tag = d_mul_poly(gj.poly, gi.tag, p)
        other = d_mul_poly(gi.poly, gj.tag, p)
        for u, v in other.items():
            w = (tag.get(u, 0) - v) % p
            if w:
                tag[u] = w
            else:
                tag.pop(u, None)
        if tag:
            self.syzygies.append((tag, gi.deg + self.ring.mdeg(gj.lead)))

    def _spair(self, i: int, j: int, L: int):
        gi, gj = self.G[i], self.G[j]
        p = self.p
        mi = L - gi.lead
        mj = L - gj.lead
        h: dict = {}
        d_axpy(h, 1, mi, gi.poly, p)
        d_axpy(h, p - 1, mj, gj.poly, p)
        tag = None
        if self.track is not None:
            tag = {}
            if gi.tag:
                d_axpy(tag, 1, mi, gi.tag, p)
            if gj.tag:
                d_axpy(tag, p - 1, mj, gj.tag, p)
        return h, tag

    # -- main loop ---------------------------------------------------------------
    def run(self, gens: Sequence[dict], gen_degrees: Sequence[int] | None = None):
        r = self.ring
        if gen_degrees is None:
            gen_degrees = []
            for g in gens:
                d = vector_degree(r, self.degrees, g)
                if d is None or d is NON_HOMOGENEOUS:
                    raise UsageError("generators must be nonzero and homogeneous, or carry explicit degrees")
                gen_degrees.append(d)
        by_deg: dict[int, list[int]] = {}
        for j, (g, d) in enumerate(zip(gens, gen_degrees)):
            if g:
                gd = vector_degree(r, self.degrees, g)
                if gd is NON_HOMOGENEOUS:
                    raise UsageError(f"generator {j} is not homogeneous")
                if gd != d:
                    raise UsageError(f"generator {j} has degree {gd}, declared {d}")
            by_deg.setdefault(d, []).append(j)
        if self.track == "all":
            self.tag_degrees = list(gen_degrees)
        shift = r.shift
        while True:
            live = [d for d, pl in self.pairs.items() if pl]
            cands = live + list(by_deg)
            if not cands:
                break
            d = min(cands)
            plist = self.pairs.pop(d, [])
            plist.sort(key=lambda x: (self.key(x[2]), x[0], x[1]))
            for i, j, L in plist:
                # the cap bounds polynomial degree; twists alone never trip it
                if r.mdeg(L) > self.cap:
                    raise DegreeCapError(r.mdeg(L), self.cap, (i, j))
                self.stats["pairs"] += 1
                h, tag = self._spair(i, j, L)
                h, tag = self.reduce(h, tag)
                if h:
                    self._add(h, tag)
                else:
                    self.stats["zero_reductions"] += 1
                    if tag:
                        self.syzygies.append((tag, d))
            for j in by_deg.pop(d, []):
                g = dict(gens[j])
                tag = None
                if self.track == "all":
                    tag = {j << shift: 1}
                elif self.track == "minimal":
                    tag = {len(self.kept) << shift: 1}
                h, tag = self.reduce(g, tag)
                if h:
                    self.kept.append(j)
                    if self.track == "minimal":
                        self.tag_degrees.append(d)
                    self._add(h, tag)
                elif self.track == "all" and tag:
                    self.syzygies.append((tag, d))
        return self

    # -- results -----------------------------------------------------------------
    def reduced_basis(self) -> list[dict]:
        """Reduced Gröbner basis: minimal leads, monic, tails fully reduced."""
        r = self.ring
        G = self.G
        alive = []
        for i, g in enumerate(G):
            pos = g.lead >> r.shift
            redundant = False
            for lm, j in self.by_pos.get(pos, []):
                if j != i and r.divides(lm, g.lead) and (lm != g.lead & r.mono_mask or j < i):
                    redundant = True
                    break
            if not redundant:
                alive.append(i)
        sub = Engine(r, self.degrees, (), self.order.spec, None, self.cap)
        for i in alive:
            sub._insert(_Elt(G[i].poly, G[i].lead, G[i].deg, None), pairs=False)
        out = []
        for n, i in enumerate(alive):
            g = G[i]
            tail = {t: c for t, c in g.poly.items() if t != g.lead}
            # reduce the tail by every other element
            saved = sub.by_pos[g.lead >> r.shift]
            sub.by_pos[g.lead >> r.shift] = [(lm, j) for lm, j in saved if j != n]
            rem, _ = sub.reduce(tail)
            sub.by_pos[g.lead >> r.shift] = saved
            rem[g.lead] = 1
            out.append(rem)
        out.sort(key=lambda d: (vector_degree(r, self.degrees, d), [-self.key(t) for t in sorted(d, key=self.key, reverse=True)]))
        return out


# ---------------------------------------------------------------------------
# public API


@dataclass
class SubmodulePresentation:
    """Submodule of ``ambient`` generated by ``generators``, taken modulo the
    quotient-ring relations ``relations * e_c`` for every position ``c``."""

    ambient: FreeModule
    generators: list
    relations: list = field(default_factory=list)

    def __post_init__(self):
        for g in self.generators:
            if g.module != self.ambient:
                raise UsageError("generator lives in a different free module")
            if vector_degree(self.ambient.ring, self.ambient.degrees, g.d) is NON_HOMOGENEOUS:
                raise UsageError("generators must be homogeneous")


@dataclass
class GroebnerBasis:
    ambient: FreeModule
    elements: list
    order: MonomialOrder
    relations: list
    reduced: bool = True
    cap: int = DEFAULT_DEGREE_CAP

    def leads(self):
        key = ModuleOrder(self.ambient.ring, self.ambient.degrees, self.order).key
        return [max(e.d, key=key) for e in self.elements]


def ideal_basis(ring: PolyRing, relations: Sequence[dict], cap: int = DEFAULT_DEGREE_CAP) -> list[dict]:
    """Reduced Gröbner basis of an ideal of the polynomial ring."""
    gens = [dict(f) for f in relations if f]
    if not gens:
        return []
    eng = Engine(ring, (0,), (), None, None, cap).run(gens)
    return eng.reduced_basis()


def buchberger(gens: SubmodulePresentation, order: MonomialOrder | None = None, cap: int = DEFAULT_DEGREE_CAP) -> GroebnerBasis:
    """Reduced Gröbner basis of the submodule plus the quotient relations."""
    amb = gens.ambient
    ring = amb.ring
    order = order or MonomialOrder(ring.order)
    ideal = ideal_basis(ring, [f.d for f in gens.relations], cap)
    eng = Engine(ring, amb.degrees, ideal, order, None, cap).run([g.d for g in gens.generators if g.d])
    elems = [Vector(amb, d) for d in eng.reduced_basis()]
    return GroebnerBasis(amb, elems, order, list(gens.relations), True, cap)


def _basis_engine(gb: GroebnerBasis) -> Engine:
    amb = gb.ambient
    eng = Engine(amb.ring, amb.degrees, (), gb.order, None, gb.cap)
    for e in gb.elements:
        lead = max(e.d, key=eng.key)
        c = e.d[lead]
        d = e.d if c == 1 else d_scale(e.d, pow(c, amb.ring.p - 2, amb.ring.p), amb.ring.p)
        eng._insert(_Elt(d, lead, vector_degree(amb.ring, amb.degrees, d), None), pairs=False)
    return eng


def normal_form(f: Vector, gb: GroebnerBasis) -> Vector:
    """Unique remainder of ``f`` modulo the basis; zero iff ``f`` is a member."""
    if f.module != gb.ambient:
        raise UsageError("element and basis live in different free modules")
    rem, _ = _basis_engine(gb).reduce(dict(f.d))
    return Vector(gb.ambient, rem)


def syzygy_basis(gb: GroebnerBasis, minimize: bool = False) -> SubmodulePresentation:
    """Syzygies over the quotient ring among the basis elements.

    The result lives in a free module with one basis vector per element of
    ``gb``, twisted by that element's degree.
    """
    amb = gb.ambient
    ring = amb.ring
    ideal = ideal_basis(ring, [f.d for f in gb.relations], gb.cap)
    degs = [vector_degree(ring, amb.degrees, e.d) for e in gb.elements]
    eng = Engine(ring, amb.degrees, ideal, gb.order, "all", gb.cap).run([e.d for e in gb.elements], degs)
    target = FreeModule(ring, tuple(degs))
    syz = [d for d, _ in eng.syzygies]
    if minimize and syz:
        sub = Engine(ring, target.degrees, ideal, MonomialOrder(ring.order), "minimal", gb.cap)
        sdeg = [deg for _, deg in eng.syzygies]
        sub.run(syz, sdeg)
        syz = [syz[j] for j in sub.kept]
    if ideal:
        red = Engine(ring, target.degrees, ideal, MonomialOrder(ring.order), None, gb.cap)
        syz = [red.reduce(dict(s))[0] for s in syz]
    return SubmodulePresentation(target, [Vector(target, s) for s in syz if s], list(gb.relations))
