"""Hilbert series of graded modules as exact rational functions.

A series is stored as ``N(t) / (1 - t)^v`` where ``v`` is the number of
variables of the ambient polynomial ring and ``N`` is a Laurent polynomial
with integer coefficients (twists can be negative).
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterable, Sequence


def _clean(d: dict) -> dict:
    return {e: c for e, c in d.items() if c}


def laurent_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for e, c in a.items():
        for f, k in b.items():
            out[e + f] = out.get(e + f, 0) + c * k
    return _clean(out)


def laurent_add(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + sign * c
    return _clean(out)


def divide_one_minus_t(a: dict):
    """Exact quotient of ``a`` by ``1 - t``, or None when it does not divide."""
    if not a:
        return {}
    if sum(a.values()) != 0:
        return None
    lo, hi = min(a), max(a)
    # a = (1 - t) q  =>  q_e = sum_{f <= e} a_f
    q = {}
    run = 0
    for e in range(lo, hi):
        run += a.get(e, 0)
        if run:
            q[e] = run
    return q


class HilbertSeries:
    """``numerator / (1 - t)^nvars``; equality is equality of rational functions."""

    __slots__ = ("numerator", "nvars")

    def __init__(self, numerator: dict, nvars: int):
        self.numerator = _clean(dict(numerator))
        self.nvars = nvars

    # -- algebra -------------------------------------------------------------
    def _align(self, other: "HilbertSeries"):
        if self.nvars == other.nvars:
            return self.numerator, other.numerator, self.nvars
        v = max(self.nvars, other.nvars)
        a = self.numerator
        b = other.numerator
        for _ in range(v - self.nvars):
            a = laurent_mul(a, {0: 1, 1: -1})
        for _ in range(v - other.nvars):
            b = laurent_mul(b, {0: 1, 1: -1})
        return a, b, v

    def __add__(self, other):
        a, b, v = self._align(other)
        return HilbertSeries(laurent_add(a, b), v)

    def __sub__(self, other):
        a, b, v = self._align(other)
        return HilbertSeries(laurent_add(a, b, -1), v)

    def __mul__(self, other):
        if isinstance(other, int):
            return HilbertSeries({e: c * other for e, c in self.numerator.items()}, self.nvars)
        return NotImplemented

    __rmul__ = __mul__

    def times_numerator(self, poly: dict) -> "HilbertSeries":
        return HilbertSeries(laurent_mul(self.numerator, poly), self.nvars)

    def shift(self, d: int) -> "HilbertSeries":
        """Series of ``M(-d)``."""
        return HilbertSeries({e + d: c for e, c in self.numerator.items()}, self.nvars)

    def __eq__(self, other):
        if not isinstance(other, HilbertSeries):
            return NotImplemented
        a, b, _ = self._align(other)
        return a == b

    def __hash__(self):
        num, dim = self.reduced()
        return hash((tuple(sorted(num.items())), dim))

    # -- invariants ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.numerator

    def reduced(self):
        """Lowest terms ``(Q, dim)`` with ``HS = Q / (1 - t)^dim``."""
        num = self.numerator
        d = self.nvars
        while d > 0:
            q = divide_one_minus_t(num)
            if q is None:
                break
            num, d = q, d - 1
        return num, d

    def dimension(self) -> int:
        """Krull dimension; -1 for the zero module."""
        if self.is_zero():
            return -1
        return self.reduced()[1]

    def multiplicity(self) -> int:
        num, _ = self.reduced()
        return sum(num.values())

    def length(self):
        """Length for finite-length modules, None otherwise."""
        num, d = self.reduced()
        if not num:
            return 0
        return sum(num.values()) if d == 0 else None

    def coefficient(self, deg: int) -> int:
        # coefficient of t^deg in N(t) * sum_k C(k+v-1, v-1) t^k
        v = self.nvars
        total = 0
        for e, c in self.numerator.items():
            k = deg - e
            if k < 0:
                continue
            total += c * (comb(k + v - 1, v - 1) if v > 0 else int(k == 0))
        return total

    def values(self, lo: int, hi: int) -> list:
        return [self.coefficient(d) for d in range(lo, hi + 1)]

    def min_degree(self):
        """Lowest degree with a nonzero graded piece (None for zero)."""
        num, d = self.reduced()
        if not num:
            return None
        return min(num)

    def __repr__(self):
        num, d = self.reduced()
        terms = " + ".join(f"{c}*t^{e}" for e, c in sorted(num.items())) or "0"
        return f"HilbertSeries(({terms}) / (1-t)^{d})"

    def to_json(self):
        num, d = self.reduced()
        return {"numerator": {str(e): c for e, c in sorted(num.items())}, "denominator_power": d}


# --------------------------------------------------------------------------
# monomial ideals


def _minimalize(gens: Iterable[tuple]) -> tuple:
    gens = sorted(set(gens), key=lambda g: (sum(g), g))
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return tuple(out)


def _poly_mul(a: tuple, b: tuple) -> tuple:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _poly_add(a: tuple, b: tuple) -> tuple:
    n = max(len(a), len(b))
    return tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


@lru_cache(maxsize=65536)
def _numerator(gens: tuple) -> tuple:
    """Numerator of HS(S/J) over (1-t)^v for the monomial ideal J = (gens)."""
    if not gens:
        return (1,)
    if any(sum(g) == 0 for g in gens):
        return (0,)
    # coprime generators: product of (1 - t^deg)
    support = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    seen: set = set()
    coprime = True
    for s in support:
        if seen & s:
            coprime = False
            break
        seen |= s
    if coprime:
        out = (1,)
        for g in gens:
            d = sum(g)
            out = _poly_mul(out, tuple([1] + [0] * (d - 1) + [-1]))
        return out
    # pivot on the variable occurring in the most non-pure generators
    counts: dict = {}
    for g, s in zip(gens, support):
        if len(s) > 1:
            for i in s:
                counts[i] = counts.get(i, 0) + 1
    var = max(counts, key=lambda i: (counts[i], -i))
    v = len(gens[0])
    unit = tuple(int(i == var) for i in range(v))
    # HN(J) = HN(J + x) + t * HN(J : x)
    plus = _minimalize([g for g in gens if g[var] == 0] + [unit])
    colon = _minimalize([tuple(e - 1 if i == var and e > 0 else e for i, e in enumerate(g)) for g in gens])
    return _poly_add(_numerator(plus), (0,) + _numerator(colon))


def monomial_quotient_numerator(gens: Sequence[tuple]) -> dict:
    num = _numerator(_minimalize(gens))
    return _clean({e: c for e, c in enumerate(num)})


def series_from_leads(nvars: int, degrees: Sequence[int], leads_by_pos: dict) -> HilbertSeries:
    """HS of ``F / <leads>`` where ``F = sum S(-degrees[c])``.

    ``leads_by_pos`` maps a position to the exponent tuples of its leads.
    """
    total: dict = {}
    for c, d in enumerate(degrees):
        num = monomial_quotient_numerator(leads_by_pos.get(c, ()))
        total = laurent_add(total, {e + d: k for e, k in num.items()})
    return HilbertSeries(total, nvars)


def free_series(nvars: int, degrees: Sequence[int], ring_series: HilbertSeries) -> HilbertSeries:
    """HS of ``sum R(-degrees[c])`` given HS(R)."""
    poly: dict = {}
    for d in degrees:
        poly[d] = poly.get(d, 0) + 1
    return ring_series.times_numerator(poly)
