"""Minimal graded free resolutions, Betti tables, syzygy modules, transposes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .groebner import Engine
from .modules import (
    HilbertFunction,
    PresentedModule,
    QuotientRing,
    eliminate_units,
    reduce_mod_ideal,
)
from .poly import UsageError, d_mul_poly, d_add, vector_degree

DEFAULT_LENGTH = 10


class GradedFreeResolution:
    """Truncated minimal resolution ``... -> F_1 -> F_0 -> M``.

    ``ranks[i]`` holds the degrees of the basis of ``F_i``; ``diffs[i]`` (for
    ``i >= 1``) holds the columns of ``d_i : F_i -> F_{i-1}``.  The
    resolution can be lengthened in place with :meth:`extend`.
    """

    def __init__(self, module: PresentedModule, length: int = DEFAULT_LENGTH):
        if length < 0:
            raise UsageError("length bound must be non-negative")
        self.module = module
        self.ring: QuotientRing = module.ring
        degs, cols = eliminate_units(self.ring, module.degrees, module.columns)
        self.ranks: list[tuple] = [tuple(degs)]
        self.diffs: list[list] = [[]]
        # candidate generators of the next image, with their degrees
        self._pending = (cols, [vector_degree(self.ring.poly, degs, c) for c in cols])
        self.minimal = True
        self.extend(length)

    @classmethod
    def from_data(cls, module: PresentedModule, ranks, diffs, pending) -> "GradedFreeResolution":
        """Rebuild a resolution from stored steps (used by the cache)."""
        obj = cls.__new__(cls)
        obj.module = module
        obj.ring = module.ring
        obj.ranks = [tuple(r) for r in ranks]
        obj.diffs = [list(d) for d in diffs]
        obj._pending = None if pending is None else (list(pending[0]), list(pending[1]))
        obj.minimal = True
        if not obj.ranks or len(obj.diffs) != len(obj.ranks):
            raise ValueError("inconsistent resolution data")
        return obj

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    @property
    def complete(self) -> bool:
        """True once a zero step has been reached (finite projective dimension)."""
        return self._pending is None

    @property
    def projective_dimension(self):
        if not self.complete:
            return None
        n = len(self.ranks) - 1
        while n > 0 and not self.ranks[n]:
            n -= 1
        return n if self.ranks[0] else -1

    def extend(self, length: int) -> "GradedFreeResolution":
        while len(self.ranks) <= length:
            self._step()
        return self

    def _step(self):
        ring = self.ring
        if self._pending is None or not self._pending[0]:
            self._pending = None
            self.ranks.append(())
            self.diffs.append([])
            return
        cols, cdeg = self._pending
        prev = self.ranks[-1]
        eng = Engine(ring.poly, prev, ring.gb, None, "minimal", ring.cap)
        eng.run(cols, cdeg)
        kept = [reduce_mod_ideal(ring, prev, cols[j]) for j in eng.kept]
        self.ranks.append(tuple(eng.tag_degrees))
        self.diffs.append(kept)
        syz = [(s, d) for s, d in eng.syzygies if s]
        self._pending = ([s for s, _ in syz], [d for _, d in syz])

    # -- views -----------------------------------------------------------------
    def rank(self, i: int) -> int:
        self.extend(i)
        return len(self.ranks[i])

    def differential(self, i: int) -> list:
        self.extend(i)
        if i <= 0:
            return []
        return self.diffs[i]

    def matrix(self, i: int):
        """``d_i`` as rows of Polynomials."""
        pm = PresentedModule(self.ring, self.ranks[i - 1], self.differential(i))
        return pm.matrix()

    def betti_table(self) -> "BettiTable":
        return betti_table(self)

    def check_composition(self) -> bool:
        """``d_i o d_{i+1} = 0`` over R for every computed step."""
        ring = self.ring
        p = ring.p
        r = ring.poly
        for i in range(1, self.length):
            di = self.diffs[i]
            for col in self.diffs[i + 1]:
                acc: dict = {}
                for t, v in col.items():
                    img = d_mul_poly({r.mono(t): v}, di[r.pos(t)], p)
                    acc = d_add(acc, img, p)
                if reduce_mod_ideal(ring, self.ranks[i - 1], acc):
                    return False
        return True

    def check_minimal(self) -> bool:
        mm = self.ring.poly.mono_mask
        return all(t & mm for d in self.diffs for c in d for t in c)


@dataclass
class BettiTable:
    entries: dict = field(default_factory=dict)
    length: int = 0

    def totals(self) -> list:
        out = [0] * (self.length + 1)
        for (i, _), b in self.entries.items():
            out[i] += b
        return out

    def total(self, i: int) -> int:
        return sum(b for (k, _), b in self.entries.items() if k == i)

    def __getitem__(self, ij):
        return self.entries.get(ij, 0)

    def rows(self):
        """Grid rows keyed by ``j - i``."""
        if not self.entries:
            return {}
        offs = sorted({j - i for i, j in self.entries})
        return {o: [self.entries.get((i, i + o), 0) for i in range(self.length + 1)] for o in offs}

    def to_json(self):
        return {
            "entries": [[i, j, b] for (i, j), b in sorted(self.entries.items())],
            "totals": self.totals(),
        }

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries and self.length == other.length


def minimal_resolution(M: PresentedModule, L: int = DEFAULT_LENGTH) -> GradedFreeResolution:
    return GradedFreeResolution(M, L)


def betti_table(res: GradedFreeResolution, upto: int | None = None) -> BettiTable:
    if not res.minimal:
        raise UsageError("Betti numbers need a minimal resolution")
    n = res.length if upto is None else upto
    res.extend(n)
    entries: dict = {}
    for i in range(n + 1):
        for d in res.ranks[i]:
            entries[(i, d)] = entries.get((i, d), 0) + 1
    return BettiTable(entries, n)


def hilbert_function(M: PresentedModule, D: int = 12) -> HilbertFunction:
    if D < 0:
        raise UsageError("degree bound must be non-negative")
    return M.hilbert_function(D)


def krull_dimension(M: PresentedModule) -> int:
    return M.dimension()


def syzygy_module(M: PresentedModule, n: int, res: GradedFreeResolution | None = None) -> PresentedModule:
    """``Omega^n M`` as the cokernel of ``d_{n+1}`` on ``F_n``."""
    if n < 0:
        raise UsageError("syzygy index must be non-negative")
    if n == 0:
        return M
    res = res or GradedFreeResolution(M, n + 1)
    res.extend(n + 1)
    return PresentedModule(M.ring, res.ranks[n], res.diffs[n + 1], minimal=True)


def dual_columns(ring: QuotientRing, row_degrees: Sequence[int], columns: Sequence[dict], col_degrees: Sequence[int]):
    """Transpose of a matrix ``F_1 -> F_0``: returns (rows, columns) of ``F_0^* -> F_1^*``."""
    r = ring.poly
    new_rows = tuple(-d for d in col_degrees)
    new_cols = [dict() for _ in row_degrees]
    for l, c in enumerate(columns):
        for t, v in c.items():
            new_cols[r.pos(t)][r.term(l, r.mono(t))] = v
    return new_rows, new_cols


def transpose(M: PresentedModule) -> PresentedModule:
    """Auslander transpose: cokernel of the dual of a minimal presentation."""
    m = M.minimal_presentation()
    rows, cols = dual_columns(m.ring, m.degrees, m.columns, m.col_degrees)
    return PresentedModule(m.ring, rows, cols).minimal_presentation()
