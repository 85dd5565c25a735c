"""Linear algebra on graded pieces.

Everything here works with explicit F_p matrices of degree-``d``
components, so it is independent of the Gröbner machinery apart from the
normal form modulo ``I`` used to write elements in a monomial basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._kernels import rank_mod_p
from .modules import QuotientRing, reduce_mod_ideal
from .poly import d_mul_poly


def standard_monomials(ring: QuotientRing, d: int) -> list:
    """Monomials of degree ``d`` not divisible by a lead term of ``I``: a basis of ``R_d``."""
    if d < 0:
        return []
    r = ring.poly
    leads = [max(g, key=r.mono_key) for g in ring.gb]
    return [m for m in r.all_monomials(d) if not any(r.divides(l, m) for l in leads)]


def piece_basis(ring: QuotientRing, degrees, d: int) -> list:
    """Basis ``(position, monomial)`` of the degree-``d`` piece of ``sum R(-degrees)``."""
    out = []
    for k, a in enumerate(degrees):
        for m in standard_monomials(ring, d - a):
            out.append(ring.poly.term(k, m))
    return out


def map_matrix(ring: QuotientRing, src_degrees, columns, tgt_degrees, d: int) -> np.ndarray:
    """Matrix of the degree-``d`` component of ``F_src -> F_tgt``."""
    src = piece_basis(ring, src_degrees, d)
    tgt = piece_basis(ring, tgt_degrees, d)
    index = {t: i for i, t in enumerate(tgt)}
    A = np.zeros((len(tgt), len(src)), dtype=np.int64)
    r = ring.poly
    for j, t in enumerate(src):
        img = d_mul_poly({r.mono(t): 1}, columns[r.pos(t)], ring.p)
        img = reduce_mod_ideal(ring, tgt_degrees, img)
        for u, v in img.items():
            A[index[u], j] = v
    return A


@dataclass
class ExactnessCertificate:
    max_degree: int
    checks: list = field(default_factory=list)  # (i, j, dim ker d_i, rank d_{i+1})

    @property
    def exact(self) -> bool:
        return all(k == r for _, _, k, r in self.checks)


def certify_exactness(res, max_degree: int = 8, use_numba=None) -> ExactnessCertificate:
    """Check ``dim ker (d_i)_j = rank (d_{i+1})_j`` for ``1 <= i < length`` and ``j <= max_degree``.

    ``d_0`` is the zero map, so step 0 is skipped: exactness there is the
    statement that the cokernel is M, checked separately against its
    Hilbert function.
    """
    ring = res.ring
    p = ring.p
    cert = ExactnessCertificate(max_degree)
    for i in range(1, res.length):
        Fi = res.ranks[i]
        if not Fi:
            continue
        lo = min(Fi)
        for j in range(lo, max_degree + 1):
            A = map_matrix(ring, Fi, res.diffs[i], res.ranks[i - 1], j)
            B = map_matrix(ring, res.ranks[i + 1], res.diffs[i + 1], Fi, j)
            dim_src = A.shape[1]
            ker = dim_src - (rank_mod_p(A, p, use_numba) if A.size else 0)
            im = rank_mod_p(B, p, use_numba) if B.size else 0
            cert.checks.append((i, j, ker, im))
    return cert


def cokernel_dims(res, max_degree: int = 8, use_numba=None) -> list:
    """``dim (F_0)_j - rank (d_1)_j`` for ``j <= max_degree``: the Hilbert function of M."""
    ring = res.ring
    F0 = res.ranks[0]
    if not F0:
        return []
    out = []
    for j in range(min(F0), max_degree + 1):
        A = map_matrix(ring, res.ranks[1], res.diffs[1], F0, j)
        rows = len(piece_basis(ring, F0, j))
        out.append((j, rows - (rank_mod_p(A, ring.p, use_numba) if A.size else 0)))
    return out
