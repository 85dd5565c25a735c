"""Dense linear algebra over F_p.

Two interchangeable backends: numba-compiled loops (default) and a pure
numpy path.  Set ``SYZLAB_NUMBA=0`` to force the numpy path; it is also
used automatically when numba cannot be imported.
"""

import os

import numpy as np

try:  # pragma: no cover - exercised implicitly
    import numba
except ImportError:  # pragma: no cover
    numba = None

USE_NUMBA = numba is not None and os.environ.get("SYZLAB_NUMBA", "1") != "0"


def _rref_numpy(a, p):
    a = np.array(a, dtype=np.int64) % p
    nrows, ncols = a.shape
    pivots = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        nz = np.nonzero(a[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + nz[0]
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
        inv = pow(int(a[row, col]), p - 2, p)
        a[row] = (a[row] * inv) % p
        factors = a[:, col].copy()
        factors[row] = 0
        hit = np.nonzero(factors)[0]
        if hit.size:
            a[hit] = (a[hit] - np.outer(factors[hit], a[row])) % p
        pivots.append(col)
        row += 1
    return a, np.array(pivots, dtype=np.int64)


if numba is not None:

    @numba.njit(cache=True, nogil=True)
    def _inv_mod(a, p):
        # Fermat inverse by square-and-multiply
        result = 1
        base = a % p
        e = p - 2
        while e > 0:
            if e & 1:
                result = (result * base) % p
            base = (base * base) % p
            e >>= 1
        return result

    @numba.njit(cache=True, nogil=True)
    def _rref_numba(a, p):
        nrows, ncols = a.shape
        pivots = np.empty(min(nrows, ncols), dtype=np.int64)
        npiv = 0
        row = 0
        for col in range(ncols):
            if row == nrows:
                break
            piv = -1
            for r in range(row, nrows):
                if a[r, col] != 0:
                    piv = r
                    break
            if piv < 0:
                continue
            if piv != row:
                for c in range(ncols):
                    tmp = a[row, c]
                    a[row, c] = a[piv, c]
                    a[piv, c] = tmp
            inv = _inv_mod(a[row, col], p)
            for c in range(col, ncols):
                a[row, c] = (a[row, c] * inv) % p
            for r in range(nrows):
                if r == row:
                    continue
                f = a[r, col]
                if f == 0:
                    continue
                for c in range(col, ncols):
                    v = a[r, c] - f * a[row, c]
                    v %= p
                    a[r, c] = v
            pivots[npiv] = col
            npiv += 1
            row += 1
        return pivots[:npiv]


def rref_mod_p(a, p, use_numba=None):
    """Reduced row echelon form of ``a`` over F_p; returns (matrix, pivot columns)."""
    a = np.asarray(a, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    if use_numba is None:
        use_numba = USE_NUMBA
    if a.size == 0:
        return a.copy() % p, np.zeros(0, dtype=np.int64)
    if use_numba and numba is not None:
        work = np.ascontiguousarray(a % p)
        piv = _rref_numba(work, p)
        return work, piv
    return _rref_numpy(a, p)


def rank_mod_p(a, p, use_numba=None):
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return 0
    # eliminate along the shorter side
    if a.shape[0] > a.shape[1]:
        a = a.T
    return int(rref_mod_p(a, p, use_numba)[1].size)


def nullspace_mod_p(a, p, use_numba=None):
    """Basis of {v : a v = 0} over F_p, one vector per row of the result."""
    a = np.asarray(a, dtype=np.int64)
    nrows, ncols = a.shape
    if nrows == 0:
        return np.eye(ncols, dtype=np.int64)
    r, piv = rref_mod_p(a, p, use_numba)
    piv = list(int(c) for c in piv)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(piv):
            basis[k, pc] = (-r[i, fc]) % p
    return basis
