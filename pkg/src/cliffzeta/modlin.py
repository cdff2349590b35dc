"""Linear algebra over Z/qZ.

Systems are split by the Chinese remainder theorem into prime-power moduli,
where a diagonal form is reached by pivoting on entries of least valuation.
"""
from __future__ import annotations

import itertools

import numpy as np

from .extension import _factorize


def _diag_pp(A, B, p, e):
    """Diagonalise A (rows x c) over Z/p^e; B holds extra columns carried by
    row operations.  Returns (A, B, Qm, pivots) with A Qm = row-reduced form."""
    q = p ** e
    A = np.array(A, dtype=np.int64) % q
    B = np.array(B, dtype=np.int64) % q
    rows, c = A.shape
    Qm = np.eye(c, dtype=np.int64)
    vals = []
    r = 0
    while r < min(rows, c):
        sub = A[r:, r:]
        nz = np.argwhere(sub != 0)
        if not len(nz):
            break
        v = sub[nz[:, 0], nz[:, 1]]
        val = np.zeros(len(v), dtype=np.int64)
        w = v.copy()
        while True:
            m = (w % p == 0)
            if not m.any():
                break
            val[m] += 1
            w[m] //= p
        k = int(np.argmin(val))
        i, j = int(nz[k, 0]) + r, int(nz[k, 1]) + r
        A[[r, i]] = A[[i, r]]
        B[[r, i]] = B[[i, r]]
        A[:, [r, j]] = A[:, [j, r]]
        Qm[:, [r, j]] = Qm[:, [j, r]]
        pv = int(val[k])
        pk = p ** pv
        unit = (int(A[r, r]) // pk) % q
        uinv = pow(unit, -1, q)
        A[r] = (A[r] * uinv) % q
        B[r] = (B[r] * uinv) % q
        below = A[r + 1:, r] // pk
        if below.any():
            A[r + 1:] = (A[r + 1:] - np.outer(below, A[r])) % q
            B[r + 1:] = (B[r + 1:] - np.outer(below, B[r])) % q
        right = A[r, r + 1:] // pk
        if right.any():
            A[:, r + 1:] = (A[:, r + 1:] - np.outer(A[:, r], right)) % q
            Qm[:, r + 1:] = (Qm[:, r + 1:] - np.outer(Qm[:, r], right)) % q
        vals.append(pv)
        r += 1
    return A, B, Qm, vals


def _solve_pp(A, b, p, e):
    """Particular solution (or None) and kernel generators of A x = b mod p^e."""
    q = p ** e
    A = np.asarray(A, dtype=np.int64)
    c = A.shape[1]
    D, B, Qm, vals = _diag_pp(A, np.asarray(b, dtype=np.int64).reshape(-1, 1), p, e)
    rank = len(vals)
    rhs = B[:, 0] % q
    y = np.zeros(c, dtype=np.int64)
    ok = True
    if rhs[rank:].any():
        ok = False
    for i, v in enumerate(vals):
        pk = p ** v
        if rhs[i] % pk:
            ok = False
            break
        y[i] = rhs[i] // pk
    kernel = []
    for i, v in enumerate(vals):
        if v > 0:
            g = np.zeros(c, dtype=np.int64)
            g[i] = p ** (e - v) if v < e else 1
            kernel.append(g)
    for j in range(rank, c):
        g = np.zeros(c, dtype=np.int64)
        g[j] = 1
        kernel.append(g)
    x = (Qm @ y) % q if ok else None
    kernel = [(Qm @ g) % q for g in kernel]
    return x, kernel


def solve_mod(A, b, q):
    """Solve A x = b over Z/q.

    Returns (x, kernel) where x is one solution (None if there is none) and
    kernel is a list of generators of the solution module of A x = 0.
    """
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if A.ndim != 2:
        raise ValueError("A must be a matrix")
    c = A.shape[1]
    if q == 1:
        return np.zeros(c, dtype=np.int64), []
    if A.shape[0] == 0:
        return np.zeros(c, dtype=np.int64), [np.eye(c, dtype=np.int64)[j] for j in range(c)]
    parts = []
    for p, e in sorted(_factorize(q).items()):
        pe = p ** e
        parts.append((pe, _solve_pp(A % pe, b % pe, p, e)))
    x = np.zeros(c, dtype=np.int64)
    kernel = []
    for pe, (xp, kp) in parts:
        idem = _idempotent(pe, q)
        if xp is None:
            x = None
        elif x is not None:
            x = (x + idem * xp) % q
        kernel.extend(((idem * g) % q) for g in kp)
    return x, kernel


def kernel_mod(A, q):
    A = np.asarray(A, dtype=np.int64)
    return solve_mod(A, np.zeros(A.shape[0], dtype=np.int64), q)[1]


def _idempotent(pe, q):
    """Integer congruent to 1 mod pe and 0 mod q/pe."""
    rest = q // pe
    if rest == 1:
        return 1
    return (rest * pow(rest, -1, pe)) % q


def span(gens, q, dim=None, limit=10 ** 6):
    """All Z/q-combinations of the generators, as a sorted list of tuples."""
    gens = [tuple(int(v) % q for v in g) for g in gens]
    if dim is None:
        dim = len(gens[0]) if gens else 0
    zero = (0,) * dim
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple((a + b) % q for a, b in zip(v, g))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
                    if len(seen) > limit:
                        raise MemoryError("solution module too large to enumerate")
        frontier = nxt
    return sorted(seen)


def module_size(gens, q):
    """Order of the submodule of (Z/q)^c generated by ``gens``."""
    if not gens:
        return 1
    size = 1
    for p, e in _factorize(q).items():
        pe = p ** e
        M = np.array([np.asarray(g) % pe for g in gens], dtype=np.int64)
        # rows generate the module; diagonal valuations give its structure
        _, _, _, vals = _diag_pp(M, np.zeros((len(gens), 0), dtype=np.int64), p, e)
        for v in vals:
            size *= p ** (e - v)
    return size


def all_vectors(q, c):
    return itertools.product(range(q), repeat=c)
