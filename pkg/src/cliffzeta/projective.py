"""Projective characters: strong extensions and irreducible projective
characters of X/N for a given factor set.

Tables are exponent-count arrays: row x, column k counts zeta_E^k in the
value at x.  Canonical forms come from reduction modulo Phi_E.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .characters import homs_to_cyclic
from .cohomology import Cocycle2, TopGroup, coboundary_solution
from .cyclotomic import inner_product, reduce_rows


def root_modulus(G):
    """A modulus E such that every value met in the projective computations
    lies in (1/E)Z/Z."""
    return math.lcm(2, G.exponent * TopGroup(G, range(G.m)).exponent)


def strong_extension_table(pa, W, E):
    """Values of theta^ = Ind_H^X chi^ on the elements y_i n (i in X), rows
    ordered as (position of i in X) * |N| + n."""
    H = pa.H
    G = H.G
    N = G.N
    t, ninv = N.table, N.inv
    M = H.core
    reps = np.array(M.left_cosets(), dtype=np.int64)
    n = np.arange(N.order)
    X = H.top
    out = np.zeros((len(X) * N.order, E), dtype=np.int64)
    f = E // W
    for a, i in enumerate(X):
        # s^-1 (y_i n) s = y_i phi_i^-1(s^-1) n s
        u = t[t[G.phi_inv[i][ninv[reps]][None, :], n[:, None]], reps[None, :]]
        m = t[ninv[H.tails[i]], u]
        inside = M.mask[m]
        vals = pa.chi[m]
        rows, cols = np.nonzero(inside)
        np.add.at(out, (a * N.order + rows, (vals[rows, cols] * f) % E), 1)
    return out


@dataclass(eq=False)
class ProjChar:
    counts: np.ndarray       # (r, E) exponent counts
    degree: int
    source: tuple = ()       # (subgroup, eta) it was induced from

    def canon(self, E):
        return reduce_rows(self.counts, E).tobytes()


def induced_projective(Q: TopGroup, beta, S, eta, E):
    """Ind_S^Q of the one-dimensional beta-representation eta of S.

    trace(x) = sum over t with s = t^-1 x t in S of
               zeta^(beta(x, t) - beta(t, s) + eta(s)).
    ``beta`` is an (r, r) array mod E, ``eta`` maps local indices of S to Z/E.
    """
    r = Q.r
    inS = np.zeros(r, dtype=bool)
    inS[list(S)] = True
    eta_full = np.zeros(r, dtype=np.int64)
    eta_full[list(S)] = eta
    T = np.array(Q.left_transversal(S))
    x = np.arange(r)
    s = Q.mul[Q.mul[Q.inv[T][None, :], x[:, None]], T[None, :]]   # (r, |T|)
    ok = inS[s]
    ex = beta[x[:, None], T[None, :]] - beta[T[None, :], s] + eta_full[s]
    out = np.zeros((r, E), dtype=np.int64)
    rows, cols = np.nonzero(ok)
    np.add.at(out, (rows, ex[rows, cols] % E), 1)
    return out


def projective_irreducibles(Q: TopGroup, beta: Cocycle2, E):
    """Irreducible beta-projective characters of X/N, found by inducing
    one-dimensional projective representations from subgroups.

    Raises if the characters found do not account for |X/N| (sum of squared
    degrees), i.e. if X/N is not projectively monomial for beta.
    """
    G = Q.G
    b = beta.rescale(E).z if E % beta.mod == 0 else None
    if b is None:
        raise ValueError("factor set modulus must divide E")
    found = {}
    total = 0
    for S in Q.subgroups:
        deg = Q.r // len(S)
        if deg * deg > Q.r - total:
            continue
        Sg = tuple(Q.X[a] for a in S)
        QS = TopGroup(G, Sg)
        zS = Cocycle2(QS, beta.z[np.ix_(S, S)], beta.mod)
        sol = coboundary_solution(zS)
        if sol is None:
            continue
        eta0, big = sol
        if E % big:
            raise ValueError("working modulus too small for the factor set")
        eta0 = eta0 * (E // big)
        homs = homs_to_cyclic(np.array(Sg), lambda xs, g: G.gamma[xs, g], G.top_generators(Sg), E)
        for h in homs:
            eta = (eta0 + h) % E
            tab = induced_projective(Q, b, S, eta, E)
            if inner_product(tab, tab, Q.r, E) != 1:
                continue
            key = reduce_rows(tab, E).tobytes()
            if key in found:
                continue
            found[key] = ProjChar(tab, deg, (S, tuple(int(v) for v in eta)))
            total += deg * deg
            if total == Q.r:
                break
        if total == Q.r:
            break
    if total != Q.r:
        raise ArithmeticError(f"projective monomial search accounts for {total} of {Q.r}")
    return sorted(found.values(), key=lambda pc: (pc.degree, pc.canon(E)))


def act(counts, perm, shift, E):
    """x -> zeta^shift(x) * value(perm(x)) on an exponent-count table."""
    counts = np.asarray(counts)
    src = counts[perm]
    r = len(perm)
    cols = (np.arange(E)[None, :] + np.asarray(shift)[:, None]) % E
    out = np.zeros_like(src)
    out[np.arange(r)[:, None], cols] = src
    return out


def nonvanishing(table, E):
    """Boolean mask of rows whose value is nonzero."""
    return reduce_rows(table, E).any(axis=1)


def ratio_exponent(num_row, den_row, E):
    """k with num = zeta^k den (both nonzero), or None."""
    zeta = np.exp(2j * np.pi * np.arange(E) / E)
    a, b = num_row @ zeta, den_row @ zeta
    if abs(b) < 1e-9:
        return None
    k = int(round(np.angle(a / b) * E / (2 * np.pi))) % E
    # the guess is only a guide; equality is decided exactly
    if np.array_equal(reduce_rows(num_row[None, :], E), reduce_rows(np.roll(den_row, k)[None, :], E)):
        return k
    return None
