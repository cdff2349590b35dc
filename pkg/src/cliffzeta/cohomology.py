"""2-cocycles on top subgroups X/N with values in Q/Z, and the class C(H, chi).

Values in Q/Z are stored as residues modulo an explicit modulus; a matrix
``z`` with modulus ``q`` stands for the function (i, j) -> z[i, j] / q.
"""
from __future__ import annotations

import math
from functools import cached_property

import numpy as np

from .extension import Group, _factorize
from .modlin import kernel_mod, solve_mod


class TopGroup:
    """A top subgroup X of G (so X/N is a subgroup of G/N) with local indexing."""

    def __init__(self, G: Group, X):
        self.G = G
        self.X = tuple(X)
        self.r = len(self.X)
        self.pos = {x: a for a, x in enumerate(self.X)}
        Xa = np.array(self.X)
        lookup = np.full(G.m, -1, dtype=np.int64)
        lookup[Xa] = np.arange(self.r)
        self.lookup = lookup
        self.mul = lookup[G.gamma[np.ix_(Xa, Xa)]]
        if (self.mul < 0).any():
            raise ValueError(f"{self.X} is not closed under the top product")
        self.inv = np.array([int(np.flatnonzero(self.mul[a] == 0)[0]) for a in range(self.r)])

    def __repr__(self):
        return f"TopGroup{self.X}"

    @cached_property
    def orders(self):
        out = []
        for a in range(self.r):
            k, b = 1, a
            while b != 0:
                b = int(self.mul[b, a])
                k += 1
            out.append(k)
        return out

    @cached_property
    def exponent(self):
        return math.lcm(*self.orders) if self.orders else 1

    def local(self, Y):
        return tuple(sorted(int(self.lookup[y]) for y in Y))

    @cached_property
    def subgroups(self):
        """Local index tuples of all subgroups, largest first."""
        Xs = set(self.X)
        subs = [self.local(S) for S in self.G.top_subgroups if set(S) <= Xs]
        return sorted(subs, key=lambda s: (-len(s), s))

    def left_transversal(self, S):
        """Minimal representatives of the left cosets aS."""
        seen = np.zeros(self.r, dtype=bool)
        reps = []
        S = np.array(S)
        for a in range(self.r):
            if not seen[a]:
                reps.append(a)
                seen[self.mul[a, S]] = True
        return reps


# -- 2-cocycles ---------------------------------------------------------------


class Cocycle2:
    """A function z: X/N x X/N -> Q/Z, values z[a, b] / mod."""

    def __init__(self, Q: TopGroup, z, mod):
        self.Q = Q
        self.mod = int(mod)
        self.z = np.asarray(z, dtype=np.int64) % self.mod

    def __repr__(self):
        return f"Cocycle2(mod={self.mod}, {self.z.tolist()})"

    def rescale(self, mod):
        if mod % self.mod:
            raise ValueError("new modulus must be a multiple")
        return Cocycle2(self.Q, self.z * (mod // self.mod), mod)

    def _common(self, other):
        m = math.lcm(self.mod, other.mod)
        return self.rescale(m), other.rescale(m), m

    def __add__(self, other):
        a, b, m = self._common(other)
        return Cocycle2(self.Q, a.z + b.z, m)

    def __neg__(self):
        return Cocycle2(self.Q, -self.z, self.mod)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        return Cocycle2(self.Q, self.z * k, self.mod)

    def is_cocycle(self):
        """z(ab, c) + z(a, b) = z(a, bc) + z(b, c) for all a, b, c."""
        m, z, q = self.Q.mul, self.z, self.mod
        r = self.Q.r
        a, b, c = np.meshgrid(np.arange(r), np.arange(r), np.arange(r), indexing="ij")
        lhs = z[m[a, b], c] + z[a, b]
        rhs = z[a, m[b, c]] + z[b, c]
        return not ((lhs - rhs) % q).any()

    def is_normalized(self):
        return not (self.z[0].any() or self.z[:, 0].any())

    def restrict(self, sub: "TopGroup"):
        """Restriction to a smaller top subgroup."""
        idx = np.array([self.Q.pos[x] for x in sub.X])
        return Cocycle2(sub, self.z[np.ix_(idx, idx)], self.mod)

    def primary_component(self, q):
        """The q-primary part e_q z, with e_q the idempotent of Z/mod for q."""
        fac = _factorize(self.mod)
        qe = q ** fac.get(q, 0)
        rest = self.mod // qe
        if qe == 1:
            e = 0
        elif rest == 1:
            e = 1
        else:
            e = (rest * pow(rest, -1, qe)) % self.mod
        return Cocycle2(self.Q, self.z * e, self.mod)

    def key(self):
        return (self.Q.X, self.mod, self.z.tobytes())


def coboundary_of(Q: TopGroup, b, mod):
    """(a, c) -> b(a) + b(c) - b(ac)."""
    b = np.asarray(b, dtype=np.int64)
    z = b[:, None] + b[None, :] - b[Q.mul]
    return Cocycle2(Q, z, mod)


def _coboundary_system(Q: TopGroup):
    r = Q.r
    A = np.zeros((r * r, r), dtype=np.int64)
    rows = np.arange(r * r)
    a, c = np.divmod(rows, r)
    np.add.at(A, (rows, a), 1)
    np.add.at(A, (rows, c), 1)
    np.add.at(A, (rows, Q.mul[a, c]), -1)
    return A


def coboundary_solution(z: Cocycle2):
    """b with z = db, as (b, modulus), or None.

    Unknowns range over (1/(mod * exp(X/N))) Z/Z, which suffices.
    """
    Q = z.Q
    big = z.mod * Q.exponent
    A = _coboundary_system(Q)
    rhs = (z.z * Q.exponent).reshape(-1)
    x, _ = solve_mod(A, rhs, big)
    if x is None:
        return None
    return x, big


def is_coboundary2(z: Cocycle2) -> bool:
    return coboundary_solution(z) is not None


def class_eq(z1: Cocycle2, z2: Cocycle2) -> bool:
    return is_coboundary2(z1 - z2)


def cocycle_generators(Q: TopGroup, mod):
    """Generators of the normalized 2-cocycles with values in (1/mod)Z/Z."""
    r = Q.r
    free = [(a, c) for a in range(1, r) for c in range(1, r)]
    col = {ac: i for i, ac in enumerate(free)}
    rows = []
    for a in range(r):
        for b in range(r):
            for c in range(r):
                row = np.zeros(len(free), dtype=np.int64)
                for (x, y), s in (((int(Q.mul[a, b]), c), 1), ((a, b), 1),
                                  ((a, int(Q.mul[b, c])), -1), ((b, c), -1)):
                    if (x, y) in col:
                        row[col[(x, y)]] += s
                if row.any():
                    rows.append(row)
    if not free:
        return []
    A = np.unique(np.array(rows) % mod, axis=0) if rows else np.zeros((0, len(free)), dtype=np.int64)
    kern = kernel_mod(A, mod) if len(A) else [np.eye(len(free), dtype=np.int64)[i] for i in range(len(free))]
    out = []
    for v in kern:
        z = np.zeros((r, r), dtype=np.int64)
        for (a, c), i in col.items():
            z[a, c] = v[i]
        out.append(Cocycle2(Q, z, mod))
    return out


def h2_classes(Q: TopGroup, limit=10_000):
    """Representatives of H^2(X/N, Q/Z), one per class.

    Every class has a representative with values in (1/|X/N|)Z/Z; the classes
    are found by closing the zero class under adding cocycle generators.
    """
    zero = Cocycle2(Q, np.zeros((Q.r, Q.r), dtype=np.int64), 1)
    if _is_cyclic(Q):
        return [zero]
    gens = cocycle_generators(Q, Q.r)
    reps = [zero]
    frontier = [zero]
    while frontier:
        nxt = []
        for c in frontier:
            for g in gens:
                d = c + g
                if any(class_eq(d, e) for e in reps):
                    continue
                reps.append(d)
                nxt.append(d)
                if len(reps) > limit:
                    raise MemoryError("too many cohomology classes")
        frontier = nxt
    return reps


def _is_cyclic(Q: TopGroup):
    return max(Q.orders) == Q.r


# -- the class of a pair ----------------------------------------------------


def factor_set_elements(pa):
    """c[a, b] = t_k^-1 a_ij phi_j^-1(t_i) t_j in N cap H, k = gamma(i, j)."""
    H = pa.H
    G = H.G
    t, ninv = G.N.table, G.N.inv
    X = H.top
    r = len(X)
    out = np.zeros((r, r), dtype=np.int64)
    for a, i in enumerate(X):
        for b, j in enumerate(X):
            k = int(G.gamma[i, j])
            ti, tj, tk = H.tails[i], H.tails[j], H.tails[k]
            out[a, b] = t[t[t[ninv[tk], G.a[i, j]], G.phi_inv[j][ti]], tj]
    return out


def class_of_pair(pa, W) -> Cocycle2:
    """Factor set of the strong extension chi^(y_i t_i n) = chi(n), on X/N.

    With rho(x) rho(y) = alpha(x, y) rho(xy) this is alpha = -chi(c).
    """
    c = factor_set_elements(pa)
    vals = pa.chi[c]
    if (vals < 0).any():
        raise ValueError("transversal tails do not define a subgroup over N cap H")
    return Cocycle2(TopGroup(pa.H.G, pa.H.top), -vals, W)


def satisfies_class(pa, c: Cocycle2, W) -> bool:
    """C(H, chi) = c iff some delta solves
    chi(c_ab) + c(a, b) = delta(a) + delta(b) - delta(ab)  (a, b in X/N).

    Built straight from the character values; the unknown delta ranges over
    (1/(mod * exp))Z/Z.
    """
    Q = c.Q
    if Q.X != tuple(pa.H.top):
        raise ValueError("class lives on a different top subgroup")
    mod = math.lcm(W, c.mod)
    vals = pa.chi[factor_set_elements(pa)] * (mod // W)
    target = vals + c.z * (mod // c.mod)
    big = mod * Q.exponent
    A = _coboundary_system(Q)
    x, _ = solve_mod(A, (target * Q.exponent).reshape(-1) % big, big)
    return x is not None
