"""Concrete small groups and their conversion into extension data.

Each catalogue entry is a concrete group (hashable elements plus a product)
together with named normal p-subgroups.  ``build`` turns a choice of normal
subgroup into a :class:`Group` by picking a pc sequence of N along its lower
p-series and a transversal of N in G.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .extension import Group, _factorize
from .pcgroup import PcGroup


@dataclass
class Concrete:
    name: str
    gens: list
    mul: Callable
    identity: object
    normals: dict = field(default_factory=dict)  # name -> generators of N
    description: str = ""

    def elements(self):
        els = [self.identity]
        seen = {self.identity}
        i = 0
        while i < len(els):
            x = els[i]
            for g in self.gens:
                y = self.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    els.append(y)
            i += 1
        return els


def _closure(mul, identity, gens):
    els = [identity]
    seen = {identity}
    i = 0
    while i < len(els):
        for g in gens:
            y = mul(els[i], g)
            if y not in seen:
                seen.add(y)
                els.append(y)
        i += 1
    return els


def _power(mul, identity, x, k):
    r = identity
    for _ in range(k):
        r = mul(r, x)
    return r


def to_extension(C: Concrete, normal: str, check_iso=True):
    """Extension data (and the element map) for C with the named N."""
    mul, e = C.mul, C.identity
    els = C.elements()
    pos = {x: i for i, x in enumerate(els)}
    inv = {}
    for x in els:
        prev, y = e, x
        while y != e:
            prev, y = y, mul(y, x)
        inv[x] = prev
    Nels = _closure(mul, e, C.normals[normal])
    Nset = set(Nels)
    fac = _factorize(len(Nels))
    if len(fac) != 1:
        raise ValueError(f"{C.name}/{normal}: N is not a p-group")
    (p, d), = fac.items()
    for g in C.gens:
        for n in Nels:
            if mul(mul(g, n), inv[g]) not in Nset:
                raise ValueError(f"{C.name}/{normal}: N is not normal")

    # lower p-series of N, computed concretely
    def comm(x, y):
        return mul(mul(inv[x], inv[y]), mul(x, y))

    series = [sorted(Nels, key=pos.get)]
    while len(series[-1]) > 1:
        cur = series[-1]
        gens = [_power(mul, e, x, p) for x in cur] + [comm(x, y) for x in cur for y in Nels]
        nxt = sorted(_closure(mul, e, [g for g in set(gens) if g != e]), key=pos.get)
        series.append(nxt)
    pcgs = []
    for top, below in zip(series, series[1:]):
        base = [g for g in below if g != e]
        span = set(below)
        layer = []
        for x in top:
            if x not in span:
                layer.append(x)
                span = set(_closure(mul, e, base + layer))
            if len(span) == len(top):
                break
        pcgs.extend(layer)
    if len(pcgs) != d:
        raise AssertionError("pc sequence has the wrong length")
    # exponent vectors of N's elements
    vec = {}
    for ev in itertools.product(range(p), repeat=d):
        x = e
        for g, k in zip(pcgs, ev):
            x = mul(x, _power(mul, e, g, k))
        vec[x] = ev
    if len(vec) != len(Nels):
        raise AssertionError("pc sequence does not parametrise N")
    weights = [p ** (d - 1 - i) for i in range(d)]

    def idx(x):
        return sum(a * w for a, w in zip(vec[x], weights))

    powers = [vec[_power(mul, e, g, p)] for g in pcgs]
    comms = {}
    for i in range(d):
        for j in range(i + 1, d):
            c = vec[comm(pcgs[j], pcgs[i])]
            if any(c):
                comms[(j, i)] = c
    Npc = PcGroup(p, d, powers, comms)
    # transversal: first element of each coset in generation order
    reps = []
    coset_of = {}
    for x in els:
        if x in coset_of:
            continue
        k = len(reps)
        reps.append(x)
        for n in Nels:
            coset_of[mul(x, n)] = k
    m = len(reps)
    gamma = [[0] * m for _ in range(m)]
    tails = [[0] * m for _ in range(m)]
    for i, yi in enumerate(reps):
        for j, yj in enumerate(reps):
            z = mul(yi, yj)
            k = coset_of[z]
            gamma[i][j] = k
            tails[i][j] = idx(mul(inv[reps[k]], z))
    imgs = [[idx(mul(mul(y, g), inv[y])) for g in pcgs] for y in reps]
    G = Group(Npc, gamma, tails, imgs, name=f"{C.name}/{normal}")
    emap = {x: G.elem(coset_of[x], idx(mul(inv[reps[coset_of[x]]], x))) for x in els}
    if check_iso and len(els) <= 800:
        sample = els if len(els) <= 200 else els[:: max(1, len(els) // 120)]
        for x in sample:
            for y in els:
                if emap[mul(x, y)] != G.mul(emap[x], emap[y]):
                    raise AssertionError("extension data disagree with the concrete group")
    return G, emap


# -- concrete families --------------------------------------------------------


def cyclic(n):
    return Concrete(f"C{n}", [1], lambda x, y: (x + y) % n, 0, {"G": [1]}, f"cyclic of order {n}")


def product(A: Concrete, B: Concrete, name=None):
    def mul(x, y):
        return (A.mul(x[0], y[0]), B.mul(x[1], y[1]))

    gens = [(g, B.identity) for g in A.gens] + [(A.identity, g) for g in B.gens]
    C = Concrete(name or f"{A.name}x{B.name}", gens, mul, (A.identity, B.identity))
    return C


def heisenberg(q, name=None):
    """Upper unitriangular 3x3 matrices over Z/q as triples (a, b, c)."""

    def mul(x, y):
        return ((x[0] + y[0]) % q, (x[1] + y[1]) % q, (x[2] + y[2] + x[0] * y[1]) % q)

    one = (0, 0, 0)
    gens = [(1, 0, 0), (0, 1, 0)]
    return Concrete(
        name or f"Heis{q}", gens, mul, one,
        {"G": gens, "A": [(0, 1, 0), (0, 0, 1)], "Z": [(0, 0, 1)]},
        f"Heisenberg group over Z/{q}",
    )


def metacyclic_27():
    def mul(x, y):
        return ((x[0] + pow(4, x[1], 9) * y[0]) % 9, (x[1] + y[1]) % 3)

    return Concrete("M27", [(1, 0), (0, 1)], mul, (0, 0),
                    {"C9": [(1, 0)], "G": [(1, 0), (0, 1)]}, "C9 semidirect C3, n -> n^4")


def dihedral(n):
    def mul(x, y):
        return ((x[0] + (-1) ** x[1] * y[0]) % n, (x[1] + y[1]) % 2)

    return Concrete(f"D{2 * n}", [(1, 0), (0, 1)], mul, (0, 0), {}, f"dihedral of order {2 * n}")


def dicyclic(n):
    # a^k x^s with x a x^-1 = a^-1 and x^2 = a^n, a of order 2n
    def mul(x, y):
        k, s = x
        k2, s2 = y
        if s == 0:
            return ((k + k2) % (2 * n), s2)
        if s2 == 0:
            return ((k - k2) % (2 * n), 1)
        return ((k - k2 + n) % (2 * n), 0)

    return Concrete(f"Dic{n}", [(1, 0), (0, 1)], mul, (0, 0), {}, f"dicyclic of order {4 * n}")


def perm_group(name, gens, degree):
    def mul(x, y):
        return tuple(x[y[i]] for i in range(degree))

    return Concrete(name, [tuple(g) for g in gens], mul, tuple(range(degree)))


def _catalogue():
    cat = {}
    for n in (2, 3, 4, 9):
        cat[f"C{n}"] = cyclic(n)
    for q in (2, 3):
        c = product(cyclic(q), cyclic(q), f"C{q}xC{q}")
        c.normals = {"G": c.gens}
        c.description = f"elementary abelian of order {q * q}"
        cat[c.name] = c
    cat["H2"] = heisenberg(2, "H2")
    cat["H3"] = heisenberg(3, "H3")
    cat["Heis9"] = heisenberg(9, "Heis9")
    cat["M27"] = metacyclic_27()
    q8 = dicyclic(2)
    q8.name, q8.normals, q8.description = "Q8", {"C4": [(1, 0)], "G": q8.gens}, "quaternion of order 8"
    cat["Q8"] = q8
    d4 = dihedral(4)
    d4.name, d4.normals = "D4", {"C4": [(1, 0)], "G": d4.gens, "Z": [(2, 0)]}
    cat["D4"] = d4
    s3 = perm_group("S3", [(1, 2, 0), (1, 0, 2)], 3)
    s3.normals, s3.description = {"C3": [(1, 2, 0)]}, "symmetric group on 3 letters"
    cat["S3"] = s3
    dic3 = dicyclic(3)
    dic3.name, dic3.normals = "Dic3", {"C3": [(2, 0)], "Z": [(3, 0)]}
    dic3.description = "C3 semidirect C4"
    cat["Dic3"] = dic3
    c3s3 = product(cyclic(3), s3, "C3xS3")
    c3s3.normals = {"C3xC3": [(1, (0, 1, 2)), (0, (1, 2, 0))], "C3": [(1, (0, 1, 2))]}
    c3s3.description = "direct product of C3 and S3"
    cat["C3xS3"] = c3s3
    a4 = perm_group("A4", [(1, 2, 0, 3), (1, 0, 3, 2)], 4)
    a4.normals, a4.description = {"V4": [(1, 0, 3, 2), (2, 3, 0, 1)]}, "alternating group on 4 letters"
    cat["A4"] = a4
    s4 = perm_group("S4", [(1, 2, 3, 0), (1, 0, 2, 3)], 4)
    s4.normals, s4.description = {"V4": [(1, 0, 3, 2), (2, 3, 0, 1)]}, "symmetric group on 4 letters"
    cat["S4"] = s4
    return cat


CATALOGUE = _catalogue()

# (group, normal subgroup) pairs used by the verification suites
CORPUS = [
    ("C2", "G"), ("C3", "G"), ("C4", "G"), ("C9", "G"),
    ("C2xC2", "G"), ("C3xC3", "G"),
    ("H2", "G"), ("H3", "G"), ("H3", "A"), ("H3", "Z"),
    ("M27", "C9"), ("M27", "G"),
    ("Q8", "C4"), ("Q8", "G"), ("D4", "C4"), ("D4", "Z"),
    ("S3", "C3"), ("Dic3", "C3"), ("Dic3", "Z"),
    ("C3xS3", "C3xC3"), ("C3xS3", "C3"),
    ("A4", "V4"), ("S4", "V4"),
]


@lru_cache(maxsize=None)
def build(group_id: str, normal: str | None = None) -> Group:
    C = CATALOGUE[group_id]
    if normal is None:
        normal = next(iter(C.normals))
    G, _ = to_extension(C, normal)
    return G


@lru_cache(maxsize=None)
def build_with_map(group_id: str, normal: str):
    return to_extension(CATALOGUE[group_id], normal)


@lru_cache(maxsize=None)
def heisenberg_tower(p: int, m: int, normal: str = "A") -> Group:
    """Heisenberg group over Z/p^m as an extension of the given subgroup."""
    C = heisenberg(p ** m)
    G, _ = to_extension(C, normal, check_iso=m <= 2)
    return G


def cyclic_tower(p: int, m: int) -> Group:
    G, _ = to_extension(cyclic(p ** m), "G")
    return G


def describe(group_id: str) -> dict:
    C = CATALOGUE[group_id]
    n = len(C.elements())
    primes = sorted(_factorize(n))
    return {"id": group_id, "order": n, "primes": primes, "normal": list(C.normals),
            "description": C.description}


def random_transversal(G: Group, rng) -> Group:
    c = [0] + [rng.randrange(G.N.order) for _ in range(G.m - 1)]
    return G.retransversal(c)
