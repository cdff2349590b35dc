"""Brute-force reference computations.

Nothing here calls the pair machinery, the modular solver or the projective
search: characters come from value tables of characters induced from
degree-one characters of subgroups, and cohomology questions are settled by
exhaustive search.
"""
from __future__ import annotations

import itertools
import math

import numpy as np

from .cyclotomic import inner_product, reduce_rows

# -- groups as multiplication tables ---------------------------------------


class TableGroup:
    """A finite group given by its full multiplication table (identity 0)."""

    def __init__(self, table):
        self.t = np.asarray(table, dtype=np.int64)
        self.order = len(self.t)
        self.inv = np.argmin(self.t, axis=1)  # x * inv(x) = 0, the minimum entry
        assert (self.t[np.arange(self.order), self.inv] == 0).all()
        orders = np.zeros(self.order, dtype=np.int64)
        cur = np.arange(self.order)
        k = 1
        while (orders == 0).any():
            orders[(cur == 0) & (orders == 0)] = k
            cur = self.t[cur, np.arange(self.order)]
            k += 1
        self.orders = orders
        self.exponent = math.lcm(*map(int, orders))

    @classmethod
    def of(cls, G):
        return cls(G.table)

    def closure(self, gens, base=None):
        mask = np.zeros(self.order, dtype=bool) if base is None else base.copy()
        mask[0] = True
        gens = [int(g) for g in gens] + ([] if base is None else list(np.flatnonzero(base)))
        frontier = np.flatnonzero(mask)
        garr = np.array(sorted(set(gens)) or [0])
        while len(frontier):
            nxt = np.unique(self.t[np.ix_(frontier, garr)].ravel())
            nxt = nxt[~mask[nxt]]
            mask[nxt] = True
            frontier = nxt
        return mask

    def subgroups(self, containing=None):
        start = self.closure([]) if containing is None else self.closure([], containing)
        seen = {start.tobytes(): start}
        queue = [start]
        while queue:
            s = queue.pop()
            for x in np.flatnonzero(~s):
                t = self.closure([x], s)
                k = t.tobytes()
                if k not in seen:
                    seen[k] = t
                    queue.append(t)
        return sorted(seen.values(), key=lambda m: (-m.sum(), tuple(np.flatnonzero(m))))

    def conjugacy_classes(self):
        left = np.ones(self.order, dtype=bool)
        classes = []
        allg = np.arange(self.order)
        for x in range(self.order):
            if left[x]:
                cl = np.unique(self.t[self.t[allg, x], self.inv])
                left[cl] = False
                classes.append(cl)
        return classes

    def linear_characters(self, mask, W):
        """Hom(S, Z/W) by enumerating generator values of the right orders."""
        els = np.flatnonzero(mask)
        gens = []
        cur = self.closure([])
        for x in sorted(els, key=lambda x: (-self.orders[x], x)):
            if not cur[x]:
                gens.append(int(x))
                cur = self.closure(gens)
        pos = {int(x): i for i, x in enumerate(els)}
        # BFS words
        words = {0: np.zeros(len(gens), dtype=np.int64)}
        order = [0]
        i = 0
        while i < len(order):
            x = order[i]
            for gi, g in enumerate(gens):
                y = int(self.t[x, g])
                if y not in words:
                    w = words[x].copy()
                    w[gi] += 1
                    words[y] = w
                    order.append(y)
            i += 1
        wmat = np.array([words[int(x)] for x in els])
        nxt = np.array([[pos[int(self.t[x, g])] for g in gens] for x in els])
        out = []
        choices = [range(0, W, W // math.gcd(W, int(self.orders[g]))) for g in gens]
        for v in itertools.product(*choices):
            vals = (wmat @ np.array(v, dtype=np.int64)) % W if gens else np.zeros(len(els), dtype=np.int64)
            ok = all(((vals + v[gi] - vals[nxt[:, gi]]) % W == 0).all() for gi in range(len(gens)))
            if ok:
                full = np.full(self.order, -1, dtype=np.int64)
                full[els] = vals
                out.append(full)
        return out

    def induce(self, mask, chi, W):
        """Exponent-count table of Ind_S^G chi."""
        n = self.order
        seen = np.zeros(n, dtype=bool)
        reps = []
        S = np.flatnonzero(mask)
        for x in range(n):
            if not seen[x]:
                reps.append(x)
                seen[self.t[x, S]] = True
        reps = np.array(reps)
        x = np.arange(n)
        conj = self.t[self.t[self.inv[reps][None, :], x[:, None]], reps[None, :]]
        inside = mask[conj]
        out = np.zeros((n, W), dtype=np.int64)
        rows, cols = np.nonzero(inside)
        np.add.at(out, (rows, chi[conj[rows, cols]] % W), 1)
        return out


def oracle_irr_by_values(TG: TableGroup, W=None, containing=None):
    """Irr(G) as (degree, exponent-count table) pairs, by inducing degree-one
    characters of subgroups and keeping the distinct irreducible ones."""
    W = W or TG.exponent
    found = {}
    total = 0
    for mask in TG.subgroups(containing):
        deg = TG.order // int(mask.sum())
        if deg * deg > TG.order - total:
            continue
        for chi in TG.linear_characters(mask, W):
            tab = TG.induce(mask, chi, W)
            if inner_product(tab, tab, TG.order, W) != 1:
                continue
            key = reduce_rows(tab, W).tobytes()
            if key in found:
                continue
            found[key] = (deg, tab)
            total += deg * deg
        if total == TG.order:
            break
    if total != TG.order:
        raise ArithmeticError("group is not monomial over the searched subgroups")
    return sorted(found.values(), key=lambda dt: (dt[0], reduce_rows(dt[1], W).tobytes()))


def degrees_poly(degs):
    from .zeta import DirichletPoly
    out = {}
    for d in degs:
        out[d] = out.get(d, 0) + 1
    return DirichletPoly(out)


def zeta_direct(G, containing=None):
    TG = TableGroup.of(G)
    return degrees_poly(d for d, _ in oracle_irr_by_values(TG, containing=containing))


def twist_partition(TG: TableGroup, irr, W=None):
    """Classes of Irr(G) under multiplication by degree-one characters."""
    W = W or TG.exponent
    keys = [reduce_rows(t, W).tobytes() for _, t in irr]
    index = {k: i for i, k in enumerate(keys)}
    lin = []
    for d, t in irr:
        if d == 1:
            lin.append(np.argmax(t, axis=1))  # the exponent of the single root
    parent = list(range(len(irr)))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for i, (_, t) in enumerate(irr):
        for psi in lin:
            cols = (np.arange(W)[None, :] + psi[:, None]) % W
            tw = np.zeros_like(t)
            tw[np.arange(TG.order)[:, None], cols] = t
            j = index[reduce_rows(tw, W).tobytes()]
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = {}
    for i in range(len(irr)):
        groups.setdefault(find(i), []).append(i)
    return [groups[k] for k in sorted(groups)]


def oracle_twist_partition(G, containing=None):
    """Twist classes of Irr(G) as lists of (degree, count table) pairs."""
    TG = TableGroup.of(G)
    irr = oracle_irr_by_values(TG, containing=containing)
    return [[irr[i] for i in cls] for cls in twist_partition(TG, irr)]


def twist_direct(G, containing=None):
    TG = TableGroup.of(G)
    irr = oracle_irr_by_values(TG, containing=containing)
    return degrees_poly(irr[c[0]][0] for c in twist_partition(TG, irr))


def class_count(TG: TableGroup):
    return len(TG.conjugacy_classes())


# -- characters of N from value tables --------------------------------------


def n_table_group(G):
    return TableGroup(G.N.table)


def induced_from_pair(G, pair, W):
    """Value table of Ind_M^N chi on N (for the concordance checks)."""
    TN = n_table_group(G)
    return TN.induce(pair.M.mask, pair.chi, W)


# -- cohomology by exhaustion ----------------------------------------------


def coboundary_set(mul, mod, step=1):
    """All coboundaries b(i) + b(j) - b(ij) with b over Z/mod, as a set of
    byte strings of the matrices (entries mod ``mod``)."""
    r = len(mul)
    out = set()
    bs = np.array(list(itertools.product(range(mod), repeat=r - 1)), dtype=np.int64)
    for b0 in range(0, mod, step):
        full = np.concatenate([np.full((len(bs), 1), b0), bs], axis=1)
        z = (full[:, :, None] + full[:, None, :] - full[:, mul]) % mod
        for row in z.reshape(len(bs), -1):
            out.add(row.tobytes())
    return out


def oracle_coboundary(z, mul, mod, cob=None):
    """Is z (entries mod ``mod``) a coboundary?  Exhaustive over b."""
    if cob is None:
        cob = coboundary_set(mul, mod)
    return (np.asarray(z, dtype=np.int64) % mod).reshape(-1).tobytes() in cob



def corpus_search_LKN(corpus=None):
    """Twist classes with N < K < L strictly, as (group, normal, theta index, |K/N|, |L/N|)."""
    from .corpus import CORPUS, build
    from .zeta import Clifford, twist_class_reps
    out = []
    for g, n in corpus or CORPUS:
        cl = Clifford(build(g, n))
        for a, _ in twist_class_reps(cl):
            K, L = cl.K_of(a), cl.L_of(a)
            if 1 < len(K) < len(L):
                out.append((g, n, a, len(K), len(L)))
    return out


def twist_growth_chains(corpus=None):
    """Twist classes whose twist stabiliser L is strictly larger than K."""
    from .corpus import CORPUS, build
    from .zeta import Clifford, twist_class_reps
    out = []
    for g, n in corpus or CORPUS:
        cl = Clifford(build(g, n))
        for a, _ in twist_class_reps(cl):
            K, L = cl.K_of(a), cl.L_of(a)
            if len(L) > len(K):
                out.append((g, n, a, len(K), len(L)))
    return out
