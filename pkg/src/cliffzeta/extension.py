"""A finite group G given as an extension of a normal p-subgroup N.

G is described by a left transversal y_0 = 1, y_1, ..., y_{m-1} of N with

    y_i y_j = y_{gamma(i,j)} a_ij,      phi_i(n) = y_i n y_i^-1.

An element y_i n is encoded as the integer i * |N| + n.  Subgroups of G that
contain N are tuples of top indices (always starting with 0).
"""
from __future__ import annotations

import itertools
from functools import cached_property

import numpy as np

from .pcgroup import PcGroup, SubN


class ExtensionError(ValueError):
    pass


def _factorize(n):
    out = {}
    q = 2
    while q * q <= n:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class Group:
    def __init__(self, N: PcGroup, gamma, tails, phi_images, name="G", check=True):
        self.N = N
        self.name = name
        self.p = N.p
        self.m = len(gamma)
        m, s = self.m, N.order
        self.gamma = np.array(gamma, dtype=np.int64).reshape(m, m)
        self.a = np.array(tails, dtype=np.int64).reshape(m, m)
        self.phi = np.empty((m, s), dtype=np.int64)
        for i, imgs in enumerate(phi_images):
            self.phi[i] = self._extend_map(imgs)
        self.phi_inv = np.empty_like(self.phi)
        for i in range(m):
            self.phi_inv[i][self.phi[i]] = np.arange(s)
        self.order = m * s
        if check:
            self.validate()

    def _extend_map(self, imgs):
        N = self.N
        if len(imgs) != N.d:
            raise ExtensionError("automorphism must give one image per generator")
        out = np.empty(N.order, dtype=np.int64)
        for x in range(N.order):
            r = 0
            for g, e in enumerate(N.vector(x)):
                for _ in range(e):
                    r = int(N.table[r, imgs[g]])
            out[x] = r
        return out

    # -- validation ---------------------------------------------------------

    def validate(self):
        N, m = self.N, self.m
        t = N.table
        g, a = self.gamma, self.a
        if not (np.array_equal(g[0], np.arange(m)) and np.array_equal(g[:, 0], np.arange(m))):
            raise ExtensionError("index 0 must act as the identity in the top table")
        if a[0].any() or a[:, 0].any():
            raise ExtensionError("tails a_0j and a_i0 must be trivial")
        if not np.array_equal(self.phi[0], np.arange(N.order)):
            raise ExtensionError("phi_0 must be the identity")
        for i in range(m):
            row = sorted(g[i].tolist())
            if row != list(range(m)) or sorted(g[:, i].tolist()) != list(range(m)):
                raise ExtensionError(f"top table is not a Latin square at index {i}")
            ph = self.phi[i]
            if len(set(ph.tolist())) != N.order or not np.array_equal(ph[t], t[ph][:, ph]):
                raise ExtensionError(f"phi_{i} is not an automorphism of N")
        for i, j in itertools.product(range(m), repeat=2):
            k = g[i, j]
            lhs = self.phi[i][self.phi[j]]
            c = a[i, j]
            conj = t[t[c, np.arange(N.order)], N.inv[c]]
            if not np.array_equal(lhs, self.phi[k][conj]):
                raise ExtensionError(f"phi_{i} phi_{j} differs from phi_gamma conj(a_{i}{j})")
        for i, j, k in itertools.product(range(m), repeat=3):
            gij = g[i, j]
            left = (g[gij, k], t[a[gij, k], self.phi_inv[k][a[i, j]]])
            gjk = g[j, k]
            right = (g[i, gjk], t[a[i, gjk], a[j, k]])
            if left[0] != right[0] or left[1] != right[1]:
                raise ExtensionError(f"extension data not associative at ({i},{j},{k})")

    # -- elements -----------------------------------------------------------

    def elem(self, i, n=0):
        return i * self.N.order + n

    def split(self, g):
        return divmod(g, self.N.order)

    def mul(self, g, h):
        s = self.N.order
        i, n = divmod(g, s)
        j, n2 = divmod(h, s)
        t = self.N.table
        return int(self.gamma[i, j]) * s + int(t[t[self.a[i, j], self.phi_inv[j][n]], n2])

    def mul_many(self, gs, hs):
        s = self.N.order
        i, n = np.divmod(gs, s)
        j, n2 = np.divmod(hs, s)
        t = self.N.table
        return self.gamma[i, j] * s + t[t[self.a[i, j], self.phi_inv[j, n]], n2]

    @cached_property
    def top_inverse(self):
        return [int(np.flatnonzero(self.gamma[i] == 0)[0]) for i in range(self.m)]

    def inv(self, g):
        s = self.N.order
        i, n = divmod(g, s)
        j = self.top_inverse[i]
        t, ninv = self.N.table, self.N.inv
        # (y_i n)^-1 = n^-1 y_j a_ij^-1 = y_j phi_j^-1(n^-1) a_ij^-1
        return j * s + int(t[self.phi_inv[j][ninv[n]], ninv[self.a[i, j]]])

    def conj(self, g, x):
        """g x g^-1."""
        return self.mul(self.mul(g, x), self.inv(g))

    def conj_by_transversal(self, i, n):
        """phi_i(n) = y_i n y_i^-1."""
        return int(self.phi[i][n])

    @cached_property
    def table(self):
        if self.order > 6000:
            raise MemoryError("group too large for a full multiplication table")
        allg = np.arange(self.order)
        x, y = np.meshgrid(allg, allg, indexing="ij")
        return self.mul_many(x, y)

    def element_order(self, g):
        k, h = 1, g
        while h != 0:
            h = self.mul(h, g)
            k += 1
        return k

    @cached_property
    def element_orders(self):
        allg = np.arange(self.order)
        orders = np.zeros(self.order, dtype=np.int64)
        cur = allg.copy()
        k = 1
        while not orders.all():
            orders[(cur == 0) & (orders == 0)] = k
            cur = self.mul_many(cur, allg)
            k += 1
        return orders

    @cached_property
    def exponent(self):
        """Least common multiple of element orders (the modulus for characters)."""
        return int(np.lcm.reduce(np.unique(self.element_orders)))

    @cached_property
    def kappa(self):
        """kappa[i][j], d[i][j] with y_i^-1 y_j y_i = y_kappa d."""
        m = self.m
        k = np.empty((m, m), dtype=np.int64)
        d = np.empty((m, m), dtype=np.int64)
        for i in range(m):
            yi = self.elem(i)
            yinv = self.inv(yi)
            for j in range(m):
                k[i, j], d[i, j] = self.split(self.mul(self.mul(yinv, self.elem(j)), yi))
        self._d = d
        return k

    @property
    def dtab(self):
        _ = self.kappa
        return self._d

    # -- the top group Q = G/N ----------------------------------------------

    @cached_property
    def top_orders(self):
        out = []
        for i in range(self.m):
            k, j = 1, i
            while j != 0:
                j = int(self.gamma[j, i])
                k += 1
            out.append(k)
        return out

    def top_closure(self, gens):
        elems = {0}
        frontier = [0]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = int(self.gamma[x, g])
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(elems))

    @cached_property
    def top_subgroups(self):
        whole = tuple(range(self.m))
        seen = {(0,)}
        queue = [(0,)]
        while queue:
            s = queue.pop()
            for x in range(self.m):
                if x not in s:
                    t = self.top_closure(list(s) + [x])
                    if t not in seen:
                        seen.add(t)
                        queue.append(t)
        assert whole in seen
        return sorted(seen, key=lambda t: (len(t), t))

    def top_generators(self, X):
        """A small generating set of the top subgroup X (greedy)."""
        gens = []
        cur = (0,)
        for x in sorted(X, key=lambda x: (-self.top_orders[x], x)):
            if x not in cur:
                gens.append(x)
                cur = self.top_closure(gens)
            if len(cur) == len(X):
                break
        return gens

    def is_normal_top(self, X, Y):
        """X normal in Y (both top subgroups)."""
        Xs = set(X)
        inv = self.top_inverse
        return all(int(self.gamma[self.gamma[y, x], inv[y]]) in Xs for y in Y for x in X)

    def sylow_part(self, X, q, ambient=None):
        """Top subgroup X_q with X_q/N a Sylow q-subgroup of X/N.

        If ``ambient`` contains X as a normal subgroup, X_q = X cap ambient_q
        so that the choices are compatible.
        """
        size = len(X)
        if size % q and q != self.p:
            raise ValueError(f"{q} does not divide |K/N| = {size}")
        if ambient is not None and set(X) <= set(ambient) and self.is_normal_top(X, ambient):
            big = self.sylow_part(ambient, q)
            return tuple(sorted(set(X) & set(big)))
        target = q ** _factorize(size).get(q, 0)
        Xs = set(X)
        for S in self.top_subgroups:
            if len(S) == target and set(S) <= Xs:
                return S
        raise AssertionError("no Sylow subgroup found")

    def top_primes(self, X):
        return sorted(_factorize(len(X)))

    # -- subgroups of G -----------------------------------------------------

    def closure(self, gens):
        """Subgroup of G generated by the given elements, as a sorted array."""
        els = {0}
        frontier = [0]
        gens = [int(g) for g in gens if g]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in els:
                        els.add(y)
                        nxt.append(y)
            frontier = nxt
        return np.array(sorted(els), dtype=np.int64)

    def retransversal(self, c):
        """Same group with transversal y'_i = y_i c_i (c_0 = 1).

        Returns the new Group; an element y'_i n corresponds to y_i c_i n.
        """
        N, m = self.N, self.m
        t, ninv = N.table, N.inv
        c = [int(x) for x in c]
        if c[0] != 0:
            raise ExtensionError("the transversal element of N must stay 1")
        tails = np.empty((m, m), dtype=np.int64)
        for i in range(m):
            for j in range(m):
                k = int(self.gamma[i, j])
                # y'_i y'_j = y'_k c_k^-1 a_ij phi_j^-1(c_i) c_j
                tails[i, j] = t[t[t[ninv[c[k]], self.a[i, j]], self.phi_inv[j][c[i]]], c[j]]
        imgs = []
        for i in range(m):
            ci = c[i]
            row = []
            for g in range(N.d):
                x = N.gen(g)
                row.append(int(self.phi[i][t[t[ci, x], ninv[ci]]]))
            imgs.append(row)
        return Group(N, self.gamma.tolist(), tails.tolist(), imgs, name=self.name)


class SubH:
    """A subgroup H of G with HN = X, given by N cap H and tails t_i.

    (y_i t_i) for i in X is a left transversal of N cap H in H, with t_0 = 1.
    """

    def __init__(self, G: Group, top, core: SubN, tails):
        self.G = G
        self.top = tuple(top)
        self.core = core
        self.tails = dict(tails)
        self.tails[0] = 0

    @cached_property
    def elements(self):
        G = self.G
        s = G.N.order
        t = G.N.table
        core = np.array(self.core.elems)
        out = [i * s + t[self.tails[i], core] for i in self.top]
        return np.sort(np.concatenate(out))

    @cached_property
    def key(self):
        return (self.top, self.elements.tobytes())

    def contains(self, g):
        s = self.G.N.order
        j, n = divmod(g, s)
        if j not in self.tails:
            return False
        N = self.G.N
        return bool(self.core.mask[N.table[N.inv[self.tails[j]], n]])

    def check(self):
        """Closure: the tails define a subgroup with H cap N = core."""
        els = set(self.elements.tolist())
        G = self.G
        for i in self.top:
            for j in self.top:
                if G.mul(G.elem(i, self.tails[i]), G.elem(j, self.tails[j])) not in els:
                    return False
        gens = [G.elem(i, self.tails[i]) for i in self.top] + list(self.core.gens)
        return len(G.closure(gens)) == len(els)


def subgroup_from_elements(G: Group, X, els):
    s = G.N.order
    els = np.asarray(els)
    core_mask = np.zeros(s, dtype=bool)
    core_mask[els[els < s]] = True
    core = SubN(G.N, core_mask)
    tails = {}
    for g in els.tolist():
        i, n = divmod(g, s)
        if i not in tails:
            tails[i] = n
    if tuple(sorted(tails)) != tuple(X):
        raise ExtensionError("subgroup does not cover the requested top")
    return SubH(G, X, core, tails)


def enumerate_HH(G: Group, X, core=None, cores=None):
    """All subgroups H <= X with HN = X, each once (optionally with fixed N cap H)."""
    N = G.N
    if cores is None:
        cores = [core] if core is not None else N.subgroups()
    gens = G.top_generators(X)
    out = []
    seen = set()
    for M in cores:
        if len(M) == N.order:
            H = SubH(G, X, M, {i: 0 for i in X})
            if H.key not in seen:
                seen.add(H.key)
                out.append(H)
            continue
        reps = M.left_cosets()
        for choice in itertools.product(reps, repeat=len(gens)):
            lifts = [G.elem(g, t) for g, t in zip(gens, choice)]
            els = G.closure(lifts + list(M.gens))
            if len(els) != len(X) * len(M):
                continue
            H = subgroup_from_elements(G, X, els)
            if H.core != M or H.key in seen:
                continue
            seen.add(H.key)
            out.append(H)
    return out
