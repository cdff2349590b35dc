"""Degree-one characters, (subgroup, character) pairs and the predicates on them.

An irreducible character theta of N is handled through a pair (M, chi) with
M <= N and chi in Lin(M) such that theta = Ind_M^N chi.  All character values
are residues mod W (W = exponent of G), standing for exp(2 pi i v / W); an
array entry -1 means "outside the domain".
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .extension import Group, SubH, enumerate_HH
from .modlin import kernel_mod, span
from .pcgroup import SubN

OUT = -1


# -- homomorphisms into Z/W -------------------------------------------------


def homs_to_cyclic(elements, right_mul, gens, W):
    """All homomorphisms from the group on ``elements`` to Z/W.

    ``right_mul(xs, g)`` multiplies an array of elements by the generator g.
    Returns an array of shape (#homs, #elements) of values mod W, rows sorted.
    """
    elements = np.asarray(elements, dtype=np.int64)
    n, k = len(elements), len(gens)
    if k == 0:
        return np.zeros((1, n), dtype=np.int64)
    # elements[0] must be the identity
    pos = np.full(int(elements.max()) + 1, -1, dtype=np.int64)
    pos[elements] = np.arange(n)
    words = np.zeros((n, k), dtype=np.int64)
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    frontier = np.array([0])
    while len(frontier):
        nxt = []
        for gi, g in enumerate(gens):
            idx = pos[right_mul(elements[frontier], g)]
            new = ~seen[idx]
            if new.any():
                # keep the first occurrence of each new element
                cand, first = np.unique(idx[new], return_index=True)
                src = frontier[new][first]
                words[cand] = words[src]
                words[cand, gi] += 1
                seen[cand] = True
                nxt.append(cand)
        frontier = np.concatenate(nxt) if nxt else np.array([], dtype=np.int64)
    if not seen.all():
        raise ValueError("generators do not generate the group")
    rows = []
    eye = np.eye(k, dtype=np.int64)
    allidx = np.arange(n)
    for gi, g in enumerate(gens):
        idx = pos[right_mul(elements, g)]
        if (idx < 0).any():
            raise ValueError("elements are not closed under the generators")
        rows.append(words[allidx] + eye[gi] - words[idx])
    rel = np.unique(np.concatenate(rows) % W, axis=0)
    rel = rel[rel.any(axis=1)]
    if len(rel):
        kern = kernel_mod(rel, W)
        sols = span(kern, W, dim=k)
    else:
        sols = span([eye[i] for i in range(k)], W, dim=k)
    sols = np.array(sols, dtype=np.int64).reshape(-1, k)
    vals = (sols @ words.T) % W
    order = np.lexsort(vals.T[::-1])
    return vals[order]


# -- data types ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Pair:
    """theta = Ind_M^N chi; ``chi`` is indexed by elements of N."""

    M: SubN
    chi: np.ndarray

    @cached_property
    def degree(self):
        return self.M.N.order // self.M.order

    @cached_property
    def key(self):
        return self.M.key + self.chi.tobytes()

    def values_on(self, els):
        return self.chi[np.asarray(els)]


@dataclass(eq=False)
class PairAt:
    """A pair (H, chi) with HN = X, chi in Lin(N cap H) invariant under H."""

    H: SubH
    chi: np.ndarray

    @property
    def M(self):
        return self.H.core

    @property
    def top(self):
        return self.H.top

    @property
    def degree(self):
        return self.M.N.order // self.M.order

    def as_pair(self):
        return Pair(self.M, self.chi)


@dataclass(eq=False)
class GlobalLinChar:
    """A degree-one character of G; values indexed by elements of G."""

    values: np.ndarray
    index: int = 0

    def tau(self, n_order):
        return self.values[:n_order]

    def sigma(self, n_order, m):
        return self.values[np.arange(m) * n_order]


@dataclass
class TwistClass:
    rep: int                     # index of the representative in the irr list
    members: list                # indices of the member characters of N
    K: tuple
    L: tuple
    extra: dict = field(default_factory=dict)


# -- the main context ------------------------------------------------------


class Characters:
    """Character-theoretic data of N inside G."""

    def __init__(self, G: Group):
        self.G = G
        self.N = G.N
        self.W = G.exponent
        self._lin = {}

    # degree-one characters

    def lin_chars(self, M: SubN):
        """All degree-one characters of M as arrays over N (-1 off M)."""
        if M.key in self._lin:
            return self._lin[M.key]
        N = self.N
        els = np.array(M.elems, dtype=np.int64)
        gens = list(M.basis)
        vals = homs_to_cyclic(els, lambda xs, g: N.table[xs, g], gens, self.W)
        out = []
        for row in vals:
            a = np.full(N.order, OUT, dtype=np.int64)
            a[els] = row
            out.append(a)
        self._lin[M.key] = out
        return out

    @cached_property
    def lin_G(self):
        """Lin(G) as GlobalLinChar objects in canonical order."""
        G = self.G
        gens = [G.elem(i) for i in G.top_generators(tuple(range(G.m)))]
        gens += [G.elem(0, self.N.gen(i)) for i in range(self.N.d)]
        vals = homs_to_cyclic(np.arange(G.order), lambda xs, g: G.mul_many(xs, np.full_like(xs, g)),
                              gens, self.W)
        return [GlobalLinChar(v, i) for i, v in enumerate(vals)]

    @cached_property
    def restrictions(self):
        """Distinct restrictions Lin(G)|_N, each with the first psi giving it."""
        seen = {}
        for psi in self.lin_G:
            t = psi.tau(self.N.order)
            k = t.tobytes()
            if k not in seen:
                seen[k] = (t, psi.index)
        return list(seen.values())

    @cached_property
    def _restriction_keys(self):
        return {t.tobytes(): i for t, i in self.restrictions}

    def lin_quotient(self, X):
        """Lin(X/N) for a top subgroup X, as value arrays over X's positions."""
        G = self.G
        X = tuple(X)
        gens = G.top_generators(X)
        return homs_to_cyclic(np.array(X), lambda xs, g: G.gamma[xs, g], gens, self.W)

    # the centre and subgroups

    @cached_property
    def center(self):
        N = self.N
        t = N.table
        mask = np.all(t == t.T, axis=1)
        return SubN(N, mask)

    @cached_property
    def inducing_subgroups(self):
        """Subgroups of N containing Z(N); every theta is induced from one."""
        return self.N.subgroups(containing=self.center)

    # predicates

    def _coset_reps(self, M):
        return np.array(M.left_cosets(), dtype=np.int64)

    def induces_irreducibly(self, pair: Pair):
        """Mackey: for every g outside M, chi and its g-conjugate differ on M cap gMg^-1."""
        M, chi = pair.M, pair.chi
        if M.order == self.N.order:
            return True
        N = self.N
        t, inv = N.table, N.inv
        reps = self._coset_reps(M)[1:]
        x = np.array(M.elems)
        # y = g^-1 x g
        Y = t[t[inv[reps][:, None], x[None, :]], reps[:, None]]
        inside = M.mask[Y]
        differ = inside & (chi[Y] != chi[x][None, :])
        return bool(differ.any(axis=1).all())

    def induced_equal(self, p1: Pair, p2: Pair):
        """Ind chi_1 = Ind chi_2 iff chi_2 and some N-conjugate of chi_1 agree
        on the intersection of their domains."""
        if p1.degree != p2.degree:
            return False
        if p1.M.order == self.N.order:
            return bool(np.array_equal(p1.chi, p2.chi))
        z = np.array(self.center.elems)
        if not np.array_equal(p1.chi[z], p2.chi[z]):
            return False
        N = self.N
        t, inv = N.table, N.inv
        reps = self._coset_reps(p1.M)
        x = np.array(p2.M.elems)
        Y = t[t[inv[reps][:, None], x[None, :]], reps[:, None]]
        inside = p1.M.mask[Y]
        agree = ~inside | (p1.chi[Y] == p2.chi[x][None, :])
        return bool(agree.all(axis=1).any())

    def conjugate(self, pair: Pair, i):
        """The pair of y_i theta y_i^-1, i.e. x -> theta(y_i^-1 x y_i)."""
        G = self.G
        M2 = pair.M.conjugate(G.phi[i])
        chi2 = pair.chi[G.phi_inv[i]]
        return Pair(M2, chi2)

    def twist(self, pair: Pair, tau):
        chi = pair.chi.copy()
        m = pair.M.mask
        chi[m] = (chi[m] + tau[m]) % self.W
        return Pair(pair.M, chi)

    def twist_witness(self, p1: Pair, p2: Pair):
        """Index of the first psi in Lin(G) with Ind chi_1 = (Ind chi_2) psi|_N."""
        if p1.degree != p2.degree:
            return None
        if p1.M.order == self.N.order:
            d = (p1.chi - p2.chi) % self.W
            return self._restriction_keys.get(d.tobytes())
        z = np.array(self.center.elems)
        for tau, idx in self.restrictions:
            if not np.array_equal(p1.chi[z], (p2.chi[z] + tau[z]) % self.W):
                continue
            if self.induced_equal(p1, self.twist(p2, tau)):
                return idx
        return None

    def is_invariant(self, chi, M: SubN, acting):
        """chi o conj = chi for every acting element of G (given as G elements)."""
        G = self.G
        x = np.array(M.elems)
        for g in acting:
            gi = G.inv(int(g))
            # g^-1 x g for x in M
            y = np.array([G.mul(G.mul(gi, int(v)), int(g)) for v in x])
            if not M.mask[y].all() or not np.array_equal(chi[y], chi[x]):
                return False
        return True

    def stabilizer_K(self, pair: Pair):
        return tuple(i for i in range(self.G.m) if self.induced_equal(self.conjugate(pair, i), pair))

    def stabilizer_L(self, pair: Pair):
        return tuple(i for i in range(self.G.m)
                     if self.twist_witness(self.conjugate(pair, i), pair) is not None)

    # Irr(N)

    @cached_property
    def irr_N(self):
        """One pair per irreducible character of N, in canonical order."""
        buckets = {}
        out = []
        z = np.array(self.center.elems)
        for M in self.inducing_subgroups:
            for chi in self.lin_chars(M):
                pair = Pair(M, chi)
                if not self.induces_irreducibly(pair):
                    continue
                b = (pair.degree, chi[z].tobytes())
                bucket = buckets.setdefault(b, [])
                if any(self.induced_equal(out[j], pair) for j in bucket):
                    continue
                bucket.append(len(out))
                out.append(pair)
        return out

    @cached_property
    def _irr_buckets(self):
        z = np.array(self.center.elems)
        b = {}
        for i, pr in enumerate(self.irr_N):
            b.setdefault((pr.degree, pr.chi[z].tobytes()), []).append(i)
        return b

    def locate(self, pair: Pair):
        """Index in irr_N of the character induced by ``pair``."""
        z = np.array(self.center.elems)
        for j in self._irr_buckets.get((pair.degree, pair.chi[z].tobytes()), []):
            if self.induced_equal(self.irr_N[j], pair):
                return j
        raise KeyError("pair does not induce a listed irreducible character")

    @cached_property
    def stabilizers(self):
        """(K, L) for every element of irr_N, via the action on indices."""
        m = self.G.m
        conj = [[self.locate(self.conjugate(pr, i)) for i in range(m)] for pr in self.irr_N]
        twist_of = self._twist_action
        out = []
        for a, row in enumerate(conj):
            K = tuple(i for i in range(m) if row[i] == a)
            cls = twist_of[a]
            L = tuple(i for i in range(m) if twist_of[row[i]] == cls)
            out.append((K, L))
        self._conj_action = conj
        return out

    @cached_property
    def _twist_action(self):
        """Twist-class label of each element of irr_N (union-find over Lin(G)|_N)."""
        n = len(self.irr_N)
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for a, pr in enumerate(self.irr_N):
            for tau, _ in self.restrictions:
                b = self.locate(self.twist(pr, tau))
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        return [find(a) for a in range(n)]

    def twist_classes(self):
        """Partition of irr_N into G-twist classes (representative = least index)."""
        groups = {}
        for a, lab in enumerate(self._twist_action):
            groups.setdefault(lab, []).append(a)
        out = []
        for lab in sorted(groups):
            K, L = self.stabilizers[lab]
            out.append(TwistClass(lab, groups[lab], K, L))
        return out

    # pairs over a top subgroup

    def pair_at(self, X, pair: Pair, first=True, rng=None):
        """A pair (H, chi) with HN = X, chi H-invariant and Ind chi = theta.

        Candidates are searched in canonical order; with ``rng`` a random
        admissible candidate is returned instead of the first one.
        """
        G, N = self.G, self.N
        X = tuple(X)
        if pair.M.order == N.order:
            H = SubH(G, X, N.whole, {i: 0 for i in X})
            return PairAt(H, pair.chi)
        cores = [M for M in self.inducing_subgroups if M.order == pair.M.order]
        found = []
        z = np.array(self.center.elems)
        for H in enumerate_HH(G, X, cores=cores):
            M = H.core
            acting = [G.elem(i, H.tails[i]) for i in G.top_generators(X)]
            for chi in self.lin_chars(M):
                if not np.array_equal(chi[z], pair.chi[z]):
                    continue
                cand = Pair(M, chi)
                if not self.induced_equal(cand, pair):
                    continue
                if not self.is_invariant(chi, M, acting):
                    continue
                pa = PairAt(H, chi)
                if rng is None:
                    return pa
                found.append(pa)
        if not found:
            raise LookupError(f"no pair over {X} induces the given character")
        return found[rng.randrange(len(found))]

    def degree_exponent(self, pair):
        """f with p^f = |N : N cap H|."""
        idx = self.N.order // pair.M.order
        f = 0
        while idx > 1:
            idx //= self.N.p
            f += 1
        return f
