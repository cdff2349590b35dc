"""Finite p-groups from refined polycyclic presentations.

Elements of N are stored as integers: the exponent vector (e_1, ..., e_d)
with 0 <= e_i < p is read as a base-p numeral with e_1 most significant, so
integer order agrees with lexicographic order on exponent vectors.
"""
from __future__ import annotations

import math
import random
from functools import cached_property

import numpy as np

INF = math.inf


class PresentationError(ValueError):
    pass


class ResourceError(RuntimeError):
    pass


def _letters(vec):
    out = []
    for g, e in enumerate(vec):
        out.extend([g] * e)
    return out


class PcGroup:
    """A p-group <n_1..n_d | n_i^p = w_i, [n_j, n_i] = w_ij>.

    ``powers[i]`` is the exponent vector of n_i^p and ``commutators[(j, i)]``
    (i < j) the exponent vector of [n_j, n_i] = n_j^-1 n_i^-1 n_j n_i.  Both
    words may only involve generators with index > i.  Missing commutators
    are trivial.
    """

    def __init__(self, p, d, powers, commutators=None, check=True):
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise PresentationError(f"{p} is not prime")
        self.p = p
        self.d = d
        self.order = p ** d
        self.powers = [tuple(v) for v in powers]
        commutators = dict(commutators or {})
        self.commutators = {}
        if len(self.powers) != d:
            raise PresentationError("need one power relation per generator")
        for i, v in enumerate(self.powers):
            self._check_word(v, i, f"power relation of n_{i + 1}")
        for (j, i), v in commutators.items():
            if not 0 <= i < j < d:
                raise PresentationError(f"commutator index ({j + 1},{i + 1}) out of range")
            self._check_word(v, i, f"commutator [n_{j + 1}, n_{i + 1}]")
            if any(v):
                self.commutators[(j, i)] = tuple(v)
        self._conj = {}
        self._weights = [p ** (d - 1 - i) for i in range(d)]
        self._build_tables()
        if check:
            self.check_associativity()

    def _check_word(self, v, i, what):
        if len(v) != self.d or any(not 0 <= e < self.p for e in v):
            raise PresentationError(f"{what}: bad exponent vector {v}")
        if any(v[: i + 1]):
            raise PresentationError(f"{what}: word must use generators after n_{i + 1}")

    # -- encoding -----------------------------------------------------------

    def index(self, vec):
        return sum(e * w for e, w in zip(vec, self._weights))

    def vector(self, x):
        out = []
        for w in self._weights:
            e, x = divmod(x, w)
            out.append(e)
        return tuple(out)

    def gen(self, i):
        return self._weights[i]

    # -- collection ---------------------------------------------------------

    def _conj_word(self, j, i):
        # normal form of n_i^-1 n_j n_i = n_j [n_j, n_i], as a letter list
        key = (j, i)
        if key not in self._conj:
            c = [0] * self.d
            self._collect_into(c, [j] + _letters(self.commutators.get(key, (0,) * self.d)))
            self._conj[key] = _letters(c)
        return self._conj[key]

    def _collect_into(self, c, letters):
        p, d = self.p, self.d
        stack = list(reversed(letters))
        while stack:
            g = stack.pop()
            tail = [(j, c[j]) for j in range(g + 1, d) if c[j]]
            for j, _ in tail:
                c[j] = 0
            c[g] += 1
            push = []
            if c[g] == p:
                c[g] = 0
                push.extend(_letters(self.powers[g]))
            for j, e in tail:
                push.extend(self._conj_word(j, g) * e)
            stack.extend(reversed(push))
        return c

    def _inverse_letters(self, g):
        # n_g^-1 = n_g^(p-1) (n_g^p)^-1, the second factor lives strictly below g
        w = self.powers[g]
        inv_w = []
        for h in reversed(_letters(w)):
            inv_w.extend(self._inverse_letters(h))
        return [g] * (self.p - 1) + inv_w

    def collect(self, word):
        """Normal form (as an element index) of a word of signed generators.

        ``word`` is a sequence of nonzero integers: +k means n_k, -k means
        n_k^-1 (generators numbered from 1).
        """
        letters = []
        for s in word:
            g = abs(s) - 1
            if not 0 <= g < self.d:
                raise PresentationError(f"no generator {s}")
            letters.extend([g] if s > 0 else self._inverse_letters(g))
        return self.index(self._collect_into([0] * self.d, letters))

    # -- tables -------------------------------------------------------------

    def _build_tables(self):
        size = self.order
        if size > 3 ** 9:
            raise ResourceError(f"|N| = {size} too large for tabulated arithmetic")
        right = np.empty((size, self.d), dtype=np.int64)
        for x in range(size):
            base = list(self.vector(x))
            for g in range(self.d):
                right[x, g] = self.index(self._collect_into(list(base), [g]))
        table = np.empty((size, size), dtype=np.int64)
        ident = np.arange(size)
        for y in range(size):
            arr = ident
            for g, e in enumerate(self.vector(y)):
                for _ in range(e):
                    arr = right[arr, g]
            table[:, y] = arr
        self.table = table
        self.inv = np.argmax(table == 0, axis=1)

    def mul(self, x, y):
        return int(self.table[x, y])

    def power(self, x, k):
        r = 0
        for _ in range(k):
            r = int(self.table[r, x])
        return r

    def comm(self, x, y):
        t, inv = self.table, self.inv
        return int(t[t[inv[x], inv[y]], t[x, y]])

    def check_associativity(self, samples=10_000, seed=0):
        t = self.table
        n = self.order
        if n <= 3 ** 5:
            for z in range(n):
                if not np.array_equal(t[t, z], t[:, t[:, z]]):
                    raise PresentationError("presentation is inconsistent: associativity fails")
        else:
            rng = np.random.default_rng(seed)
            a, b, c = rng.integers(0, n, size=(3, samples))
            if not np.array_equal(t[t[a, b], c], t[a, t[b, c]]):
                raise PresentationError("presentation is inconsistent: associativity fails")
        if len(set(self.inv.tolist())) != n:
            raise PresentationError("presentation is inconsistent: not a group")

    def element_order(self, x):
        k, y = 1, x
        while y != 0:
            y = int(self.table[y, x])
            k += 1
        return k

    @cached_property
    def exponent(self):
        return max(self.element_order(x) for x in range(self.order))

    # -- subgroups ----------------------------------------------------------

    def closure(self, gens, base=None):
        """Subgroup generated by ``gens`` together with the subgroup ``base``."""
        gens = [int(g) for g in gens if g]
        if base is not None:
            gens = list(base.gens) + gens
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        frontier = np.array([0])
        if gens:
            garr = np.array(gens)
            while len(frontier):
                nxt = np.unique(self.table[np.ix_(frontier, garr)].ravel())
                nxt = nxt[~mask[nxt]]
                mask[nxt] = True
                frontier = nxt
        return SubN(self, mask, gens=tuple(gens))

    @cached_property
    def whole(self):
        return SubN(self, np.ones(self.order, dtype=bool), gens=tuple(self.gen(i) for i in range(self.d)))

    @cached_property
    def trivial(self):
        m = np.zeros(self.order, dtype=bool)
        m[0] = True
        return SubN(self, m, gens=())

    @cached_property
    def lower_p_series(self):
        """[N_1, N_2, ..., 1] with N_{i+1} = N_i^p [N_i, N]."""
        t, inv = self.table, self.inv
        series = [self.whole]
        allx = np.arange(self.order)
        while len(series[-1].elems) > 1:
            cur = np.array(series[-1].elems)
            pw = cur.copy()
            for _ in range(self.p - 1):
                pw = t[pw, cur]
            xi, yi = np.meshgrid(cur, allx, indexing="ij")
            comms = t[t[inv[xi], inv[yi]], t[xi, yi]].ravel()
            gens = np.unique(np.concatenate([pw, comms]))
            nxt = self.closure(gens)
            if len(nxt.elems) == len(series[-1].elems):
                raise PresentationError("lower p-series does not descend")
            series.append(nxt)
        return series

    @cached_property
    def _omega(self):
        w = np.zeros(self.order, dtype=np.int64)
        for i, layer in enumerate(self.lower_p_series):
            w[layer.mask] = i + 1
        return w

    def omega(self, x):
        """Index of the lower p-series layer containing x; infinity for 1."""
        return INF if x == 0 else int(self._omega[x])

    @cached_property
    def _layer_data(self):
        # per layer n: (basis elements, coordinate map on N_n)
        out = []
        series = self.lower_p_series
        p = self.p
        for n in range(len(series) - 1):
            top, below = series[n], series[n + 1]
            basis = []
            span = below
            for x in top.elems:
                if not span.mask[x]:
                    basis.append(x)
                    span = self.closure([x], base=span)
                    if len(span.elems) == len(top.elems):
                        break
            coords = {}
            k = len(basis)
            for cvec in np.ndindex(*([p] * k)):
                rep = 0
                for b, e in zip(basis, cvec):
                    for _ in range(e):
                        rep = int(self.table[rep, b])
                for z in below.elems:
                    coords[int(self.table[rep, z])] = tuple(int(e) for e in cvec)
            out.append((basis, coords))
        return out

    def layer_vector(self, x, n):
        """Coordinates of x N_{n+1} in the F_p-space N_n / N_{n+1} (n from 1)."""
        return self._layer_data[n - 1][1][x]

    def layer_dims(self):
        return [len(b) for b, _ in self._layer_data]

    def subgroups(self, index_bound=None, containing=None, limit=200_000):
        """All subgroups (optionally containing a given one), each once."""
        start = containing if containing is not None else self.trivial
        seen = {start.key: start}
        queue = [start]
        while queue:
            s = queue.pop()
            for x in range(self.order):
                if s.mask[x]:
                    continue
                t = self.closure([x], base=s)
                if t.key not in seen:
                    seen[t.key] = t
                    queue.append(t)
                    if len(seen) > limit:
                        raise ResourceError("too many subgroups")
        subs = sorted(seen.values(), key=lambda s: (-len(s.elems), s.elems))
        if index_bound is not None:
            subs = [s for s in subs if self.order // len(s.elems) <= self.p ** index_bound]
        return subs

    def random_element(self, rng):
        return rng.randrange(self.order)


class SubN:
    """Subgroup of a PcGroup, held as a membership mask."""

    def __init__(self, N, mask, gens=None):
        self.N = N
        self.mask = mask
        self._gens = gens
        self.elems = tuple(int(x) for x in np.flatnonzero(mask))
        self.key = mask.tobytes()

    def __len__(self):
        return len(self.elems)

    @property
    def gens(self):
        return self._gens if self._gens is not None else self.basis

    def __contains__(self, x):
        return bool(self.mask[x])

    def __eq__(self, other):
        return isinstance(other, SubN) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __le__(self, other):
        return bool(np.all(other.mask[self.mask]))

    def __repr__(self):
        return f"SubN(order={len(self.elems)})"

    @property
    def order(self):
        return len(self.elems)

    @cached_property
    def basis(self):
        return good_basis(self.N, self.elems, _closed=self)

    @cached_property
    def coords(self):
        """Exponents of each element in the good basis (unique, in [0, p))."""
        N = self.N
        out = {0: ()}
        items = [(0, ())]
        for h in reversed(self.basis):
            nxt = []
            for x, e in items:
                y = 0
                for k in range(N.p):
                    nxt.append((int(N.table[y, x]), (k,) + e))
                    y = int(N.table[y, h])
            items = nxt
        out = dict(items)
        if len(out) != len(self.elems):
            raise AssertionError("good basis does not parametrise the subgroup")
        return out

    def index_in(self, bigger=None):
        n = bigger.order if bigger is not None else self.N.order
        return n // self.order

    def intersect(self, other):
        return SubN(self.N, self.mask & other.mask)

    def conjugate(self, perm):
        """Image under an automorphism given as a permutation array."""
        m = np.zeros_like(self.mask)
        m[perm[np.array(self.elems)]] = True
        return SubN(self.N, m, gens=tuple(int(perm[g]) for g in self.gens))

    def left_cosets(self):
        """Sorted minimal representatives of the left cosets xS in N."""
        N = self.N
        seen = np.zeros(N.order, dtype=bool)
        reps = []
        els = np.array(self.elems)
        for x in range(N.order):
            if not seen[x]:
                reps.append(x)
                seen[N.table[x, els]] = True
        return reps


def good_basis(N, generators, _closed=None):
    """Good basis of the subgroup generated by ``generators``.

    Elements are taken layer by layer along the lower p-series; inside a layer
    the lexicographically smallest elements whose layer vectors are independent
    are chosen, until they span the layer image of the subgroup.
    """
    S = _closed if _closed is not None else N.closure(generators)
    basis = []
    nlayers = len(N.lower_p_series) - 1
    for n in range(1, nlayers + 1):
        rows = []
        for x in S.elems:
            if x == 0 or N.omega(x) != n:
                continue
            v = N.layer_vector(x, n)
            if _independent(rows, v, N.p):
                rows.append(v)
                basis.append(x)
    return tuple(basis)


def _rank(rows, p):
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] % p), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p)
        m[rank] = [(v * inv) % p for v in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c] % p:
                f = m[r][c]
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _independent(rows, v, p):
    return _rank(list(rows) + [v], p) == len(rows) + 1


def check_good_basis(N, basis, S):
    """Conditions (i) and (ii): weights nondecreasing, and in each layer n the
    basis elements of weight n give a basis of (N_n cap S) N_{n+1} / N_{n+1}."""
    ws = [N.omega(h) for h in basis]
    if ws != sorted(ws):
        return False
    nlayers = len(N.lower_p_series) - 1
    for n in range(1, nlayers + 1):
        mine = [N.layer_vector(h, n) for h in basis if N.omega(h) == n]
        full = [N.layer_vector(x, n) for x in S.elems if x and N.omega(x) == n]
        r_full = _rank(full, N.p) if full else 0
        if (_rank(mine, N.p) if mine else 0) != len(mine) or len(mine) != r_full:
            return False
    return True


def random_word(rng: random.Random, d, length):
    return [rng.choice([1, -1]) * rng.randint(1, d) for _ in range(length)]
