"""Twist data of a character theta of N: the group Gamma, the function mu and
the class T in H^1(L/N, F_K / Gamma).

Everything is stored additively in (1/E)Z/Z, E = root_modulus(G).  For a top
index g in L the function mu(g) on K/N is defined by

    theta^(g^-1 x g) = theta^(x) psi_g(x) mu(g)(xN),

with psi_g a degree-one character of G such that (g-conjugate of theta) =
theta psi_g|_N.  Functions on K/N are rows indexed by positions in K.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .cohomology import TopGroup, class_of_pair
from .cyclotomic import reduce_rows
from .modlin import solve_mod, span
from .projective import act, nonvanishing, projective_irreducibles, ratio_exponent, strong_extension_table


class TwistError(ArithmeticError):
    pass


@dataclass(frozen=True)
class GammaSubgroup:
    """A subgroup of Lin(K/N), as value rows over the positions of K."""

    K: tuple
    mod: int
    rows: frozenset

    def __contains__(self, nu):
        return tuple(int(v) % self.mod for v in nu) in self.rows

    def __len__(self):
        return len(self.rows)

    def restrict(self, sub):
        pos = {x: a for a, x in enumerate(self.K)}
        idx = [pos[x] for x in sub]
        return GammaSubgroup(tuple(sub), self.mod, frozenset(tuple(r[i] for i in idx) for r in self.rows))

    def primary_part(self, q):
        """{nu_(q) : nu in Gamma}."""
        e = _idempotent_for(q, self.mod)
        return GammaSubgroup(self.K, self.mod, frozenset(tuple((v * e) % self.mod for v in r) for r in self.rows))

    def generators(self):
        """A small generating set (greedy)."""
        gens = []
        cur = {tuple([0] * len(self.K))}
        for r in sorted(self.rows):
            if r not in cur:
                gens.append(r)
                cur = set(span(gens, self.mod, dim=len(self.K)))
            if len(cur) == len(self.rows):
                break
        return gens


def _idempotent_for(q, mod):
    from .extension import _factorize
    qe = q ** _factorize(mod).get(q, 0)
    rest = mod // qe
    if qe == 1:
        return 0
    if rest == 1:
        return 1
    return (rest * pow(rest, -1, qe)) % mod


@dataclass
class TClass:
    """Handle of T_{L,K,Gamma}: mu rows on generators of L plus Gamma."""

    L: tuple
    K: tuple
    gamma: GammaSubgroup
    mu: dict            # top index g in L -> row over positions of K (mod E)
    kappa: np.ndarray   # the group's kappa table (top indices)
    mod: int

    def restrict(self, L=None, K=None, gamma=None):
        """Restriction to smaller L and/or K (mu rows restricted to K's cosets)."""
        L = tuple(L or self.L)
        K = tuple(K or self.K)
        pos = {x: a for a, x in enumerate(self.K)}
        idx = [pos[x] for x in K]
        mu = {g: row[idx] for g, row in self.mu.items() if g in set(L)}
        gam = gamma if gamma is not None else self.gamma.restrict(K)
        return TClass(L, K, gam, mu, self.kappa, self.mod)


def _gens_of(G, L):
    return G.top_generators(L)


def t_class_equal(t1: TClass, t2: TClass) -> bool:
    """[mu1] = [mu2] in H^1(L/N, F_K/Gamma)?

    Solves mu1(g) - mu2(g) = g.eta - eta + nu_g over generators g of L/N,
    with eta in F_K and nu_g in Gamma (g.eta(x) = eta(g^-1 x g)).
    """
    if t1.L != t2.L or t1.K != t2.K or t1.gamma.rows != t2.gamma.rows:
        raise ValueError("classes live in different cohomology groups")
    return _is_twisted_coboundary(t1, {g: (t1.mu[g] - t2.mu[g]) for g in t1.mu})


def t_is_trivial(t: TClass) -> bool:
    return _is_twisted_coboundary(t, t.mu)


def _is_twisted_coboundary(t: TClass, diff):
    gens = sorted(diff)
    K = t.K
    r = len(K)
    pos = {x: a for a, x in enumerate(K)}
    ggens = t.gamma.generators()
    E = t.mod
    ncols = r + len(gens) * len(ggens)
    rows, rhs = [], []
    for gi, g in enumerate(gens):
        for a, x in enumerate(K):
            row = np.zeros(ncols, dtype=np.int64)
            row[pos[int(t.kappa[g, x])]] += 1
            row[a] -= 1
            for k, nu in enumerate(ggens):
                row[r + gi * len(ggens) + k] = nu[a]
            rows.append(row)
            rhs.append(int(diff[g][a]))
    if not rows:
        return True
    x, _ = solve_mod(np.array(rows), np.array(rhs), E)
    return x is not None


class TwistData:
    """mu, Gamma and the projective characters for one theta (index into irr_N)."""

    def __init__(self, cl, a, K=None, L=None, pa=None, rng=None, omega=None):
        self.cl = cl
        self.G = cl.G
        self.a = a
        self.K = tuple(K or cl.K_of(a))
        self.L = tuple(L or cl.L_of(a))
        self.rng = rng
        self.pa = pa if pa is not None else cl.pair_at(self.K, a, rng=rng)
        self.W, self.E = cl.W, cl.E
        self.Q = TopGroup(self.G, self.K)
        self.table = strong_extension_table(self.pa, self.W, self.E)
        if omega is not None:
            # theta^ omega is another strong extension of theta
            s = self.G.N.order
            shift = np.repeat(np.asarray(omega, dtype=np.int64) % self.E, s)
            self.table = act(self.table, np.arange(len(self.table)), shift, self.E)
        self.omega = omega
        self.lookup = self.Q.lookup

    @property
    def theta(self):
        return self.cl.irr[self.a]

    # -- elements of K and their table rows -----------------------------------

    def row_of(self, g):
        i, n = self.G.split(int(g))
        return int(self.lookup[i]) * self.G.N.order + n

    @cached_property
    def _nv(self):
        s = self.G.N.order
        return nonvanishing(self.table, self.E).reshape(self.Q.r, s)

    def base_point(self, pos):
        """An element x in the coset of K at ``pos`` with theta^(x) != 0."""
        hits = np.flatnonzero(self._nv[pos])
        if not len(hits):
            raise TwistError("strong extension vanishes on a whole coset")
        return self.G.elem(self.K[pos], int(hits[0]))

    # -- psi witnesses ---------------------------------------------------------

    def witnesses(self, i):
        """All psi in Lin(G) with (y_i-conjugate of theta) = theta psi|_N, as indices."""
        ch = self.cl.chars
        target = ch.conjugate(self.theta, i)
        ok = set()
        for tau, _ in ch.restrictions:
            if ch.induced_equal(target, ch.twist(self.theta, tau)):
                ok.add(tau.tobytes())
        s = self.G.N.order
        return [psi.index for psi in ch.lin_G if psi.values[:s].tobytes() in ok]

    def witness(self, i):
        if self.rng is None:
            idx = self.cl.chars.twist_witness(self.cl.chars.conjugate(self.theta, i), self.theta)
            if idx is None:
                raise TwistError(f"top index {i} is not in the twist stabiliser")
            return idx
        ws = self.witnesses(i)
        return ws[self.rng.randrange(len(ws))]

    # -- mu -------------------------------------------------------------------

    def mu_row(self, i, psi_index=None, check=False):
        """mu(y_i N) as a row over the positions of K."""
        G, E = self.G, self.E
        psi = self.cl.chars.lin_G[self.witness(i) if psi_index is None else psi_index].values
        f = E // self.W
        g = G.elem(i)
        gi = G.inv(g)
        out = np.zeros(self.Q.r, dtype=np.int64)
        for pos in range(self.Q.r):
            points = [self.base_point(pos)]
            if check:
                points = [G.elem(self.K[pos], int(n)) for n in np.flatnonzero(self._nv[pos])]
            vals = set()
            for x in points:
                y = G.mul(G.mul(gi, x), g)
                k = ratio_exponent(self.table[self.row_of(y)], self.table[self.row_of(x)], E)
                if k is None:
                    raise TwistError("conjugate strong extension is not a multiple at a coset point")
                vals.add((k - int(psi[x]) * f) % E)
            if len(vals) != 1:
                raise TwistError("mu is not constant on a coset of N")
            out[pos] = vals.pop()
        return out

    def mu_rows(self, gens=None, check=False):
        gens = _gens_of(self.G, self.L) if gens is None else gens
        return {int(i): self.mu_row(int(i), check=check) for i in gens}

    # -- Gamma ------------------------------------------------------------------

    def gamma_chars(self):
        """Indices of eps in Lin(G) with theta eps|_N = theta."""
        ch = self.cl.chars
        ok = set()
        for tau, _ in ch.restrictions:
            if ch.induced_equal(ch.twist(self.theta, tau), self.theta):
                ok.add(tau.tobytes())
        s = self.G.N.order
        return [psi.index for psi in ch.lin_G if psi.values[:s].tobytes() in ok]

    def nu_of(self, eps_index):
        """The nu in Lin(K/N) with theta^ eps|_K = theta^ nu."""
        eps = self.cl.chars.lin_G[eps_index].values
        f = self.E // self.W
        return np.array([(int(eps[self.base_point(p)]) * f) % self.E for p in range(self.Q.r)],
                        dtype=np.int64)

    @cached_property
    def gamma(self) -> GammaSubgroup:
        rows = {tuple(int(v) for v in self.nu_of(e)) for e in self.gamma_chars()}
        return GammaSubgroup(self.K, self.E, frozenset(rows))

    def gamma_member(self, nu):
        """Predicate form: some eps with theta eps|_N = theta and an n in N such
        that chi^ eps and the n-conjugate of chi^ nu agree where both are defined
        on H (Mackey with conjugators from N)."""
        G, E, f = self.G, self.E, self.E // self.W
        H = self.pa.H
        N = G.N
        t, ninv = N.table, N.inv
        chi = self.pa.chi
        M = H.core
        els = []
        for i in H.top:
            for m in M.elems:
                els.append((i, int(t[H.tails[i], m]), int(m)))
        posK = {x: a for a, x in enumerate(self.K)}
        nu = np.asarray(nu) % E
        for e in self.gamma_chars():
            eps = self.cl.chars.lin_G[e].values
            lhs = np.array([(int(chi[m]) * f + int(eps[G.elem(i, n)]) * f) % E for i, n, m in els])
            for c in range(N.order):
                ok = True
                for (i, n, m), lv in zip(els, lhs):
                    # c^-1 (y_i n) c = y_i phi_i^-1(c^-1) n c
                    n2 = int(t[t[G.phi_inv[i][ninv[c]], n], c])
                    m2 = int(t[ninv[H.tails[i]], n2])
                    if not M.mask[m2]:
                        continue
                    if (int(chi[m2]) * f + int(nu[posK[i]])) % E != lv:
                        ok = False
                        break
                if ok:
                    return True
        return False

    # -- projective characters and the twisted count -------------------------------

    @cached_property
    def alpha(self):
        """Factor set of the strong extension in use."""
        a = class_of_pair(self.pa, self.W)
        if self.omega is None:
            return a
        from .cohomology import coboundary_of
        # rho' = omega rho has factor set alpha + omega(x) + omega(y) - omega(xy)
        return a + coboundary_of(self.Q, self.omega, self.E)

    @cached_property
    def pirr(self):
        return projective_irreducibles(self.Q, -self.alpha, self.E)

    def t_class(self, gens=None, check=False) -> TClass:
        return TClass(self.L, self.K, self.gamma, self.mu_rows(gens, check), self.G.kappa, self.E)

    def orbit_degrees(self):
        """pi(1) for one pi per orbit of PIrr_{-alpha}(K/N) under
        pi -> mu(g) (g-conjugate of pi) and pi -> nu pi (nu in Gamma)."""
        E = self.E
        chars = self.pirr
        keys = [pc.canon(E) for pc in chars]
        index = {k: j for j, k in enumerate(keys)}
        r = self.Q.r
        ident = np.arange(r)
        moves = [(ident, np.array(nu)) for nu in self.gamma.generators()]
        kap = self.G.kappa
        for i, mu in self.mu_rows().items():
            perm = np.array([int(self.lookup[kap[i, x]]) for x in self.K])
            moves.append((perm, mu))
        parent = list(range(len(chars)))

        def find(u):
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            return u

        for j, pc in enumerate(chars):
            for perm, shift in moves:
                img = act(pc.counts, perm, shift, E)
                k = reduce_rows(img, E).tobytes()
                if k not in index:
                    raise TwistError("twisting action leaves the projective characters")
                u, v = find(j), find(index[k])
                if u != v:
                    parent[max(u, v)] = min(u, v)
        reps = sorted({find(j) for j in range(len(chars))})
        return [chars[j].degree for j in reps]

    # -- Sylow restrictions ------------------------------------------------------

    def gamma_table_member(self, nu):
        """Oracle form of Gamma membership: theta^ eps = theta^ nu as full tables."""
        E, f = self.E, self.E // self.W
        s = self.G.N.order
        nu = np.asarray(nu, dtype=np.int64) % E
        target = reduce_rows(act(self.table, np.arange(len(self.table)), np.repeat(nu, s), E), E)
        elems = np.array([self.G.elem(i, n) for i in self.K for n in range(s)])
        for e in self.gamma_chars():
            eps = self.cl.chars.lin_G[e].values[elems] * f
            if np.array_equal(reduce_rows(act(self.table, np.arange(len(self.table)), eps, E), E), target):
                return True
        return False

    def t_sylow(self, q=None):
        """T_{L_q, K_q', Gamma'} with L_q a Sylow q-part of L; for q = p the
        coefficients are restricted to K_p = K cap L_p, otherwise K is kept."""
        G = self.G
        q = G.p if q is None else q
        Lq = G.sylow_part(self.L, q)
        Kq = tuple(sorted(set(self.K) & set(Lq))) if q == G.p else self.K
        rows = self.mu_rows(gens=G.top_generators(Lq))
        pos = {x: a for a, x in enumerate(self.K)}
        idx = [pos[x] for x in Kq]
        mu = {g: r[idx] for g, r in rows.items()}
        return TClass(Lq, Kq, self.gamma.restrict(Kq), mu, G.kappa, self.E)


def gamma_of(cl, a, X) -> GammaSubgroup:
    """Gamma_{X, theta~} for a top subgroup X fixing theta."""
    return TwistData(cl, a, K=X, L=X).gamma


def lin_quotient_rows(cl, K):
    """Lin(K/N) as rows mod E over the positions of K."""
    f = cl.E // cl.W
    return [np.asarray(v, dtype=np.int64) * f % cl.E for v in cl.chars.lin_quotient(K)]


# -- element-level predicates -----------------------------------------------------


def predicate_A(H, i, j, n, n2):
    """y_j n2 lies in the (y_i n)-conjugate of H."""
    G = H.G
    g = G.elem(i, n)
    x = G.elem(j, n2)
    return H.contains(G.mul(G.mul(G.inv(g), x), g))


def chi_hat(td: TwistData, u):
    """chi^(y_i t_i m) = chi(m) on H, as an exponent mod E."""
    G = td.G
    H = td.pa.H
    i, n = G.split(int(u))
    t, ninv = G.N.table, G.N.inv
    m = int(t[ninv[H.tails[i]], n])
    if not H.core.mask[m]:
        raise ValueError("element is not in H")
    return int(td.pa.chi[m]) * (td.E // td.W) % td.E


def predicate_B(td: TwistData, i, psi_index, mu):
    """Does g-conjugate of theta^ equal theta^ psi|_K mu (g = y_i)?

    Mackey with conjugators from N: some n in N such that for every h in the
    g-conjugate of H with n^-1 h n in H,
        chi^(g^-1 h g) = chi^(n^-1 h n) + psi(h) + mu(hN).
    """
    G, E = td.G, td.E
    H = td.pa.H
    f = E // td.W
    psi = td.cl.chars.lin_G[psi_index].values
    g = G.elem(i)
    gi = G.inv(g)
    mu = np.asarray(mu) % E
    rows = []
    for x in H.elements:
        h = G.mul(G.mul(g, int(x)), gi)
        top = G.split(h)[0]
        rows.append((h, (chi_hat(td, x) - int(psi[h]) * f - int(mu[td.lookup[top]])) % E))
    for c in range(G.N.order):
        ci = G.inv(c)
        ok = True
        for h, want in rows:
            u = G.mul(G.mul(ci, h), c)
            if H.contains(u) and chi_hat(td, u) != want:
                ok = False
                break
        if ok:
            return True
    return False
