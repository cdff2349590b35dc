"""Verification suites: each returns a Report listing violations."""
from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field

import numpy as np

from . import oracle
from .cohomology import (Cocycle2, TopGroup, class_eq, class_of_pair, coboundary_of, h2_classes,
                         is_coboundary2, satisfies_class)
from .corpus import CORPUS, build, heisenberg_tower, random_transversal
from .cyclotomic import inner_product, reduce_rows
from .twisting import TwistData, gamma_of, lin_quotient_rows, t_class_equal, t_is_trivial
from .zeta import Clifford, assemble, assemble_twist, f_twist, rational_fit, stabilized, tower_series, twist_class_reps


@dataclass
class Report:
    name: str
    checked: int = 0
    violations: list = field(default_factory=list)
    seconds: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def check(self, cond, msg):
        self.checked += 1
        if not cond:
            self.violations.append(msg)

    def line(self):
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.checked} checks, {len(self.violations)} violations ({self.seconds:.1f}s)"


def _timed(fn):
    def run(*args, **kw):
        t = time.time()
        rep = fn(*args, **kw)
        rep.seconds = time.time() - t
        return rep
    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


def _corpus(corpus):
    return [(g, n, build(g, n)) for g, n in (corpus or CORPUS)]


# -- 1, 2: assembly ---------------------------------------------------------


@_timed
def verify_assembly(corpus=None):
    rep = Report("assembly")
    for g, n, G in _corpus(corpus):
        a, b = assemble(G), oracle.zeta_direct(G)
        rep.check(a == b, f"{g}/{n}: assembled {a} != direct {b}")
    return rep


@_timed
def verify_twist_assembly(corpus=None):
    rep = Report("twist assembly")
    for g, n, G in _corpus(corpus):
        a, b = assemble_twist(G), oracle.twist_direct(G)
        rep.check(a == b, f"{g}/{n}: assembled {a} != direct {b}")
    return rep


# -- 3: invariance of f and f~ ------------------------------------------------


@_timed
def verify_invariance(corpus=None):
    rep = Report("invariance of f under equal invariants")
    for g, n, G in _corpus(corpus):
        cl = Clifford(G)
        byK = {}
        for a in range(len(cl.irr)):
            byK.setdefault(cl.K_of(a), []).append(a)
        for K, members in byK.items():
            Kp = cl.sylow_p(K)
            cls = {a: cl.class_at(Kp, a) for a in members}
            for a, b in itertools.combinations(members, 2):
                if class_eq(cls[a], cls[b]):
                    rep.check(cl.f(a) == cl.f(b), f"{g}/{n}: f differs for theta {a}, {b} with equal class")
        # twisted analogue
        data = {}
        for a, members in twist_class_reps(cl):
            td = TwistData(cl, a)
            data[a] = (td, cl.class_at(cl.G.sylow_part(td.K, G.p, td.L), a), td.t_sylow(), f_twist(cl, a))
            for b in members[1:]:
                rep.check(f_twist(cl, b) == data[a][3], f"{g}/{n}: f~ depends on the representative ({a}, {b})")
        for a, b in itertools.combinations(sorted(data), 2):
            ta, tb = data[a][0], data[b][0]
            if (ta.L, ta.K, ta.gamma.rows) != (tb.L, tb.K, tb.gamma.rows):
                continue
            if class_eq(data[a][1], data[b][1]) and t_class_equal(data[a][2], data[b][2]):
                rep.check(data[a][3] == data[b][3], f"{g}/{n}: f~ differs for classes {a}, {b} with equal invariants")
    return rep


# -- 4, 5: 2-cocycles -----------------------------------------------------------

# top groups of small order, as (group, normal) whose quotient is the named group
SMALL_TOPS = {"C2": ("S3", "C3"), "C3": ("A4", "V4"), "C4": ("Dic3", "C3"), "C2xC2": ("D4", "Z")}


def small_top(name):
    G = build(*SMALL_TOPS[name])
    return TopGroup(G, range(G.m))


@_timed
def verify_coboundary_solver(samples=10_000, seed=0, mod=8):
    """Solver against exhaustive search, values in (1/mod)Z/Z."""
    rep = Report("coboundary solver")
    rng = np.random.default_rng(seed)
    for name in ("C2", "C3", "C4", "C2xC2"):
        Q = small_top(name)
        big = mod * Q.exponent
        cob = oracle.coboundary_set(Q.mul, big)
        r = Q.r

        def agree(z):
            c = Cocycle2(Q, z, mod)
            mine = is_coboundary2(c)
            theirs = oracle.oracle_coboundary(c.rescale(big).z, Q.mul, big, cob)
            rep.check(mine == theirs, f"{name}: solver {mine} oracle {theirs} on {z.tolist()}")

        if name == "C2":
            for vals in itertools.product(range(mod), repeat=r * r):
                agree(np.array(vals).reshape(r, r))
            continue
        for _ in range(samples):
            agree(rng.integers(0, mod, (r, r)))
        # structured cases: coboundaries and random cocycles
        for _ in range(samples // 10):
            b = rng.integers(0, mod, r)
            agree(coboundary_of(Q, b, mod).z)
        from .cohomology import cocycle_generators
        gens = cocycle_generators(Q, mod)
        for _ in range(samples // 10):
            z = np.zeros((r, r), dtype=np.int64)
            for gz in gens:
                z = z + int(rng.integers(0, mod)) * gz.z
            agree(z % mod)
    return rep


@_timed
def verify_h2_counts():
    rep = Report("schur multipliers")
    expect = {"C2": 1, "C3": 1, "C4": 1, "C2xC2": 2}
    for name, want in expect.items():
        got = len(h2_classes(small_top(name)))
        rep.check(got == want, f"{name}: {got} classes, expected {want}")
    G = build("H3", "Z")
    got = len(h2_classes(TopGroup(G, range(G.m))))
    rep.check(got == 3, f"C3xC3: {got} classes, expected 3")
    return rep


# -- 6: Sylow reductions ------------------------------------------------------------


def mixed_corpus(corpus=None):
    return [(g, n, G) for g, n, G in _corpus(corpus) if len({G.p} | set(_primes(G.m))) > 1]


def _primes(k):
    from .extension import _factorize
    return sorted(_factorize(k))


@_timed
def verify_sylow(corpus=None):
    rep = Report("sylow reductions")
    for g, n, G in mixed_corpus(corpus):
        cl = Clifford(G)
        p = G.p
        for a in range(len(cl.irr)):
            K = cl.K_of(a)
            CK = cl.class_at(K, a)
            for q in _primes(len(K)):
                Kq = G.sylow_part(K, q)
                lhs = CK.primary_component(q).restrict(TopGroup(G, Kq))
                rep.check(class_eq(lhs, cl.class_at(Kq, a)),
                          f"{g}/{n} theta {a}: restricted {q}-part differs from the class at K_{q}")
        data = {}
        for a, _ in twist_class_reps(cl):
            td = TwistData(cl, a)
            for q in _primes(len(td.L)):
                if q != p:
                    rep.check(t_is_trivial(td.t_sylow(q)), f"{g}/{n} class {a}: T at the {q}-Sylow is not trivial")
            Kp = G.sylow_part(td.K, p, td.L)
            rep.check(td.gamma.restrict(Kp).rows == gamma_of(cl, a, Kp).rows,
                      f"{g}/{n} class {a}: Gamma restricted to K_p differs from Gamma at K_p")
            data[a] = (td, cl.class_at(Kp, a), td.t_sylow(), td.t_class())
        for a, b in itertools.combinations(sorted(data), 2):
            ta, tb = data[a][0], data[b][0]
            if (ta.L, ta.K, ta.gamma.rows) != (tb.L, tb.K, tb.gamma.rows):
                continue
            if class_eq(data[a][1], data[b][1]) and t_class_equal(data[a][2], data[b][2]):
                rep.check(t_class_equal(data[a][3], data[b][3]),
                          f"{g}/{n}: classes {a}, {b} agree at p but T differs")
    return rep


# -- 7: independence of choices ---------------------------------------------------


@_timed
def verify_rechoice(corpus=None, trials=50, seed=1):
    rep = Report("invariants under re-choice")
    rng = random.Random(seed)
    for g, n, G in _corpus(corpus):
        cl = Clifford(G)
        base = {}
        for a, members in twist_class_reps(cl):
            td = TwistData(cl, a)
            Kp = cl.sylow_p(td.K)
            base[a] = (members, td.K, td.L, cl.class_at(Kp, a), td.gamma.rows, td.t_class())
        for _ in range(trials):
            G2 = random_transversal(G, rng)
            cl2 = Clifford(G2)
            for a, (members, K, L, C, gam, T) in base.items():
                b = rng.choice(members)
                rep.check((cl2.K_of(b), cl2.L_of(b)) == (K, L), f"{g}/{n}: stabilisers moved for {b}")
                Kp = cl2.sylow_p(K)
                rep.check(class_eq(cl2.class_at(Kp, b, rng=rng), C), f"{g}/{n}: class moved for {b}")
                omega = [0] + [rng.randrange(cl2.E) for _ in range(len(K) - 1)]
                td = TwistData(cl2, b, rng=rng, omega=omega)
                rep.check(td.gamma.rows == gam, f"{g}/{n}: Gamma moved for {b}")
                rep.check(t_class_equal(td.t_class(), T), f"{g}/{n}: T moved for {b}")
    return rep


# -- 8: the Heisenberg tower -------------------------------------------------------------


@_timed
def verify_tower(primes=(2, 3), levels=(1, 2, 3)):
    rep = Report("heisenberg twist tower")
    for p in primes:
        table = tower_series("heisenberg", p, levels, "twist")
        for m in levels:
            for k in range(1, m):
                got = table[m].get(k, 0)
                rep.check(got == p ** (k - 1) * (p - 1), f"p={p} m={m}: r~_(p^{k}) = {got}")
        coeffs = stabilized(table)
        fit = rational_fit(coeffs, p)
        want = ((1, -1), ((1, 1),))
        rep.check(fit is not None and (tuple(fit.numerator), fit.factors) == want,
                  f"p={p}: fit {fit} on {coeffs}")
        rep.notes.append(f"p={p}: coefficients {coeffs}, fit {fit}")
        for m in levels:
            if m <= 2:
                G = heisenberg_tower(p, m)
                mask = np.zeros(G.order, dtype=bool)
                mask[:G.N.order] = True
                got = assemble_twist(G)
                rep.check(got == oracle.twist_direct(G, containing=mask), f"p={p} m={m}: oracle disagrees")
    return rep


# -- 9: completeness -----------------------------------------------------------------------


@_timed
def verify_completeness(corpus=None):
    rep = Report("completeness")
    for g, n, G in _corpus(corpus):
        cl = Clifford(G)
        sq = sum(pr.degree ** 2 for pr in cl.irr)
        rep.check(sq == G.N.order, f"{g}/{n}: sum of squares {sq} != {G.N.order}")
        k = oracle.class_count(oracle.TableGroup(G.N.table))
        rep.check(len(cl.irr) == k, f"{g}/{n}: {len(cl.irr)} characters, {k} classes")
    return rep


# -- 10: oracle concordance ----------------------------------------------------------------


def _sub_table_group(G, X):
    """TableGroup of the top subgroup X (elements y_i n, i in X, N first)."""
    s = G.N.order
    els = np.array([G.elem(i, n) for i in X for n in range(s)])
    where = np.full(G.order, -1, dtype=np.int64)
    where[els] = np.arange(len(els))
    t = where[G.table[np.ix_(els, els)]]
    return oracle.TableGroup(t)


def _feasible(mod, r, cap=2_000_000):
    return mod ** r <= cap


@_timed
def verify_oracles(corpus=None):
    rep = Report("oracle concordance")
    for g, n, G in _corpus(corpus):
        cl = Clifford(G)
        ch = cl.chars
        W = cl.W
        TN = oracle.TableGroup(G.N.table)
        # irreducibility and equality of induced characters
        irr_cands = []
        for M in ch.inducing_subgroups:
            for chi in ch.lin_chars(M):
                from .characters import Pair
                pr = Pair(M, chi)
                tab = TN.induce(M.mask, chi, W)
                irr = inner_product(tab, tab, TN.order, W) == 1
                rep.check(ch.induces_irreducibly(pr) == irr, f"{g}/{n}: irreducibility of a pair")
                if irr:
                    irr_cands.append((pr, reduce_rows(tab, W).tobytes()))
        step = max(1, len(irr_cands) // 60)
        sample = irr_cands[::step]
        for (p1, k1), (p2, k2) in itertools.combinations(sample, 2):
            rep.check(ch.induced_equal(p1, p2) == (k1 == k2), f"{g}/{n}: equality of induced characters")
        # twist equality against degree-one characters of the full table
        TG = oracle.TableGroup.of(G)
        lin = [v[:G.N.order] for v in TG.linear_characters(np.ones(G.order, dtype=bool), W)]
        tabs = [reduce_rows(TN.induce(pr.M.mask, pr.chi, W), W) for pr in cl.irr]
        keys = [t.tobytes() for t in tabs]
        for a, b in itertools.product(range(len(cl.irr)), repeat=2):
            found = False
            for psi in lin:
                tw = oracle_twist(TN.induce(cl.irr[b].M.mask, cl.irr[b].chi, W), psi, W)
                if reduce_rows(tw, W).tobytes() == keys[a]:
                    found = True
                    break
            rep.check((ch.twist_witness(cl.irr[a], cl.irr[b]) is not None) == found, f"{g}/{n}: twist equality")
        # class membership and Gamma membership
        for a in range(len(cl.irr)):
            K = cl.K_of(a)
            Kp = cl.sylow_p(K)
            pa = cl.pair_at(Kp, a)
            C = class_of_pair(pa, W)
            Q = TopGroup(G, Kp)
            for c in h2_classes(Q):
                c = c.rescale(math.lcm(c.mod, W)) if c.mod != W else c
                pred = satisfies_class(pa, c, W)
                rep.check(pred == class_eq(C, c), f"{g}/{n} theta {a}: class predicate vs solver")
                big = math.lcm(W, c.mod) * Q.exponent
                if _feasible(big, Q.r):
                    z = (C - c).rescale(big).z
                    rep.check(pred == oracle.oracle_coboundary(z, Q.mul, big),
                              f"{g}/{n} theta {a}: class predicate vs exhaustive search")
            # trivial class <=> theta extends to K_p (value tables of K_p)
            TK = _sub_table_group(G, Kp)
            irrK = oracle.oracle_irr_by_values(TK, W)
            theta_key = keys[a]
            extends = any(d == cl.irr[a].degree and reduce_rows(t[:G.N.order], W).tobytes() == theta_key
                          for d, t in irrK)
            rep.check(extends == is_coboundary2(C), f"{g}/{n} theta {a}: extension vs trivial class")
            td = TwistData(cl, a, K=K, L=K)
            for nu in lin_quotient_rows(cl, K):
                pred = td.gamma_member(nu)
                rep.check(pred == td.gamma_table_member(nu), f"{g}/{n} theta {a}: Gamma predicate vs tables")
                rep.check(pred == (nu in td.gamma), f"{g}/{n} theta {a}: Gamma predicate vs computed group")
    return rep


def oracle_twist(tab, psi, W):
    n = len(tab)
    cols = (np.arange(W)[None, :] + np.asarray(psi)[:, None]) % W
    out = np.zeros_like(tab)
    out[np.arange(n)[:, None], cols] = tab
    return out


SUITES = {
    "assembly": verify_assembly,
    "twist": verify_twist_assembly,
    "jaikin": verify_invariance,
    "coboundary": verify_coboundary_solver,
    "h2": verify_h2_counts,
    "sylow": verify_sylow,
    "rechoice": verify_rechoice,
    "tower": verify_tower,
    "completeness": verify_completeness,
    "oracles": verify_oracles,
}
