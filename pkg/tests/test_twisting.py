import random

import numpy as np
from hypothesis import given, settings, strategies as st

from cliffzeta.corpus import build
from cliffzeta.oracle import twist_growth_chains, corpus_search_LKN
from cliffzeta.twisting import (GammaSubgroup, TClass, TwistData, gamma_of, lin_quotient_rows, predicate_A,
                                predicate_B, t_class_equal, t_is_trivial)
from cliffzeta.zeta import twist_class_reps


def _whole(G):
    return tuple(range(G.m))


def test_mu_vanishes_on_N(clifford):
    cl = clifford("M27", "C9")
    for a, _ in twist_class_reps(cl):
        td = TwistData(cl, a)
        assert not td.mu_row(0).any()


def test_mu_zero_when_K_is_N(clifford):
    cl = clifford("M27", "C9")
    for a, _ in twist_class_reps(cl):
        td = TwistData(cl, a)
        if td.K == (0,):
            assert all(not row.any() for row in td.mu_rows(check=True).values())
            assert t_is_trivial(td.t_class())


def test_gamma_trivial_when_K_is_N(clifford):
    cl = clifford("S3", "C3")
    assert len(gamma_of(cl, 1, (0,))) == 1


def test_gamma_for_trivial_theta_is_restriction_image(clifford):
    cl = clifford("H3", "A")
    a = [a for a, pr in enumerate(cl.irr) if not pr.chi.any()][0]
    G = cl.G
    gam = gamma_of(cl, a, _whole(G))
    assert len(gam) == len(lin_quotient_rows(cl, _whole(G)))


def test_gamma_full_for_faithful_central(clifford):
    cl = clifford("H3", "Z")
    K = _whole(cl.G)
    rows = lin_quotient_rows(cl, K)
    for a in (1, 2):
        gam = gamma_of(cl, a, K)
        assert len(gam) == len(rows) == 9
        td = TwistData(cl, a)
        for nu in rows:
            assert td.gamma_member(nu) and td.gamma_table_member(nu)


def test_gamma_predicate_rejects_outsiders(clifford):
    cl = clifford("H3", "A")
    for a, _ in twist_class_reps(cl):
        td = TwistData(cl, a)
        for nu in lin_quotient_rows(cl, td.K):
            assert td.gamma_member(nu) == (nu in td.gamma) == td.gamma_table_member(nu)


def test_predicate_A():
    G = build("H3", "A")
    cl_pairs = __import__("cliffzeta.zeta", fromlist=["Clifford"]).Clifford(G)
    pa = cl_pairs.pair_at(_whole(G), 0)
    H = pa.H
    for j in H.top:
        for n2 in range(G.N.order):
            inside = H.contains(G.elem(j, n2))
            assert predicate_A(H, 0, j, 0, n2) == inside
            if inside:
                assert predicate_A(H, j, j, H.tails[j], n2)


def test_predicate_B_certifies_mu(clifford):
    for g, n in [("M27", "C9"), ("H3", "Z"), ("A4", "V4"), ("S4", "V4")]:
        cl = clifford(g, n)
        for a, _ in twist_class_reps(cl):
            td = TwistData(cl, a)
            for i in td.L:
                psi = td.witness(i)
                mu = td.mu_row(i, psi)
                assert predicate_B(td, i, psi, mu)


def test_predicate_B_rejects_wrong_mu(clifford):
    cl = clifford("H3", "A")
    for a, _ in twist_class_reps(cl):
        td = TwistData(cl, a)
        if len(td.K) == 1:
            continue
        for i in td.L:
            psi = td.witness(i)
            mu = td.mu_row(i, psi).copy()
            mu[1] = (mu[1] + td.E // 3) % td.E
            assert not predicate_B(td, i, psi, mu)


def _synthetic(mu_value, gamma_rows=None):
    G = build("A4", "V4")
    K = _whole(G)
    E = 3
    gam = GammaSubgroup(K, E, frozenset(gamma_rows or {(0, 0, 0)}))
    gens = G.top_generators(K)
    mu = {int(g): np.full(len(K), mu_value, dtype=np.int64) for g in gens}
    return TClass(K, K, gam, mu, G.kappa, E)


def test_synthetic_nontrivial_T():
    assert not t_is_trivial(_synthetic(1))
    assert t_is_trivial(_synthetic(0))
    # Gamma = all of Lin(C3) still cannot absorb a constant row
    full = {(0, k, 2 * k % 3) for k in range(3)} | {(0, 2 * k % 3, k) for k in range(3)}
    assert not t_is_trivial(_synthetic(1, full))
    assert t_class_equal(_synthetic(1), _synthetic(1))
    assert not t_class_equal(_synthetic(1), _synthetic(2))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 11), min_size=6, max_size=6))
def test_twisted_coboundaries_are_trivial(eta):
    G = build("S4", "V4")
    K = _whole(G)
    E = 12
    gens = G.top_generators(K)
    mu = {}
    for g in gens:
        mu[int(g)] = np.array([(eta[int(G.kappa[g, x])] - eta[x]) % E for x in K])
    t = TClass(K, K, GammaSubgroup(K, E, frozenset({(0,) * 6})), mu, G.kappa, E)
    assert t_is_trivial(t)


def test_t_class_stable_under_rechoice(clifford):
    rng = random.Random(3)
    cl = clifford("H3", "Z")
    for a, _ in twist_class_reps(cl):
        base = TwistData(cl, a).t_class()
        for _ in range(5):
            omega = [0] + [rng.randrange(cl.E) for _ in range(cl.G.m - 1)]
            assert t_class_equal(TwistData(cl, a, rng=rng, omega=omega).t_class(), base)


def test_corpus_chains():
    assert corpus_search_LKN() == []
    chains = twist_growth_chains()
    assert any(g == "M27" and n == "C9" and k == 1 and l == 3 for g, n, _, k, l in chains)
    assert not any(g == "S3" for g, *_ in chains)
    assert not any(g in ("C2", "C3", "C4", "C9", "C2xC2", "C3xC3") for g, *_ in chains)
