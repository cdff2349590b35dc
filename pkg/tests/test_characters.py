import numpy as np
import pytest

from cliffzeta import oracle
from cliffzeta.characters import Pair
from cliffzeta.corpus import CORPUS, build
from cliffzeta.cyclotomic import inner_product


def test_lin_chars_counts(clifford):
    ch = clifford("C3", "G").chars
    assert len(ch.lin_chars(ch.N.whole)) == 3
    ch = clifford("H3", "G").chars
    assert len(ch.lin_chars(ch.N.whole)) == 9
    assert len(ch.lin_chars(ch.N.trivial)) == 1


@pytest.mark.parametrize("g, n, want", [("S3", "C3", 2), ("H3", "Z", 9), ("M27", "C9", 9), ("A4", "V4", 3),
                                        ("S4", "V4", 2), ("Dic3", "C3", 4)])
def test_lin_G_matches_abelianisation(clifford, g, n, want):
    assert len(clifford(g, n).chars.lin_G) == want
    TG = oracle.TableGroup(build(g, n).table)
    assert len(TG.linear_characters(np.ones(TG.order, dtype=bool), TG.exponent)) == want


def test_invariance(clifford):
    ch = clifford("S3", "C3").chars
    G = ch.G
    whole = ch.N.whole
    faithful = [chi for chi in ch.lin_chars(whole) if chi.any()][0]
    assert ch.is_invariant(faithful, whole, [G.elem(0, x) for x in range(3)])
    assert not ch.is_invariant(faithful, whole, [G.elem(1)])
    ch = clifford("H3", "Z").chars
    G = ch.G
    for chi in ch.lin_chars(ch.N.whole):
        assert ch.is_invariant(chi, ch.N.whole, [G.elem(i) for i in range(G.m)])


def test_irr_N_degrees(clifford):
    assert [p.degree for p in clifford("C3", "G").irr] == [1, 1, 1]
    degs = sorted(p.degree for p in clifford("H3", "G").irr)
    assert degs == [1] * 9 + [3] * 2
    assert sum(d * d for d in degs) == 27


def test_stabilisers(clifford):
    cl = clifford("H3", "A")
    ks = [len(cl.K_of(a)) for a in range(len(cl.irr))]
    assert ks.count(3) == 3 and ks.count(1) == 6
    cl = clifford("S3", "C3")
    for a, pr in enumerate(cl.irr):
        if pr.chi.any():
            assert cl.K_of(a) == (0,) and cl.L_of(a) == (0,)
        else:
            assert cl.K_of(a) == (0, 1)
    cl = clifford("M27", "C9")
    for a, pr in enumerate(cl.irr):
        faithful = len(set(pr.chi.tolist())) == 9
        if faithful:
            assert len(cl.K_of(a)) == 1 and len(cl.L_of(a)) == 3
    cl = clifford("C3xC3", "G")
    assert all(cl.L_of(a) == (0,) for a in range(len(cl.irr)))


def test_twist_witness(clifford):
    ch = clifford("H3", "Z").chars
    a, b = ch.irr_N[1], ch.irr_N[2]
    assert ch.twist_witness(a, b) is None
    w = ch.twist_witness(a, a)
    assert w is not None
    ch = clifford("C3", "G").chars
    assert ch.twist_witness(ch.irr_N[0], ch.irr_N[1]) is not None


def test_twist_classes(clifford):
    assert len(clifford("C3", "G").chars.twist_classes()) == 1
    assert len(clifford("H3", "G").chars.twist_classes()) == 3
    assert len(clifford("S3", "C3").chars.twist_classes()) == 3


def test_degree_exponent(clifford):
    ch = clifford("H3", "G").chars
    for pr in ch.irr_N:
        assert ch.N.p ** ch.degree_exponent(pr) == pr.degree
    ch = clifford("C9", "G").chars
    assert ch.degree_exponent(Pair(ch.N.whole, ch.lin_chars(ch.N.whole)[0])) == 0


def test_induced_equality_against_values(clifford):
    for g, n in [("H3", "G"), ("Q8", "G"), ("D4", "G"), ("M27", "G")]:
        ch = clifford(g, n).chars
        TN = oracle.TableGroup(ch.N.table)
        W = ch.W
        pairs = [Pair(M, chi) for M in ch.inducing_subgroups for chi in ch.lin_chars(M)]
        pairs = [p for p in pairs if ch.induces_irreducibly(p)][:40]
        tabs = [TN.induce(p.M.mask, p.chi, W) for p in pairs]
        for i in range(len(pairs)):
            for j in range(i, len(pairs)):
                same = inner_product(tabs[i], tabs[j], TN.order, W) == 1
                assert ch.induced_equal(pairs[i], pairs[j]) == same


def test_completeness_per_corpus(clifford):
    for g, n in CORPUS:
        cl = clifford(g, n)
        N = cl.G.N
        assert sum(p.degree ** 2 for p in cl.irr) == N.order
        assert len(cl.irr) == oracle.class_count(oracle.TableGroup(N.table))


def test_pair_at_invariance(clifford):
    cl = clifford("H3", "Z")
    G = cl.G
    for a in range(len(cl.irr)):
        K = cl.K_of(a)
        pa = cl.pair_at(K, a)
        acting = [G.elem(i, pa.H.tails[i]) for i in G.top_generators(K)]
        assert cl.chars.is_invariant(pa.chi, pa.M, acting)
