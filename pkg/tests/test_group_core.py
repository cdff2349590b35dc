
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cliffzeta import oracle
from cliffzeta.corpus import CORPUS, build, random_transversal
from cliffzeta.extension import enumerate_HH
from cliffzeta.pcgroup import INF, PcGroup, PresentationError, check_good_basis, good_basis, random_word

H3 = build("H3", "G").N
C9 = build("C9", "G").N


def test_collect_cyclic_relation():
    assert C9.collect([1, 1, 1]) == C9.gen(1)
    assert C9.collect([]) == 0


def _heis_mul(x, y, p=3):
    a, b, c = x
    d, e, f = y
    return ((a + d) % p, (b + e) % p, (c + f + a * e) % p)


def _heis_pow(x, k):
    out = (0, 0, 0)
    for _ in range(k):
        out = _heis_mul(out, x)
    return out


def _to_matrix_model(v):
    # n_1 -> x, n_2 -> y, n_3 -> z^-1 since [y, x] = z^-1 for unitriangular matrices
    e1, e2, e3 = v
    out = _heis_mul(_heis_pow((1, 0, 0), e1), _heis_pow((0, 1, 0), e2))
    return _heis_mul(out, _heis_pow((0, 0, 2), e3))


def test_heisenberg_collection_matches_matrices():
    img = {x: _to_matrix_model(H3.vector(x)) for x in range(27)}
    assert len(set(img.values())) == 27
    for x in range(27):
        for y in range(27):
            assert img[H3.mul(x, y)] == _heis_mul(img[x], img[y])
    # n_2 n_1 = n_1 n_2 n_3
    assert H3.vector(H3.collect([2, 1])) == (1, 1, 1)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from([1, 2, 3, -1, -2, -3]), max_size=12),
       st.lists(st.sampled_from([1, 2, 3, -1, -2, -3]), max_size=12))
def test_collect_is_multiplicative(u, v):
    assert H3.collect(u + v) == H3.mul(H3.collect(u), H3.collect(v))


def test_inverse_letters():
    for k in (1, 2, 3):
        assert H3.collect([k, -k]) == 0


def test_bad_presentation_rejected():
    with pytest.raises(PresentationError):
        PcGroup(4, 1, [(0,)])
    with pytest.raises(PresentationError):
        PcGroup(2, 2, [(1, 0), (0, 0)])


def test_lower_p_series():
    assert [len(s.elems) for s in H3.lower_p_series] == [27, 3, 1]
    assert [len(s.elems) for s in C9.lower_p_series] == [9, 3, 1]
    c3c3 = build("C3xC3", "G").N
    assert [len(s.elems) for s in c3c3.lower_p_series] == [9, 1]


def test_lower_p_series_by_exhaustion():
    # N_2 = closure of p-th powers and commutators of N with N
    for g, n in [("H3", "G"), ("M27", "G"), ("Q8", "G"), ("D4", "G"), ("H2", "G")]:
        N = build(g, n).N
        series = N.lower_p_series
        for a, b in zip(series, series[1:]):
            gens = [N.power(x, N.p) for x in a.elems]
            gens += [N.comm(x, y) for x in a.elems for y in range(N.order)]
            assert sorted(N.closure(gens).elems) == sorted(b.elems)


def test_omega():
    assert H3.omega(0) == INF
    assert [C9.omega(C9.gen(i)) for i in range(2)] == [1, 2]
    assert H3.omega(H3.gen(2)) == 2


def test_good_basis_examples():
    assert good_basis(H3, [0]) == ()
    assert good_basis(H3, [H3.gen(0)]) == (H3.gen(0),)
    c = build("C2xC2", "G").N
    assert good_basis(c, [c.gen(0)]) == (c.gen(0),)


def test_good_basis_condition_on_all_subgroups():
    for g in ("H3", "M27", "Q8", "D4", "C9", "C3xC3"):
        N = build(g, "G").N
        for S in N.subgroups():
            basis = good_basis(N, S.elems)
            assert check_good_basis(N, basis, S)
            assert N.p ** len(basis) == len(S.elems)


def _subgroup_count_by_subsets(N):
    TG = oracle.TableGroup(N.table)
    return len(TG.subgroups())


@pytest.mark.parametrize("g, want", [("C2", 2), ("C2xC2", 5), ("H3", 19), ("Q8", 6), ("D4", 10), ("C9", 3)])
def test_subgroup_counts(g, want):
    N = build(g, "G").N
    assert len(N.subgroups()) == want == _subgroup_count_by_subsets(N)


def test_conj_by_transversal():
    S3 = build("S3", "C3")
    n = S3.N.gen(0)
    assert S3.conj_by_transversal(0, n) == n
    assert S3.conj_by_transversal(1, n) == S3.N.power(n, 2)
    M = build("M27", "C9")
    n = M.N.gen(0)
    images = {M.conj_by_transversal(i, n) for i in range(1, 3)}
    assert M.N.power(n, 4) in images


def test_phi_is_automorphism():
    for g, n in CORPUS:
        G = build(g, n)
        N = G.N
        for i in range(G.m):
            phi = np.asarray(G.phi[i])
            assert len(set(phi.tolist())) == N.order
            assert (phi[N.table] == N.table[np.ix_(phi, phi)]).all()


def test_extension_associative():
    for g, n in CORPUS:
        t = build(g, n).table
        lhs = t[t[:, :, None], np.arange(len(t))[None, None, :]]
        rhs = t[np.arange(len(t))[:, None, None], t[None, :, :]]
        assert (lhs == rhs).all(), (g, n)


def test_retransversal_gives_same_group():
    import random
    rng = random.Random(5)
    for g, n in [("S3", "C3"), ("M27", "C9"), ("A4", "V4")]:
        G = build(g, n)
        G2 = random_transversal(G, rng)
        assert oracle.class_count(oracle.TableGroup(G2.table)) == oracle.class_count(oracle.TableGroup(G.table))


def test_sylow_parts():
    S3 = build("S3", "C3")
    assert S3.sylow_part((0, 1), 3) == (0,)
    assert len(S3.sylow_part((0, 1), 2)) == 2
    H = build("H3", "Z")
    K = tuple(range(H.m))
    assert H.sylow_part(K, 3) == K


def test_enumerate_HH_against_subgroups():
    for g, n in [("M27", "C9"), ("S3", "C3"), ("H3", "A"), ("D4", "Z")]:
        G = build(g, n)
        X = tuple(range(G.m))
        if g == "S3":
            X = G.sylow_part(X, 2)
        mine = enumerate_HH(G, X)
        TG = oracle.TableGroup(G.table)
        s = G.N.order
        inX = np.zeros(G.order, dtype=bool)
        for i in X:
            inX[i * s:(i + 1) * s] = True
        want = 0
        for S in TG.subgroups():
            if (S & ~inX).any():
                continue
            tops = {int(x) // s for x in np.flatnonzero(S)}
            if tops == set(X):
                want += 1
        assert len(mine) == want, (g, n)
    assert len(enumerate_HH(build("C3", "G"), (0,))) == 2


def test_random_words_reduce_consistently():
    import random
    rng = random.Random(0)
    for _ in range(50):
        w = random_word(rng, 3, 10)
        inv = [-x for x in reversed(w)]
        assert H3.collect(w + inv) == 0
