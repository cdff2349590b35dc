import numpy as np
from hypothesis import given, settings, strategies as st

from cliffzeta.cohomology import Cocycle2, TopGroup
from cliffzeta.corpus import build
from cliffzeta.modlin import kernel_mod, module_size, solve_mod, span
from cliffzeta.projective import projective_irreducibles, root_modulus


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([4, 6, 8, 9, 12, 27]), st.integers(1, 4), st.integers(1, 4), st.data())
def test_solve_mod_against_brute_force(q, rows, cols, data):
    A = np.array(data.draw(st.lists(st.integers(0, q - 1), min_size=rows * cols, max_size=rows * cols))).reshape(rows, cols)
    b = np.array(data.draw(st.lists(st.integers(0, q - 1), min_size=rows, max_size=rows)))
    x, kern = solve_mod(A, b, q)
    import itertools
    sols = [v for v in itertools.product(range(q), repeat=cols) if not ((A @ np.array(v) - b) % q).any()]
    assert (x is None) == (not sols)
    if x is not None:
        assert not ((A @ x - b) % q).any()
    for k in kern:
        assert not ((A @ k) % q).any()
    homog = [v for v in itertools.product(range(q), repeat=cols) if not ((A @ np.array(v)) % q).any()]
    assert len(span(kern, q, dim=cols)) == len(homog)
    if kern:
        assert module_size(kern, q) == len(homog)


def test_kernel_mod_simple():
    kern = kernel_mod(np.array([[2, 0]]), 4)
    assert len(span(kern, 4, dim=2)) == 8


def _sum_sq(chars):
    return sum(pc.degree ** 2 for pc in chars)


def test_projective_irreducibles_untwisted():
    G = build("S4", "V4")
    Q = TopGroup(G, range(G.m))
    E = root_modulus(G)
    chars = projective_irreducibles(Q, Cocycle2(Q, np.zeros((6, 6)), 1), E)
    assert sorted(pc.degree for pc in chars) == [1, 1, 2]


def test_projective_irreducibles_twisted(clifford):
    cl = clifford("H3", "Z")
    K = tuple(range(cl.G.m))
    alpha = cl.class_at(K, 1)
    chars = projective_irreducibles(TopGroup(cl.G, K), -alpha, cl.E)
    assert [pc.degree for pc in chars] == [3]
    assert _sum_sq(chars) == 9


def test_projective_sum_of_squares_on_corpus(clifford):
    from cliffzeta.corpus import CORPUS
    for g, n in CORPUS:
        cl = clifford(g, n)
        for a in range(len(cl.irr)):
            assert sum(d * d * c for d, c in cl.f(a).items()) == len(cl.K_of(a))
