import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cliffzeta import oracle
from cliffzeta.cohomology import (Cocycle2, TopGroup, class_eq, class_of_pair, coboundary_of, cocycle_generators,
                                  h2_classes, is_coboundary2, satisfies_class)
from cliffzeta.corpus import build
from cliffzeta.verify import small_top


def _klein_nontrivial(Q):
    # the quaternion-type class on C2 x C2: z(a, b) = a_1 b_2 / 2 in coordinates
    gens = [a for a in range(1, Q.r)][:2]
    coords = {0: (0, 0), gens[0]: (1, 0), gens[1]: (0, 1), int(Q.mul[gens[0], gens[1]]): (1, 1)}
    z = np.zeros((Q.r, Q.r), dtype=np.int64)
    for a, b in itertools.product(range(Q.r), repeat=2):
        z[a, b] = coords[a][0] * coords[b][1]
    return Cocycle2(Q, z, 2)


def test_zero_is_coboundary():
    Q = small_top("C2xC2")
    assert is_coboundary2(Cocycle2(Q, np.zeros((4, 4)), 8))


def test_klein_class_nontrivial():
    Q = small_top("C2xC2")
    z = _klein_nontrivial(Q)
    assert z.is_cocycle()
    assert not is_coboundary2(z)
    assert not oracle.oracle_coboundary(z.rescale(4).z, Q.mul, 4)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["C2", "C3", "C4", "C2xC2"]), st.lists(st.integers(0, 23), min_size=4, max_size=4))
def test_coboundaries_are_coboundaries(name, b):
    Q = small_top(name)
    z = coboundary_of(Q, np.array(b[:Q.r]), 24)
    assert z.is_cocycle()
    assert is_coboundary2(z)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 7), min_size=16, max_size=16))
def test_solver_matches_exhaustion_klein(vals):
    Q = small_top("C2xC2")
    z = np.array(vals).reshape(4, 4)
    c = Cocycle2(Q, z, 8)
    assert is_coboundary2(c) == oracle.oracle_coboundary(c.rescale(16).z, Q.mul, 16)


def test_cocycle_generators_are_cocycles():
    for name in ("C2", "C3", "C4", "C2xC2"):
        Q = small_top(name)
        for g in cocycle_generators(Q, 8):
            assert g.is_cocycle()


@pytest.mark.parametrize("name, want", [("C2", 1), ("C3", 1), ("C4", 1), ("C2xC2", 2)])
def test_schur_multiplier_sizes(name, want):
    assert len(h2_classes(small_top(name))) == want


def test_schur_multiplier_c3xc3():
    G = build("H3", "Z")
    assert len(h2_classes(TopGroup(G, range(G.m)))) == 3


def test_class_of_faithful_central_character(clifford):
    cl = clifford("H3", "Z")
    K = tuple(range(cl.G.m))
    classes = [cl.class_at(K, a) for a in range(3)]
    triv = [a for a in range(3) if not cl.irr[a].chi.any()][0]
    assert is_coboundary2(classes[triv])
    others = [a for a in range(3) if a != triv]
    c1, c2 = classes[others[0]], classes[others[1]]
    assert not is_coboundary2(c1) and not is_coboundary2(c2)
    assert not class_eq(c1, c2)
    assert class_eq(c1, -c2)


def test_linear_extendable_class_trivial(clifford):
    cl = clifford("H3", "A")
    for a in range(len(cl.irr)):
        assert is_coboundary2(cl.class_at(cl.K_of(a), a))


def test_satisfies_class(clifford):
    cl = clifford("H3", "Z")
    K = tuple(range(cl.G.m))
    for a in range(3):
        pa = cl.pair_at(K, a)
        c = class_of_pair(pa, cl.W)
        assert satisfies_class(pa, c, cl.W)
        klein_like = h2_classes(TopGroup(cl.G, K))
        shifted = [c + h for h in klein_like if not is_coboundary2(h)]
        assert not any(satisfies_class(pa, s, cl.W) for s in shifted)
    cl = clifford("S3", "C3")
    pa = cl.pair_at((0,), 1)
    assert satisfies_class(pa, Cocycle2(TopGroup(cl.G, (0,)), [[0]], 1), cl.W)


def test_primary_components_sum_back(clifford):
    cl = clifford("S4", "V4")
    K = tuple(range(cl.G.m))
    c = cl.class_at(K, 0)
    parts = c.primary_component(2) + c.primary_component(3)
    assert class_eq(parts, c)
