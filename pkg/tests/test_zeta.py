from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cliffzeta.corpus import CORPUS, build
from cliffzeta.zeta import (DirichletPoly, RationalFit, assemble, assemble_twist, coefficient_table, partial_series,
                            rational_fit, stabilized, tower_series)

# frozen from the value-table oracle (degree -> count)
ZETA = {
    "C2": ({1: 2}, {1: 1}), "C3": ({1: 3}, {1: 1}), "C4": ({1: 4}, {1: 1}), "C9": ({1: 9}, {1: 1}),
    "C2xC2": ({1: 4}, {1: 1}), "C3xC3": ({1: 9}, {1: 1}),
    "H2": ({1: 4, 2: 1}, {1: 1, 2: 1}), "H3": ({1: 9, 3: 2}, {1: 1, 3: 2}),
    "M27": ({1: 9, 3: 2}, {1: 1, 3: 2}), "Q8": ({1: 4, 2: 1}, {1: 1, 2: 1}),
    "D4": ({1: 4, 2: 1}, {1: 1, 2: 1}), "S3": ({1: 2, 2: 1}, {1: 1, 2: 1}),
    "Dic3": ({1: 4, 2: 2}, {1: 1, 2: 1}), "C3xS3": ({1: 6, 2: 3}, {1: 1, 2: 1}),
    "A4": ({1: 3, 3: 1}, {1: 1, 3: 1}), "S4": ({1: 2, 2: 1, 3: 2}, {1: 1, 2: 1, 3: 1}),
}


@pytest.mark.parametrize("g, n", CORPUS)
def test_assembly_frozen(g, n):
    G = build(g, n)
    assert assemble(G) == DirichletPoly(ZETA[g][0])
    assert assemble_twist(G) == DirichletPoly(ZETA[g][1])


def test_dirichlet_arithmetic():
    a = DirichletPoly({1: 2, 2: 1})
    b = DirichletPoly({1: 1, 3: 1})
    assert (a * b).c == {1: 2, 2: 1, 3: 2, 6: 1}
    assert (a + b).c == {1: 3, 2: 1, 3: 1}
    assert a.shift(3).c == {3: 2, 6: 1}
    assert str(a) == "2*1^-s + 1*2^-s"
    assert a.sum_squares() == 6 and a.count() == 3
    assert DirichletPoly.from_list(a.to_list()) == a
    with pytest.raises(ArithmeticError):
        (a * Fraction(1, 2)).integral()


@given(st.dictionaries(st.integers(1, 30), st.integers(1, 5), max_size=5),
       st.dictionaries(st.integers(1, 30), st.integers(1, 5), max_size=5))
def test_convolution_is_multiplicative(u, v):
    a, b = DirichletPoly(u), DirichletPoly(v)
    assert (a * b).count() == a.count() * b.count()
    assert (a * b).value_at(1) == pytest.approx(a.value_at(1) * b.value_at(1))
    assert a * b == b * a


def test_f_examples(clifford):
    cl = clifford("H3", "A")
    stable = [a for a in range(len(cl.irr)) if len(cl.K_of(a)) == 3]
    assert all(cl.f(a) == DirichletPoly({1: 3}) for a in stable)
    cl = clifford("H3", "Z")
    assert cl.f(1) == DirichletPoly({3: 1})
    cl = clifford("S3", "C3")
    assert cl.f(1) == DirichletPoly({1: 1})


def test_partial_series_examples(clifford):
    cl = clifford("H3", "Z")
    parts = [(t, partial_series(cl, t)) for t in cl.terms]
    assert len(parts) == 3
    assert all(p == DirichletPoly({1: 1}) for _, p in parts)
    cl = clifford("C3xC3", "G")
    (term,) = cl.terms
    assert partial_series(cl, term) == DirichletPoly({1: 9})


def test_rational_fit_examples():
    fit = rational_fit([1, 3, 9, 27], 3)
    assert fit.numerator == (1,) and fit.factors == ((1, 1),)
    fit = rational_fit([1, 0, 0, 0], 2)
    assert fit.numerator == (1,) and fit.factors == ()
    fit = rational_fit([1, 2, 6], 3)
    assert str(fit) == "(1 - t) / (1 - 3t)"
    fit = rational_fit([1, 1, 2], 2)
    assert fit.numerator == (1, -1) and fit.factors == ((1, 1),)


@given(st.integers(2, 5), st.integers(-2, 3), st.integers(-3, 3))
def test_rational_fit_roundtrip(p, i, c):
    fit = RationalFit(p, (1, c), ((i, 1),))
    coeffs = fit.series(6)
    got = rational_fit(coeffs, p)
    assert got is not None
    assert got.series(10) == fit.series(10)


def test_coefficient_table():
    assert coefficient_table(DirichletPoly({1: 1, 3: 2, 9: 6}), 3) == {0: 1, 1: 2, 2: 6}
    with pytest.raises(ValueError):
        coefficient_table(DirichletPoly({2: 1}), 3)


def test_stabilisation_detection():
    assert stabilized({1: {0: 1, 1: 2}, 2: {0: 1, 1: 2, 2: 6}}) == [1, 2]
    table = tower_series("cyclic", 2, [1, 2, 3], "zeta")
    assert [table[m][0] for m in (1, 2, 3)] == [2, 4, 8]
    with pytest.raises(ArithmeticError):
        stabilized(table)


def test_heisenberg_tower_p2():
    table = tower_series("heisenberg", 2, [1, 2, 3], "twist")
    assert stabilized(table) == [1, 1, 2]
    zeta_table = tower_series("heisenberg", 2, [1, 2], "zeta")
    assert zeta_table[1][0] == 4 and zeta_table[2][0] == 16
