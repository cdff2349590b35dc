import numpy as np
import pytest

from cliffzeta import oracle
from cliffzeta.corpus import build
from cliffzeta.verify import small_top


@pytest.mark.parametrize("g, n, rows, degrees", [("C2", "G", 2, [1, 1]), ("S3", "C3", 3, [1, 1, 2]),
                                                  ("H3", "G", 11, [1] * 9 + [3, 3])])
def test_irr_by_values(g, n, rows, degrees):
    G = build(g, n)
    TG = oracle.TableGroup(G.table)
    irr = oracle.oracle_irr_by_values(TG)
    assert len(irr) == rows == oracle.class_count(TG)
    assert sorted(d for d, _ in irr) == degrees


def test_zeta_direct_examples():
    assert oracle.zeta_direct(build("C4", "G")).c == {1: 4}
    assert oracle.zeta_direct(build("S3", "C3")).c == {1: 2, 2: 1}
    z = oracle.zeta_direct(build("H3", "G"))
    assert z.c == {1: 9, 3: 2} and z.sum_squares() == 27


def test_coboundary_oracle():
    Q = small_top("C2xC2")
    cob = oracle.coboundary_set(Q.mul, 4)
    assert oracle.oracle_coboundary(np.zeros((4, 4)), Q.mul, 4, cob)
    rng = np.random.default_rng(1)
    for _ in range(20):
        b = rng.integers(0, 4, 4)
        db = (b[:, None] + b[None, :] - b[Q.mul]) % 4
        assert oracle.oracle_coboundary(db, Q.mul, 4, cob)


@pytest.mark.parametrize("g, n, classes", [("C3xC3", "G", 1), ("S3", "C3", 2), ("H3", "G", 3)])
def test_twist_partition(g, n, classes):
    assert len(oracle.oracle_twist_partition(build(g, n))) == classes


def test_subgroup_enumeration_with_core():
    G = build("M27", "C9")
    TG = oracle.TableGroup(G.table)
    mask = np.zeros(G.order, dtype=bool)
    mask[:G.N.order] = True
    subs = TG.subgroups(containing=mask)
    assert sorted(int(s.sum()) for s in subs) == [9, 27]
