"""The ten acceptance criteria, each with its time budget.

Every criterion prints one PASS/FAIL line (visible under ``pytest -v``).
Run this file directly for the same lines without pytest.
"""
import time

import pytest

from cliffzeta.corpus import CATALOGUE, CORPUS, build
from cliffzeta.verify import SUITES

# (number, title, suite, seconds)
CRITERIA = [
    (1, "assembly identity", "assembly", 60),
    (2, "twist assembly identity", "twist", 120),
    (3, "f and twisted f depend only on the invariants", "jaikin", 60),
    (4, "coboundary solver vs exhaustive oracle", "coboundary", 120),
    (5, "schur multiplier sizes", "h2", 60),
    (6, "sylow reductions", "sylow", 60),
    (7, "invariants under 50 re-choices", "rechoice", 180),
    (8, "heisenberg twist tower and fit", "tower", 300),
    (9, "completeness of pair enumeration", "completeness", 60),
    (10, "oracle concordance", "oracles", 300),
]


def run_criterion(num, title, suite, budget):
    t = time.time()
    rep = SUITES[suite]()
    elapsed = time.time() - t
    ok = rep.ok and rep.checked > 0 and elapsed < budget
    status = "PASS" if ok else "FAIL"
    line = (f"{status} criterion {num} ({title}): {rep.checked} checks, "
            f"{len(rep.violations)} violations, {elapsed:.1f}s of {budget}s")
    if rep.violations:
        line += f"; first: {rep.violations[0]}"
    return ok, line, rep


def test_corpus_size():
    groups = {g for g, _ in CORPUS}
    assert len(groups) >= 12
    assert all(build(g, n).order <= 648 for g, n in CORPUS)
    assert all(g in CATALOGUE for g in groups)


@pytest.mark.parametrize("num, title, suite, budget", CRITERIA, ids=[c[2] for c in CRITERIA])
def test_criterion(num, title, suite, budget, capsys):
    ok, line, rep = run_criterion(num, title, suite, budget)
    with capsys.disabled():
        print("\n" + line)
    assert rep.ok, rep.violations[:5]
    assert rep.checked > 0
    assert rep.seconds < budget


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for _, line, _ in results:
        print(line)
    raise SystemExit(0 if all(ok for ok, _, _ in results) else 1)
