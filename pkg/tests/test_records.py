from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cliffzeta.records import SCHEMA, OutputRecord, RecordError
from cliffzeta.zeta import DirichletPoly, RationalFit

numerators = st.lists(st.one_of(st.integers(-5, 5), st.fractions(max_denominator=7)), min_size=1, max_size=4)


@given(st.dictionaries(st.integers(1, 100), st.integers(1, 50), max_size=6), numerators,
       st.lists(st.tuples(st.integers(-2, 3), st.integers(1, 2)), max_size=2),
       st.one_of(st.none(), st.integers(0, 10 ** 6)))
def test_roundtrip(poly, num, factors, seed):
    num = tuple(int(c) if Fraction(c).denominator == 1 else Fraction(c) for c in num)
    rec = OutputRecord("tower", "heisenberg(p=3)", None, {"levels": 3}, DirichletPoly(poly),
                       RationalFit(3, num, tuple(factors)), {"stable": "1 2 6"}, seed)
    back = OutputRecord.from_json(rec.to_json())
    assert back == rec
    assert back.to_json() == rec.to_json()


def test_schema_field():
    rec = OutputRecord("zeta", "S3", "C3", poly=DirichletPoly({1: 2, 2: 1}))
    d = rec.to_dict()
    assert d["schema"] == SCHEMA
    assert d["poly"] == [[1, 2], [2, 1]]
    assert d["provenance"]["tool"] == "cliffzeta"


def test_rejects_unknown_schema():
    with pytest.raises(RecordError):
        OutputRecord.from_json('{"schema": "other/9", "kind": "zeta", "group": "x"}')
    with pytest.raises(RecordError):
        OutputRecord.from_json("not json")
