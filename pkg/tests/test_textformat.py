import numpy as np
import pytest

from cliffzeta.corpus import CORPUS, build
from cliffzeta.textformat import FormatError, format_group, parse_group


@pytest.mark.parametrize("g, n", CORPUS)
def test_roundtrip(g, n):
    G = build(g, n)
    H = parse_group(format_group(G))
    assert np.array_equal(G.table, H.table)


S3_TEXT = """\
# S3 over C3
3 1 2
power 1 : 0
gamma 1 : 1 2
gamma 2 : 2 1
phi 2 : 2
"""


def test_parse_small():
    G = parse_group(S3_TEXT)
    assert G.order == 6 and G.p == 3 and G.m == 2


@pytest.mark.parametrize("text, line", [
    ("2 2 1\npower 1 : 0 x\n", 2),
    ("3 1 2\npower 1 : 0\ngamma 1 : 1 2\ngamma 2 : 1 2\n", 3),
    ("3 1 2\npower 1 : 0\ngamma 1 : 1 2\nbogus 2 : 2 1\n", 4),
    ("3 1 1\npower 2 : 0\n", 2),
    ("3 1 1\npower 1 : 5\n", 2),
])
def test_malformed_has_line_number(text, line):
    with pytest.raises(FormatError) as exc:
        parse_group(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")


def test_missing_rows():
    with pytest.raises(FormatError, match="missing gamma"):
        parse_group("3 1 2\npower 1 : 0\ngamma 1 : 1 2\n")
    with pytest.raises(FormatError, match="empty"):
        parse_group("# nothing\n")
