"""Plain-text format for a group G given as an extension of a p-group N.

Grammar (one statement per line, ``#`` starts a comment, indices are 1-based
and y_1 = 1)::

    p d m
    power i : e_1 ... e_d              n_i^p as an exponent vector
    commutator j i : e_1 ... e_d       [n_j, n_i] for j > i; omitted when trivial
    gamma i : g_1 ... g_m              row i of the top table, y_i y_j = y_(g_j) a_ij
    tail i j : e_1 ... e_d             a_ij; omitted when trivial
    phi i : v_1 ; v_2 ; ... ; v_d      images of n_1..n_d under x -> y_i x y_i^-1

Every ``power`` and ``gamma`` row must be present; ``phi`` may be omitted for
indices acting trivially.
"""
from __future__ import annotations

import numpy as np

from .extension import ExtensionError, Group
from .pcgroup import PcGroup, PresentationError


class FormatError(ValueError):
    def __init__(self, line, msg):
        super().__init__(f"line {line}: {msg}" if line else msg)
        self.line = line


def _ints(tokens, line, what):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(line, f"{what}: expected integers, got {' '.join(tokens)!r}") from None


def parse_group(text: str, name="G") -> Group:
    header = None
    powers, comms, gamma, tails, phis = {}, {}, {}, {}, {}
    first_line = {}
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            vals = _ints(line.split(), ln, "header")
            if len(vals) != 3:
                raise FormatError(ln, "header must be 'p d m'")
            header = vals
            continue
        if ":" not in line:
            raise FormatError(ln, "expected 'keyword indices : values'")
        left, right = (s.strip() for s in line.split(":", 1))
        kw, *idx = left.split()
        idx = _ints(idx, ln, kw)
        p, d, m = header
        first_line.setdefault(kw, ln)

        def vec(tokens, what):
            v = _ints(tokens, ln, what)
            if len(v) != d:
                raise FormatError(ln, f"{what}: need {d} exponents, got {len(v)}")
            if any(not 0 <= e < p for e in v):
                raise FormatError(ln, f"{what}: exponents must lie in [0, {p})")
            return v

        def check_range(vals, hi):
            if any(not 1 <= v <= hi for v in vals):
                raise FormatError(ln, f"{kw}: index out of range 1..{hi}")

        if kw == "power":
            if len(idx) != 1:
                raise FormatError(ln, "power takes one index")
            check_range(idx, d)
            powers[idx[0] - 1] = (vec(right.split(), "power"), ln)
        elif kw == "commutator":
            if len(idx) != 2 or idx[0] <= idx[1]:
                raise FormatError(ln, "commutator takes indices j > i")
            check_range(idx, d)
            comms[(idx[0] - 1, idx[1] - 1)] = (vec(right.split(), "commutator"), ln)
        elif kw == "gamma":
            if len(idx) != 1:
                raise FormatError(ln, "gamma takes one index")
            check_range(idx, m)
            row = _ints(right.split(), ln, "gamma")
            if len(row) != m:
                raise FormatError(ln, f"gamma row needs {m} entries")
            check_range(row, m)
            gamma[idx[0] - 1] = ([v - 1 for v in row], ln)
        elif kw == "tail":
            if len(idx) != 2:
                raise FormatError(ln, "tail takes two indices")
            check_range(idx, m)
            tails[(idx[0] - 1, idx[1] - 1)] = (vec(right.split(), "tail"), ln)
        elif kw == "phi":
            if len(idx) != 1:
                raise FormatError(ln, "phi takes one index")
            check_range(idx, m)
            parts = [s.split() for s in right.split(";")]
            if len(parts) != d:
                raise FormatError(ln, f"phi needs {d} images separated by ';'")
            phis[idx[0] - 1] = ([vec(t, "phi image") for t in parts], ln)
        else:
            raise FormatError(ln, f"unknown keyword {kw!r}")
    if header is None:
        raise FormatError(0, "empty input")
    p, d, m = header
    missing = [i + 1 for i in range(d) if i not in powers]
    if missing:
        raise FormatError(0, f"missing power relations for generators {missing}")
    missing = [i + 1 for i in range(m) if i not in gamma]
    if missing:
        raise FormatError(0, f"missing gamma rows {missing}")
    try:
        N = PcGroup(p, d, [powers[i][0] for i in range(d)], {k: v for k, (v, _) in comms.items()})
    except PresentationError as e:
        raise FormatError(first_line.get("power", 0), f"inconsistent presentation: {e}") from None
    tail_tab = np.zeros((m, m), dtype=np.int64)
    for (i, j), (v, _) in tails.items():
        tail_tab[i, j] = N.index(v)
    imgs = []
    for i in range(m):
        if i in phis:
            imgs.append([N.index(v) for v in phis[i][0]])
        else:
            imgs.append([N.gen(g) for g in range(d)])
    try:
        return Group(N, [gamma[i][0] for i in range(m)], tail_tab.tolist(), imgs, name=name)
    except ExtensionError as e:
        ln = first_line.get("gamma", 0)
        raise FormatError(ln, f"inconsistent extension data (block starting here): {e}") from None


def format_group(G: Group) -> str:
    N = G.N
    lines = [f"# {G.name}", f"{N.p} {N.d} {G.m}"]

    def v(x):
        return " ".join(map(str, N.vector(int(x))))

    for i in range(N.d):
        lines.append(f"power {i + 1} : {' '.join(map(str, N.powers[i]))}")
    for (j, i), w in sorted(N.commutators.items()):
        lines.append(f"commutator {j + 1} {i + 1} : {' '.join(map(str, w))}")
    for i in range(G.m):
        lines.append(f"gamma {i + 1} : {' '.join(str(int(k) + 1) for k in G.gamma[i])}")
    for i in range(G.m):
        for j in range(G.m):
            if G.a[i, j]:
                lines.append(f"tail {i + 1} {j + 1} : {v(G.a[i, j])}")
    for i in range(1, G.m):
        imgs = [int(G.phi[i][N.gen(g)]) for g in range(N.d)]
        if imgs != [N.gen(g) for g in range(N.d)]:
            lines.append(f"phi {i + 1} : {' ; '.join(v(x) for x in imgs)}")
    return "\n".join(lines) + "\n"
