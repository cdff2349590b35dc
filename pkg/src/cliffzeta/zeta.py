"""Representation zeta polynomials assembled from Clifford data.

A finite Dirichlet polynomial sum_n c_n n^-s is stored as {n: c_n}.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .characters import Characters
from .cohomology import TopGroup, class_eq, class_of_pair
from .projective import projective_irreducibles, root_modulus


class DirichletPoly:
    """Finite Dirichlet polynomial with non-negative integer coefficients."""

    def __init__(self, coeffs=None):
        self.c = {}
        for n, v in (coeffs or {}).items():
            if v:
                self.c[int(n)] = v

    def __repr__(self):
        return f"DirichletPoly({dict(sorted(self.c.items()))})"

    def __str__(self):
        if not self.c:
            return "0"
        return " + ".join(f"{v}*{n}^-s" for n, v in sorted(self.c.items()))

    def __eq__(self, other):
        return isinstance(other, DirichletPoly) and self.c == other.c

    def __hash__(self):
        return hash(tuple(sorted(self.c.items())))

    def __add__(self, other):
        out = dict(self.c)
        for n, v in other.c.items():
            out[n] = out.get(n, 0) + v
        return DirichletPoly(out)

    def __mul__(self, other):
        """Dirichlet convolution, or scaling by a number."""
        if not isinstance(other, DirichletPoly):
            return DirichletPoly({n: v * other for n, v in self.c.items()})
        out = {}
        for a, u in self.c.items():
            for b, v in other.c.items():
                out[a * b] = out.get(a * b, 0) + u * v
        return DirichletPoly(out)

    __rmul__ = __mul__

    def shift(self, k):
        """n^-s -> (k n)^-s."""
        return DirichletPoly({n * k: v for n, v in self.c.items()})

    def integral(self):
        """Same polynomial with integer coefficients (raises if impossible)."""
        out = {}
        for n, v in self.c.items():
            v = Fraction(v)
            if v.denominator != 1:
                raise ArithmeticError(f"coefficient of {n}^-s is {v}, not an integer")
            out[n] = int(v)
        return DirichletPoly(out)

    def items(self):
        return sorted(self.c.items())

    def value_at(self, s):
        return sum(v * n ** (-s) for n, v in self.c.items())

    def count(self):
        return sum(self.c.values())

    def sum_squares(self):
        return sum(v * n * n for n, v in self.c.items())

    def to_list(self):
        return [[n, int(v)] for n, v in self.items()]

    @classmethod
    def from_list(cls, rows):
        return cls({int(n): int(v) for n, v in rows})

    @classmethod
    def from_degrees(cls, degs):
        out = {}
        for d in degs:
            out[d] = out.get(d, 0) + 1
        return cls(out)


# -- per-group Clifford data --------------------------------------------------


@dataclass
class Term:
    """One block of the assembly: the characters theta with stabiliser K and a
    common class at the Sylow p-part of K."""

    K: tuple
    members: list                 # indices into irr_N
    f: DirichletPoly              # degrees of PIrr_{-alpha}(K/N)
    cls: object = None            # class at K_p
    extra: dict = field(default_factory=dict)


class Clifford:
    """Clifford-theoretic data of G over N."""

    def __init__(self, G):
        self.G = G
        self.chars = Characters(G)
        self.W = G.exponent
        self.E = root_modulus(G)
        self._pairs = {}
        self._f = {}

    @property
    def irr(self):
        return self.chars.irr_N

    def K_of(self, a):
        return self.chars.stabilizers[a][0]

    def L_of(self, a):
        return self.chars.stabilizers[a][1]

    def pair_at(self, X, a, rng=None):
        key = (tuple(X), a)
        if rng is not None:
            return self.chars.pair_at(X, self.irr[a], rng=rng)
        if key not in self._pairs:
            self._pairs[key] = self.chars.pair_at(X, self.irr[a])
        return self._pairs[key]

    def class_at(self, X, a, rng=None):
        return class_of_pair(self.pair_at(X, a, rng), self.W)

    def sylow_p(self, K):
        return self.G.sylow_part(K, self.G.p)

    def pirr(self, a):
        """Irreducible (-alpha)-projective characters of K/N, K the stabiliser."""
        K = self.K_of(a)
        alpha = self.class_at(K, a)
        return projective_irreducibles(TopGroup(self.G, K), -alpha, self.E)

    def f(self, a):
        if a not in self._f:
            self._f[a] = DirichletPoly.from_degrees(pc.degree for pc in self.pirr(a))
        return self._f[a]

    @cached_property
    def terms(self):
        """Blocks of irr_N sharing K and the class at K_p."""
        byK = {}
        for a in range(len(self.irr)):
            byK.setdefault(self.K_of(a), []).append(a)
        out = []
        for K in sorted(byK, key=lambda k: (len(k), k)):
            Kp = self.sylow_p(K)
            blocks = []
            for a in byK[K]:
                c = self.class_at(Kp, a)
                for blk in blocks:
                    if class_eq(blk.cls, c):
                        blk.members.append(a)
                        break
                else:
                    blocks.append(Term(K, [a], None, c))
            for blk in blocks:
                blk.f = self.f(blk.members[0])
            out.extend(blocks)
        return out


def partial_series(cl: Clifford, term: Term) -> DirichletPoly:
    """sum over theta in the block of theta(1)^-s."""
    return DirichletPoly.from_degrees(cl.irr[a].degree for a in term.members)


def assemble(G, cl: Clifford | None = None) -> DirichletPoly:
    """Z_G(s) = sum_theta |G:K|^(-s-1) theta(1)^-s f(K, N, theta)."""
    cl = cl or Clifford(G)
    total = DirichletPoly()
    for term in cl.terms:
        idx = G.m // len(term.K)
        part = (partial_series(cl, term) * term.f).shift(idx)
        total = total + part * Fraction(1, idx)
    return total.integral()


def completeness(cl: Clifford):
    """(sum of theta(1)^2, |N|) and (number of pairs, number of classes of N)."""
    sq = sum(p.degree ** 2 for p in cl.irr)
    return sq, cl.G.N.order


# -- the twisted version --------------------------------------------------------


def twist_data(cl: Clifford, a, rng=None):
    from .twisting import TwistData
    return TwistData(cl, a, rng=rng)


def f_twist(cl: Clifford, a, rng=None) -> DirichletPoly:
    """f~(L, N, theta~): one term (|L:K| pi(1))^-s per orbit of projective
    characters under the twisting action."""
    td = twist_data(cl, a, rng)
    k = len(td.L) // len(td.K)
    return DirichletPoly.from_degrees(k * d for d in td.orbit_degrees())


def twist_class_reps(cl: Clifford):
    """(representative, members) for the classes of irr_N under Lin(G)|_N."""
    groups = {}
    for a, lab in enumerate(cl.chars._twist_action):
        groups.setdefault(lab, []).append(a)
    return [(members[0], members) for _, members in sorted(groups.items())]


def assemble_twist(G, cl: Clifford | None = None) -> DirichletPoly:
    """Z~_G(s) = sum over twist classes theta~ of |G:L|^(-s-1) theta(1)^-s f~."""
    cl = cl or Clifford(G)
    total = DirichletPoly()
    for a, _ in twist_class_reps(cl):
        idx = G.m // len(cl.L_of(a))
        part = f_twist(cl, a).shift(idx * cl.irr[a].degree)
        total = total + part * Fraction(1, idx)
    return total.integral()


# -- towers and rational fits --------------------------------------------------------


def coefficient_table(poly: DirichletPoly, p: int):
    """{k: coefficient of (p^k)^-s}; raises if a degree is not a power of p."""
    out = {}
    for n, v in poly.items():
        k, m = 0, n
        while m % p == 0:
            m //= p
            k += 1
        if m != 1:
            raise ValueError(f"degree {n} is not a power of {p}")
        out[k] = v
    return out


def tower_series(family: str, p: int, levels, mode: str = "twist"):
    """Coefficient tables r_{p^k} of the (twist) zeta polynomial per level."""
    from .corpus import cyclic_tower, heisenberg_tower
    build = {"heisenberg": heisenberg_tower, "cyclic": cyclic_tower}[family]
    fn = {"twist": assemble_twist, "zeta": assemble}[mode]
    return {m: coefficient_table(fn(build(p, m)), p) for m in levels}


def stabilized(table):
    """Coefficients a_k, k < top level, checked to agree across every level above k."""
    top = max(table)
    out = []
    for k in range(top):
        vals = {table[m].get(k, 0) for m in table if m > k}
        if len(vals) != 1:
            raise ArithmeticError(f"coefficient {k} has not stabilised: {sorted(vals)}")
        out.append(vals.pop())
    return out


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            out[i + j] += u * v
    return out


@dataclass(frozen=True)
class RationalFit:
    """numerator(t) / prod (1 - p^i t^j) over the listed factors (i, j)."""

    p: int
    numerator: tuple
    factors: tuple

    def denominator(self):
        d = [Fraction(1)]
        for i, j in self.factors:
            d = _poly_mul(d, [Fraction(1)] + [Fraction(0)] * (j - 1) + [-Fraction(self.p) ** i])
        return tuple(d)

    def series(self, n):
        """First n coefficients of the expansion."""
        den = self.denominator()
        num = list(self.numerator) + [Fraction(0)] * n
        out = []
        for k in range(n):
            c = num[k] - sum(den[i] * out[k - i] for i in range(1, min(k, len(den) - 1) + 1))
            out.append(c)
        return out

    def __str__(self):
        def poly(cs):
            terms = []
            for k, c in enumerate(cs):
                if c == 0:
                    continue
                mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
                mag = abs(c)
                coef = str(mag) if (mag != 1 or not mono) else ""
                sign = "-" if c < 0 else "+"
                terms.append((sign, coef + mono))
            if not terms:
                return "0"
            s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
            for sign, t in terms[1:]:
                s += f" {sign} {t}"
            return s
        den = " ".join(f"(1 - {Fraction(self.p) ** i}{'t' if j == 1 else f't^{j}'})" for i, j in self.factors)
        return f"({poly(self.numerator)}) / {den or '1'}"


def rational_fit(coeffs, p, max_factors=2, exponents=range(-2, 4), degrees=(1, 2)):
    """Smallest N(t) / prod (1 - p^i t^j) reproducing the given coefficients.

    The numerator may have degree at most len(coeffs) - 2, so at least one
    coefficient is a genuine check.  Preference: fewest factors, then lowest
    denominator degree, then lowest numerator degree.
    """
    import itertools
    a = [Fraction(c) for c in coeffs]
    n = len(a)
    shapes = [(i, j) for j in degrees for i in exponents]
    best = None
    for nf in range(max_factors + 1):
        for fac in itertools.combinations_with_replacement(shapes, nf):
            fit = RationalFit(p, (), fac)
            num = _poly_mul(a, list(fit.denominator()))[:n]
            while num and num[-1] == 0:
                num.pop()
            if len(num) - 1 > n - 2:
                continue
            score = (nf, sum(j for _, j in fac), len(num))
            if best is None or score < best[0]:
                num = tuple(int(c) if c.denominator == 1 else c for c in num)
                best = (score, RationalFit(p, num, fac))
        if best is not None:
            break
    return None if best is None else best[1]
