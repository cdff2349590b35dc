"""Versioned JSON records for computation output.

Schema ``cliffzeta.record/1``::

    {"schema": "cliffzeta.record/1",
     "kind": str,                      # zeta, twist-zeta, partial, invariants, tower
     "group": str, "normal": str | null,
     "params": {...},                  # K, L, gamma_index, class ids, levels, ...
     "poly": [[degree, count], ...] | null,
     "fit": {"p": int, "numerator": [[num, den], ...], "factors": [[i, j], ...]} | null,
     "data": {...},                    # kind-specific payload, plain JSON
     "provenance": {"tool": "cliffzeta", "version": str, "seed": int | null}}
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .zeta import DirichletPoly, RationalFit

SCHEMA = "cliffzeta.record/1"


class RecordError(ValueError):
    pass


@dataclass
class OutputRecord:
    kind: str
    group: str
    normal: str | None = None
    params: dict = field(default_factory=dict)
    poly: DirichletPoly | None = None
    fit: RationalFit | None = None
    data: dict = field(default_factory=dict)
    seed: int | None = None
    version: str = __version__

    def to_dict(self):
        fit = None
        if self.fit is not None:
            fit = {"p": self.fit.p,
                   "numerator": [[Fraction(c).numerator, Fraction(c).denominator] for c in self.fit.numerator],
                   "factors": [list(f) for f in self.fit.factors]}
        return {
            "schema": SCHEMA,
            "kind": self.kind,
            "group": self.group,
            "normal": self.normal,
            "params": self.params,
            "poly": None if self.poly is None else self.poly.to_list(),
            "fit": fit,
            "data": self.data,
            "provenance": {"tool": "cliffzeta", "version": self.version, "seed": self.seed},
        }

    def to_json(self, indent=None):
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, d):
        if d.get("schema") != SCHEMA:
            raise RecordError(f"unknown schema {d.get('schema')!r}")
        fit = None
        if d.get("fit") is not None:
            f = d["fit"]
            num = []
            for a, b in f["numerator"]:
                q = Fraction(a, b)
                num.append(int(q) if q.denominator == 1 else q)
            fit = RationalFit(int(f["p"]), tuple(num), tuple(tuple(x) for x in f["factors"]))
        prov = d.get("provenance", {})
        return cls(kind=d["kind"], group=d["group"], normal=d.get("normal"), params=d.get("params", {}),
                   poly=None if d.get("poly") is None else DirichletPoly.from_list(d["poly"]),
                   fit=fit, data=d.get("data", {}), seed=prov.get("seed"),
                   version=prov.get("version", __version__))

    @classmethod
    def from_json(cls, text):
        try:
            d = json.loads(text)
        except json.JSONDecodeError as e:
            raise RecordError(str(e)) from None
        return cls.from_dict(d)

    def text(self):
        """Human-readable rendering."""
        head = f"{self.kind} {self.group}" + (f"/{self.normal}" if self.normal else "")
        if self.params:
            head += " " + " ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        lines = [head]
        if self.poly is not None:
            lines.append(f"  {self.poly}")
        for k, v in self.data.items():
            if isinstance(v, list):
                lines.append(f"  {k}:")
                lines.extend(f"    {row}" for row in v)
            else:
                lines.append(f"  {k}: {v}")
        if self.fit is not None:
            lines.append(f"  fit: {self.fit}")
        return "\n".join(lines)
