"""Command-line interface: ``cliffzeta group|compute|verify|tower``."""
from __future__ import annotations

import argparse
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from .cohomology import class_eq, is_coboundary2
from .corpus import CATALOGUE, build, describe, random_transversal
from .records import OutputRecord
from .textformat import FormatError, format_group, parse_group
from .twisting import TwistData, lin_quotient_rows, t_is_trivial
from .zeta import (Clifford, assemble, assemble_twist, partial_series, rational_fit,
                   stabilized, tower_series, twist_class_reps)

WORKERS_ENV = "CLIFFZETA_WORKERS"


def _emit(records, as_json):
    for r in records:
        print(r.to_json() if as_json else r.text())


# -- group ------------------------------------------------------------------------


def cmd_group(args, parser):
    if args.action == "list":
        for gid in CATALOGUE:
            d = describe(gid)
            print(f"{gid:8s} order {d['order']:4d}  normal: {', '.join(d['normal'])}  {d['description']}")
        return 0
    if args.action == "show":
        if args.target not in CATALOGUE:
            parser.error(f"unknown group {args.target!r}")
        d = describe(args.target)
        print(f"{d['id']}: order {d['order']}, primes {d['primes']}")
        if d["description"]:
            print(f"  {d['description']}")
        for n in d["normal"]:
            G = build(args.target, n)
            print(f"  normal {n}: p = {G.p}, |N| = {G.N.order}, |G:N| = {G.m}")
        return 0
    try:
        with open(args.target) as fh:
            G = parse_group(fh.read(), name=os.path.basename(args.target))
    except FormatError as e:
        print(f"{args.target}: {e}", file=sys.stderr)
        return 2
    print(f"{G.name}: order {G.order}, p = {G.p}, |N| = {G.N.order}, |G:N| = {G.m}")
    if args.echo:
        print(format_group(G), end="")
    return 0


# -- compute ---------------------------------------------------------------------------


def _load(args, parser):
    if args.file:
        if args.group:
            parser.error("give either --group or --file")
        try:
            with open(args.file) as fh:
                G = parse_group(fh.read(), name=os.path.basename(args.file))
        except FormatError as e:
            parser.error(f"{args.file}: {e}")
        return G, G.name, None
    if not args.group:
        parser.error("--group or --file is required")
    if args.group not in CATALOGUE:
        parser.error(f"unknown group {args.group!r}")
    normals = CATALOGUE[args.group].normals
    normal = args.normal or next(iter(normals))
    if normal not in normals:
        parser.error(f"{args.group} has no normal subgroup {normal!r} (have {', '.join(normals)})")
    G = build(args.group, normal)
    if args.seed is not None:
        G = random_transversal(G, random.Random(args.seed))
    return G, args.group, normal


def _parse_K(text, G, parser):
    try:
        K = tuple(sorted(int(x) for x in text.split(",")))
    except ValueError:
        parser.error(f"--K expects comma-separated top indices, got {text!r}")
    if any(not 0 <= k < G.m for k in K):
        parser.error(f"--K indices must lie in 0..{G.m - 1}")
    return K


def _class_ids(cl):
    """Per theta: id of its class at K among thetas with the same K (0 = trivial)."""
    ids = {}
    seen = {}
    for a in range(len(cl.irr)):
        K = cl.K_of(a)
        c = cl.class_at(K, a)
        reps = seen.setdefault(K, [])
        if is_coboundary2(c):
            ids[a] = 0
            continue
        for j, r in enumerate(reps):
            if class_eq(r, c):
                ids[a] = j + 1
                break
        else:
            reps.append(c)
            ids[a] = len(reps)
    return ids


def _fraction_rows(poly_dict):
    return [[n, str(Fraction(v))] for n, v in sorted(poly_dict.items())]


def cmd_compute(args, parser):
    if args.kind != "partial" and (args.K is not None or args.cls is not None):
        parser.error("--K and --class apply to 'compute partial' only")
    G, gid, normal = _load(args, parser)
    base = dict(group=gid, normal=normal, seed=args.seed)
    if args.kind == "zeta":
        recs = [OutputRecord("zeta", poly=assemble(G), **base)]
    elif args.kind == "twist-zeta":
        recs = [OutputRecord("twist-zeta", poly=assemble_twist(G), **base)]
    elif args.kind == "partial":
        recs = _partials(G, args, parser, base)
    else:
        recs = [_invariants(G, base)]
    _emit(recs, args.json)
    return 0


def _partials(G, args, parser, base):
    cl = Clifford(G)
    K_want = None if args.K is None else _parse_K(args.K, G, parser)
    ids = _class_ids(cl)
    recs = []
    for term in cl.terms:
        if K_want is not None and term.K != K_want:
            continue
        cid = ids[term.members[0]]
        if args.cls is not None and cid != args.cls:
            continue
        idx = G.m // len(term.K)
        part = (partial_series(cl, term) * term.f).shift(idx) * Fraction(1, idx)
        params = {"K": list(term.K), "class": cid, "members": term.members}
        data = {"f": term.f.to_list()}
        try:
            poly = part.integral()
        except ArithmeticError:
            poly = None
            data["weighted"] = _fraction_rows(part.c)
        recs.append(OutputRecord("partial", params=params, poly=poly, data=data, **base))
    if not recs:
        parser.error("no block matches the given --K/--class")
    return recs


def _invariants(G, base):
    cl = Clifford(G)
    ids = _class_ids(cl)
    rows = []
    for rep, members in twist_class_reps(cl):
        td = TwistData(cl, rep)
        lin = len(lin_quotient_rows(cl, td.K))
        t_triv = t_is_trivial(td.t_class())
        for a in members:
            rows.append({"theta": a, "degree": cl.irr[a].degree, "K": list(cl.K_of(a)),
                         "L": list(cl.L_of(a)), "class": ids[a], "twist_class": rep,
                         "gamma_index": lin // len(td.gamma), "T_trivial": t_triv})
    data = {"thetas": [" ".join(f"{k}={v}" for k, v in r.items()) for r in rows]}
    return OutputRecord("invariants", params={"N_order": G.N.order, "index": G.m}, data=data, **base)


# -- verify -------------------------------------------------------------------------------


def _run_suite(name):
    from .verify import SUITES
    return SUITES[name]()


def cmd_verify(args, parser):
    from .verify import SUITES
    names = list(SUITES) if args.suite == "all" else [args.suite]
    workers = int(os.environ.get(WORKERS_ENV, "1") or 1)
    if workers > 1 and len(names) > 1:
        with ProcessPoolExecutor(workers) as ex:
            reports = list(ex.map(_run_suite, names))
    else:
        reports = [_run_suite(n) for n in names]
    status = 0
    for rep in reports:
        print(rep.line())
        for note in rep.notes if args.verbose else []:
            print(f"  {note}")
        if not rep.ok:
            print(f"  first failure: {rep.violations[0]}")
            status = 1
    return status


# -- tower ----------------------------------------------------------------------------------


def cmd_tower(args, parser):
    if args.levels < 2:
        parser.error("--levels must be at least 2")
    mode = "twist" if args.twist else "zeta"
    table = tower_series(args.family, args.p, range(1, args.levels + 1), mode)
    data = {"coefficients": [f"level {m}: " + " ".join(f"{table[m].get(k, 0)}" for k in range(max(table[m]) + 1))
                             for m in sorted(table)]}
    fit = None
    status = 0
    if args.fit:
        try:
            coeffs = stabilized(table)
        except ArithmeticError as e:
            print(f"no stable coefficients: {e}", file=sys.stderr)
            return 1
        data["stable"] = " ".join(map(str, coeffs))
        fit = rational_fit(coeffs, args.p)
        if fit is None:
            data["fit"] = "none within the search bounds"
            status = 1
    rec = OutputRecord("tower", group=f"{args.family}(p={args.p})",
                       params={"levels": args.levels, "mode": mode}, fit=fit, data=data)
    _emit([rec], args.json)
    return status


# -- entry point ------------------------------------------------------------------------------


def build_parser():
    from .verify import SUITES
    p = argparse.ArgumentParser(prog="cliffzeta", description=__doc__)
    p.add_argument("--version", action="version", version=f"cliffzeta {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", help="corpus catalogue and presentation files")
    g.add_argument("action", choices=["list", "show", "load"])
    g.add_argument("target", nargs="?")
    g.add_argument("--echo", action="store_true", help="print the parsed presentation back")

    c = sub.add_parser("compute", help="zeta polynomials and invariants")
    c.add_argument("kind", choices=["zeta", "twist-zeta", "partial", "invariants"])
    c.add_argument("--group")
    c.add_argument("--normal")
    c.add_argument("--file", help="presentation file instead of a catalogue group")
    c.add_argument("--K", help="comma-separated top indices of the stabiliser (partial only)")
    c.add_argument("--class", dest="cls", type=int, help="class id at K (partial only)")
    c.add_argument("--seed", type=int, help="re-pick the transversal with this seed")
    c.add_argument("--json", action="store_true")

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("suite", choices=["all", *SUITES])
    v.add_argument("-v", "--verbose", action="store_true")

    t = sub.add_parser("tower", help="coefficients along a family and a rational fit")
    t.add_argument("--family", choices=["heisenberg", "cyclic"], default="heisenberg")
    t.add_argument("--p", type=int, default=3)
    t.add_argument("--levels", type=int, default=3)
    t.add_argument("--fit", action="store_true")
    t.add_argument("--twist", action="store_true", help="twist zeta instead of zeta")
    t.add_argument("--json", action="store_true")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "group":
        if args.action in ("show", "load") and not args.target:
            parser.error(f"group {args.action} needs an argument")
        return cmd_group(args, parser)
    handler = {"compute": cmd_compute, "verify": cmd_verify, "tower": cmd_tower}[args.command]
    return handler(args, parser)


if __name__ == "__main__":
    sys.exit(main())
