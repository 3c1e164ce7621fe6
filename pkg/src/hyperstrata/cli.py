"""Command line front end.

Every command prints one JSON document (``--format json``, the default) or a
plain table; ``poset`` can also emit DOT.  Exit codes: 0 success, 2 bad
input, 3 structural failure, 4 numeric budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .bounds import bound_report
from .combinatorics import (as_partition, enumerate_compositions,
                            enumerate_partitions, min_max_sets)
from .covering import (CAVEAT, canonical_reversal, enumerate_potential,
                       is_covering, solve)
from .exceptions import DomainError, HyperstrataError
from .numeric import (HyperbolicPoly, SolverConfig, random_realize,
                      realize_slice, reduce_symmetric, verify_min_max)
from .poset import analyze, annotate_min_max, build_poset, to_dot


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _table(rows, header=None) -> str:
    rows = [[str(c) for c in r] for r in rows]
    if header:
        rows = [list(header)] + rows
    if not rows:
        return ""
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows)


def _fmt(parts) -> str:
    return ",".join(map(str, parts))


def _load_json(text: str):
    """Inline JSON, or a path to a JSON file."""
    p = Path(text)
    try:
        if p.exists():
            return json.loads(p.read_text())
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"cannot parse JSON from {text!r}: {exc}") from exc


def _parse_partitions(values) -> list:
    out = []
    for v in values:
        for chunk in v.split(";"):
            if chunk.strip():
                out.append(as_partition(chunk))
    if not out:
        raise DomainError("no partitions given")
    return out


def _jobs(args) -> int:
    if args.jobs is not None:
        return args.jobs
    return int(os.environ.get("HYPERSTRATA_JOBS", "1"))


def _solver_config(args) -> SolverConfig:
    return SolverConfig(starts_per_part=args.starts, tol_sys=args.tol_sys,
                        tol_sep=args.tol_sep, escalations=args.escalations,
                        max_iter=args.max_iter,
                        seed=args.seed, n_jobs=_jobs(args))


# --------------------------------------------------------------------------
# commands


def cmd_enumerate(args) -> str:
    if args.kind == "compositions":
        items = enumerate_compositions(args.n, args.l)
    elif args.kind == "partitions":
        items = enumerate_partitions(args.n, args.l)
    else:
        s = args.s if args.s is not None else args.l
        if s is None:
            raise DomainError("--kind minmax needs --s")
        p_min, p_max, c_min, c_max = min_max_sets(args.n, s)
        if args.format == "table":
            return _table([["P_min", " ".join(_fmt(p) for p in p_min)],
                           ["P_max", " ".join(_fmt(p) for p in p_max)],
                           ["C_min", " ".join(_fmt(c) for c in c_min)],
                           ["C_max", " ".join(_fmt(c) for c in c_max)]])
        return _dump({"schema": "1", "n": args.n, "s": s,
                      "P_min": [list(p) for p in p_min], "P_max": [list(p) for p in p_max],
                      "C_min": [list(c) for c in c_min], "C_max": [list(c) for c in c_max]})
    if args.l is None:
        raise DomainError(f"--kind {args.kind} needs --l")
    if args.format == "table":
        return _table([[_fmt(x)] for x in items])
    return _dump({"schema": "1", "kind": args.kind, "n": args.n, "l": args.l,
                  "count": len(items), "items": [list(x) for x in items]})


def cmd_poset(args):
    facets = _load_json(args.facets)
    if isinstance(facets, dict):
        facets = facets.get("facets")
    if not isinstance(facets, list):
        raise DomainError("facets must be a JSON list of compositions")
    if args.format == "dot":
        return to_dot(annotate_min_max(build_poset(facets, args.n, args.s))), 0
    report = analyze(facets, args.n, args.s)
    code = 0 if report["potential"] and report.get("shelling_verified") else 3
    if args.format == "table":
        rows = [["potential", report["potential"]], ["f", report["f"]], ["h", report["h"]]]
        if report["potential"]:
            rows.append(["shelling", " ".join(_fmt(m) for m in report["shelling"])])
            rows.append(["verified", report["shelling_verified"]])
        else:
            rows.append(["failure", report["failure"]])
        return _table(rows), code
    return _dump(report), code


def cmd_bounds(args) -> str:
    rep = bound_report(args.n, args.s)
    if args.format == "table":
        return _table(list(rep.to_dict().items()))
    return _dump(rep.to_dict())


def cmd_cover_enumerate(args) -> str:
    fam = enumerate_potential(args.n, args.s, args.up_to_reversal,
                              n_jobs=_jobs(args), force=args.force)
    if args.format == "table":
        return _table([[" ".join(_fmt(m) for m in S)] for S in fam])
    return _dump({"schema": "1", "n": args.n, "s": args.s,
                  "up_to_reversal": args.up_to_reversal, "count": len(fam),
                  "facet_sets": [[list(m) for m in S] for S in fam]})


def cmd_cover_solve(args) -> str:
    inst = solve(args.n, args.s, args.method, n_jobs=_jobs(args), force=args.force)
    d = inst.to_dict()
    if args.format == "table":
        return _table([[k, v] for k, v in d.items()])
    return _dump(d)


def cmd_cover_check(args):
    P = _parse_partitions(args.partitions)
    fam = enumerate_potential(args.n, args.s, n_jobs=_jobs(args), force=args.force)
    ok, wit = is_covering(P, fam)
    uncovered = [[list(m) for m in S] for S, w in zip(fam, wit) if w is None]
    d = {"schema": "1", "n": args.n, "s": args.s, "partitions": [_fmt(q) for q in P],
         "covering": ok, "family_size": len(fam), "uncovered": uncovered, "caveat": CAVEAT}
    if args.format == "table":
        return _table([[k, v] for k, v in d.items()]), 0
    return _dump(d), 0


def cmd_realize(args):
    F = HyperbolicPoly.from_json(_load_json(args.poly))
    r = realize_slice(F, args.s, _solver_config(args))
    d = r.to_json()
    if r.generic:
        d["min_max"] = verify_min_max(r).to_json()
    d["seed"] = args.seed
    if args.format == "table":
        rows = [["generic", r.generic]]
        for mu in r.facet_labels:
            vs = r.vertices.get(mu) or r.degenerate.get(mu)
            for v in vs:
                rows.append([_fmt(mu), " ".join(f"{x:.12g}" for x in v.x)])
        return _table(rows), 0
    return _dump(d), 0


def cmd_search(args):
    facets = _load_json(args.facets)
    cfg = SolverConfig(starts_per_part=args.starts, escalations=min(args.escalations, 1),
                       tol_sys=args.tol_sys, tol_sep=args.tol_sep)
    res = random_realize(facets, args.n, args.s, budget=args.budget, seed=args.seed, config=cfg)
    d = {"schema": "1", "n": args.n, "s": args.s,
         "target": [list(m) for m in canonical_reversal(facets)], **res.to_json()}
    return _dump(d), 0 if res.witness is not None else 4


def cmd_reduce(args):
    system = _load_json(args.system)
    P = _parse_partitions(args.partitions)
    out = reduce_symmetric(system, args.n, P, certify=args.certify, seed=args.seed)
    return _dump({"schema": "1", "n": args.n, "systems": [r.to_json() for r in out]}), 0


# --------------------------------------------------------------------------
# parser


def _common(p: argparse.ArgumentParser, formats=("json", "table")) -> None:
    p.add_argument("--format", choices=formats, default="json")


def _globals(defaults: bool) -> argparse.ArgumentParser:
    """Flags accepted both before and after the subcommand.  Subcommand
    copies use SUPPRESS so they only override when given."""
    p = argparse.ArgumentParser(add_help=False)
    kw = {} if defaults else {"default": argparse.SUPPRESS}
    p.add_argument("--seed", type=int, **({"default": 0} if defaults else kw))
    p.add_argument("--jobs", type=int, **({"default": None} if defaults else kw),
                   help="worker processes (default: $HYPERSTRATA_JOBS or 1)")
    p.add_argument("-v", "--verbose", action="store_true", **kw)
    return p


def _numeric_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--starts", type=int, default=200, help="Newton starts per part")
    p.add_argument("--tol-sys", type=float, default=1e-9)
    p.add_argument("--tol-sep", type=float, default=1e-6)
    p.add_argument("--max-iter", type=int, default=80, help="Newton iterations per start")
    p.add_argument("--escalations", type=int, default=2,
                   help="times the start budget is multiplied by 4 before giving up")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperstrata", parents=[_globals(True)],
                                     description="Strata of hyperbolic slices and Vandermonde coverings.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    shared = [_globals(False)]

    p = sub.add_parser("enumerate", parents=shared, help="list compositions, partitions or min/max sets")
    p.add_argument("--kind", choices=("compositions", "partitions", "minmax"), default="compositions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int)
    p.add_argument("--s", type=int)
    _common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("poset", parents=shared, help="structural report for a facet set")
    p.add_argument("--facets", required=True, help="JSON list or path to a JSON file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    _common(p, ("json", "table", "dot"))
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("bounds", parents=shared, help="vertex and covering bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    _common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("cover", parents=shared, help="potential posets and Vandermonde coverings")
    csub = p.add_subparsers(dest="cover_command", required=True)
    for name, func in (("enumerate", cmd_cover_enumerate), ("solve", cmd_cover_solve),
                       ("check", cmd_cover_check)):
        q = csub.add_parser(name, parents=shared)
        q.add_argument("--n", type=int, required=True)
        q.add_argument("--s", type=int, required=True)
        q.add_argument("--force", action="store_true", help="ignore the scale guard")
        _common(q)
        q.set_defaults(func=func)
        if name == "enumerate":
            q.add_argument("--up-to-reversal", action="store_true")
        elif name == "solve":
            q.add_argument("--method", choices=("exact", "greedy"), default="exact")
        else:
            q.add_argument("--partitions", action="append", required=True,
                           help='e.g. "2,2,1,1"; repeat or separate with ";"')

    p = sub.add_parser("realize", parents=shared, help="solve a hyperbolic slice")
    p.add_argument("--poly", required=True, help="polynomial JSON or path")
    p.add_argument("--s", type=int, required=True)
    _numeric_flags(p)
    _common(p)
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("search", parents=shared, help="randomized realization of a facet set")
    p.add_argument("--facets", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--budget", type=int, default=400)
    _numeric_flags(p)
    p.set_defaults(func=cmd_search, starts=60, format="json")

    p = sub.add_parser("reduce", parents=shared, help="reduce a symmetric system over partitions")
    p.add_argument("--system", required=True, help="system JSON or path")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--partitions", action="append", required=True)
    p.add_argument("--certify", action="store_true")
    p.set_defaults(func=cmd_reduce, format="json")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        out = args.func(args)
    except HyperstrataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DomainError.exit_code
    code = 0
    if isinstance(out, tuple):
        out, code = out
    sys.stdout.write(out if out.endswith("\n") else out + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
