"""Command line entry point.

Exit codes: 0 success, 1 a check failed (report carries witnesses), 2 bad
parameters, 3 an enumeration bound was exceeded (rerun with ``--force``).
"""
from __future__ import annotations

import argparse
import json
import sys

from .checks import SUITES, run_suite
from .cover import ext_table, hom_table
from .derived import (WindowParams, build_window, fractional_cy_check, power_decomposition,
                      region_to_module_quiver, serre_window_check, verify_derived_iso)
from .embedding import band_selection, band_subquiver, embed, verify_quotient
from .orbit_model import band_topology, build_gamma, domain_sizes
from .polygon import ModelParams
from .quiver import to_dot, to_json
from .tilting import fuss_catalan, mutation_graph, tilting_objects

TILT_BOUND = 10 ** 5
BUILD_VERTEX_CAP = 20_000


class UsageError(Exception):
    pass


class BoundExceeded(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _summary(line: str, args) -> None:
    # counts go to stdout when the artifact goes to a file, stderr otherwise
    print(line, file=sys.stdout if args.out else sys.stderr)


def _params(args) -> ModelParams:
    if args.n is None:
        raise UsageError("--n is required")
    try:
        return ModelParams(args.n, args.m, args.p)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_build(args) -> int:
    P = _params(args)
    if P.vertex_count > BUILD_VERTEX_CAP and not args.force:
        raise BoundExceeded(f"{P.vertex_count} vertices exceeds the cap {BUILD_VERTEX_CAP} "
                         "(use --force)")
    q = build_gamma(P)
    if args.format == "dot":
        clusters = {v: f"region {v.k}" for v in q.vertices} if P.p > 1 else None
        _emit(to_dot(q, "gamma", clusters), args.out)
    else:
        data = to_json(q)
        data["domain_sizes"] = {str(k): v for k, v in domain_sizes(q).items()}
        data["band_topology"] = band_topology(q).value
        _emit(_dump(data), args.out)
    _summary(f"vertices={len(q.vertices)} arrows={len(q.arrows)}", args)
    return 0


def cmd_check(args) -> int:
    if args.n is not None:
        _params(args)
    if args.suite == "embedding" and args.n is not None:
        try:
            band_selection(args.n, args.p)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    try:
        report = run_suite(args.suite, args.n,
                           args.m if args.n is not None else None,
                           args.p if args.n is not None else None)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(_dump(report), args.out)
    status = "pass" if report["passed"] else "FAIL"
    print(f"suite {args.suite}: {status}", file=sys.stderr)
    return 0 if report["passed"] else 1


def cmd_ext(args) -> int:
    P = _params(args)
    if args.kind == "hom":
        table = hom_table(P, "hammock" if args.method == "hammock" else "cover")
    else:
        if args.method == "crossing" and P.m != 1:
            raise UsageError("--method crossing needs m = 1")
        if not 1 <= args.degree <= P.m:
            raise UsageError(f"--degree must lie in 1..m = 1..{P.m}")
        table = ext_table(P, args.degree, "crossing" if args.method == "crossing" else "cover")
    _emit(_dump(table), args.out)
    return 0


def cmd_tilt(args) -> int:
    P = _params(args)
    estimate = fuss_catalan(P.n, P.m)
    if estimate > TILT_BOUND and not args.force:
        raise BoundExceeded(f"estimated {estimate} angulations exceeds the bound "
                            f"{TILT_BOUND} (use --force)")
    if args.mutation_graph:
        g = mutation_graph(P)
        text = g.to_dot() if args.format == "dot" else _dump(g.to_dict())
        _emit(text, args.out)
        _summary(f"nodes={len(g.nodes)} edges={len(g.edges)} connected={g.connected}", args)
        return 0
    objects = tilting_objects(P)
    data = {"params": P.to_dict(), "count": len(objects),
            "summands_each": P.p * P.n, "objects": [t.to_json() for t in objects]}
    _emit(_dump(data), args.out)
    _summary(f"objects={len(objects)} summands={P.p * P.n}", args)
    return 0


def cmd_embed(args) -> int:
    if args.n is None:
        raise UsageError("--n is required")
    try:
        sel = band_selection(args.n, args.p)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "dot":
        _emit(to_dot(band_subquiver(sel), "band"), args.out)
        return 0
    e = embed(args.n, args.p)
    data = e.to_dict()
    data["quotient"] = verify_quotient(args.n, args.p)
    _emit(_dump(data), args.out)
    ok = e.gluing["passed"] and data["quotient"]["passed"]
    _summary(f"t={sel.t} band_vertices={e.band_vertices} passed={ok}", args)
    return 0 if ok else 1


def cmd_derived(args) -> int:
    if args.n is None:
        raise UsageError("--n is required")
    try:
        w = WindowParams(args.n + 1, args.p, args.odd)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    q = build_window(w)
    if args.format == "dot":
        _emit(to_dot(q, "window", {v: f"region {v[2]}" for v in q.vertices}), args.out)
        return 0
    _, labels = region_to_module_quiver(w, 0)
    data = {"window": to_json(q),
            "root_labels": [[list(v), list(r)] for v, r in sorted(labels.items())]}
    report = {}
    if w.half_width >= 2:
        report = {"isomorphism": verify_derived_iso(w), "fractional_cy": fractional_cy_check(w),
                  "serre": serre_window_check(w)}
        data["report"] = report
    _emit(_dump(data), args.out)
    ok = all(r["passed"] for r in report.values())
    _summary(f"vertices={len(q.vertices)} arrows={len(q.arrows)} passed={ok}", args)
    return 0 if ok else 1


def cmd_power(args) -> int:
    if args.n is None or args.n < 1:
        raise UsageError("n must be a positive integer")
    report = power_decomposition(args.n)
    _emit(_dump(report), args.out)
    return 0 if report["passed"] else 1


COMMANDS = {"build": cmd_build, "check": cmd_check, "ext": cmd_ext, "tilt": cmd_tilt,
            "embed": cmd_embed, "derived": cmd_derived, "power": cmd_power}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="repcluster",
        description="Diagonal models of repetitive higher cluster categories of type A.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--m", type=int, default=1)
    common.add_argument("--p", type=int, default=1)
    common.add_argument("--format", choices=("json", "dot"), default="json")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--force", action="store_true", help="lift desk-scale caps")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common], help="build the diagonal quiver")
    check = sub.add_parser("check", parents=[common], help="run an invariant suite")
    check.add_argument("--suite", choices=SUITES, default="all")
    ext = sub.add_parser("ext", parents=[common], help="Hom/Ext tables between diagonals")
    ext.add_argument("--kind", choices=("ext", "hom"), default="ext")
    ext.add_argument("--degree", type=int, default=1)
    ext.add_argument("--method", choices=("cover", "crossing", "hammock"), default="cover")
    tilt = sub.add_parser("tilt", parents=[common], help="enumerate cluster-tilting objects")
    tilt.add_argument("--mutation-graph", action="store_true")
    sub.add_parser("embed", parents=[common], help="band embedding into one polygon")
    derived = sub.add_parser("derived", parents=[common],
                             help="window of the derived model (rank n+1, regions -p..p)")
    derived.add_argument("--odd", action="store_true", help="use odd-numbered vertices")
    sub.add_parser("power", parents=[common], help="square of a polygon's diagonal quiver")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BoundExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
