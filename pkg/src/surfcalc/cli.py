"""Command-line front end: ``surfcalc <area> <command> [options]``.

Exit status is 0 on success, 1 on a domain error (with a JSON error object
on stderr) and 2 on a usage error or unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import classify, config, cubic27, fibration, golden, scroll
from .errors import SurfcalcError
from .lattice import parse_rational


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _pair(text: str) -> tuple[int, int]:
    vals = _ints(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError(f"expected two integers d,e, got {text!r}")
    return vals[0], vals[1]


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational, got {text!r}")


def _load(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc}")


def _load_config(path: str) -> config.CurveConfig:
    data = _load(path)
    try:
        return config.CurveConfig.from_json(data)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"bad curve configuration in {path}: {exc}")


def _load_fibration(path: str) -> fibration.FibrationSpec:
    data = _load(path)
    try:
        return fibration.FibrationSpec.from_json(data)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"bad fibration in {path}: {exc}")


# -- handlers ----------------------------------------------------------------


def _cubic(args):
    S = cubic27.enumerate_lines()
    if args.cmd == "lines":
        return [{"label": lab, "coords": list(v.coords)} for lab, v in zip(S.labels, S.lines)]
    if args.cmd == "triangles":
        return [[S.labels[i] for i in t] for t in cubic27.triangles(S)]
    if args.cmd == "doublesixes":
        return [[[S.labels[i] for i in l], [S.labels[i] for i in m]] for l, m in cubic27.double_sixes(S)]
    if args.cmd == "roots":
        return [list(r.coords) for r in cubic27.roots()]
    return cubic27.incidence_automorphism_order(cubic27.incidence_graph(S))


def _divisor(args) -> scroll.ScrollDivisor:
    d, e = args.bidegree
    return scroll.ScrollDivisor(e, d)


def _scroll(args):
    if args.cmd == "maroni":
        return scroll.maroni_admissible(args.genus)
    if args.cmd == "cubicrange":
        return scroll.relative_cubic_range(args.k)
    F = scroll.ScrollSpec(tuple(args.twists))
    if args.cmd == "h0":
        return scroll.h0(F, _divisor(args))
    if args.cmd == "baselocus":
        D = _divisor(args)
        if args.b is None:
            if D.d != 1:
                raise UsageError("--b is required unless d = 1")
            return {"base_locus_twists": scroll.linear_base_locus(F, D.e)}
        return {
            "b": args.b,
            "multiplicity": scroll.base_multiplicity(F, D, args.b),
        }
    if args.cmd == "canon":
        K = scroll.canonical_class(F)
        return {"e": K.e, "d": K.d}
    factors = [scroll.ScrollDivisor(e, d) for d, e in args.factor]
    return scroll.top_intersection(F, factors)


def _config(args):
    C = _load_config(args.input)
    if args.cmd == "zcycle":
        z = config.numerical_cycle(C)
        return {"z": list(z), "z_squared": C.dot(z, z), "names": list(C.names)}
    if args.cmd == "ade":
        return config.classify_ADE(C)
    if args.cmd == "classify":
        return config.classify_singularity(C, args.bound_factor)
    if args.cmd == "connected":
        return config.is_k_connected(C, args.cycle, args.k)
    A = config.Ambient.from_config(C)
    if args.cmd == "zariski":
        D = A.vector(args.divisor)
        return config.zariski_decomposition(A, D)
    D = C.lattice.vector(args.divisor)
    r = config.mobile_reduction(A, D, k3_mode=not args.no_k3)
    return {"M": list(r.mobile.coords), "F": list(r.fixed.coords),
            "steps": list(r.steps), "monogonal": r.monogonal}


def _fib(args):
    if args.cmd == "torsion":
        return fibration.torsion_multisets(args.parts_max)
    if args.cmd == "p12":
        return fibration.p12_le1_multisets(args.cap)
    F = _load_fibration(args.input)
    if args.cmd == "delta":
        delta = fibration.delta_of(F)
        return {"delta": delta, "nu_kappa": fibration.nu_kappa(delta)}
    if args.cmd == "pm":
        return fibration.plurigenus(fibration.delta_of(F), args.m)
    delta = fibration.wild_equivalent(F)
    return {"delta": delta, "nu_kappa": fibration.nu_kappa(delta)}


def _classify(args):
    if args.cmd == "table":
        return classify.famous_table()
    if args.cmd == "invariants":
        return classify.regular_invariants(args.chi, args.k2)
    if args.cmd == "rr":
        return classify.rr_surface(args.chi, args.kd, args.d2)
    if args.cmd == "nef-threshold":
        data = _load(args.input)
        if isinstance(data, dict):
            data = data.get("classes", [])
        try:
            return classify.nef_threshold(data)
        except (KeyError, TypeError) as exc:
            raise UsageError(f"bad class data: {exc}")
    return classify.nu_table(args.nef, args.k2, args.num_zero)


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "table"), default="json")

    p = argparse.ArgumentParser(prog="surfcalc", description="Exact numerical calculators for algebraic surfaces.")
    areas = p.add_subparsers(dest="area", required=True)

    cubic = areas.add_parser("cubic", help="27 lines on a cubic surface")
    sub = cubic.add_subparsers(dest="cmd", required=True)
    for name in ("lines", "triangles", "doublesixes", "roots", "weyl-order"):
        sub.add_parser(name, parents=[fmt])
    cubic.set_defaults(handler=_cubic)

    sc = areas.add_parser("scroll", help="rational normal scrolls")
    sub = sc.add_subparsers(dest="cmd", required=True)
    for name in ("h0", "baselocus", "canon", "intersect"):
        q = sub.add_parser(name, parents=[fmt])
        q.add_argument("--twists", type=_ints, required=True)
        if name in ("h0", "baselocus"):
            q.add_argument("--bidegree", type=_pair, required=True, help="d,e for eL + dM")
        if name == "baselocus":
            q.add_argument("--b", type=int)
        if name == "intersect":
            q.add_argument("--factor", type=_pair, action="append", required=True, help="d,e; repeat n times")
    sub.add_parser("maroni", parents=[fmt]).add_argument("--genus", type=int, required=True)
    sub.add_parser("cubicrange", parents=[fmt]).add_argument("--k", type=int, required=True)
    sc.set_defaults(handler=_scroll)

    cf = areas.add_parser("config", help="curve configurations")
    sub = cf.add_subparsers(dest="cmd", required=True)
    for name in ("zcycle", "ade", "classify", "connected", "zariski", "reduce"):
        q = sub.add_parser(name, parents=[fmt])
        q.add_argument("--input", required=True)
        if name == "classify":
            q.add_argument("--bound-factor", type=_rational, default=Fraction(3))
        if name == "connected":
            q.add_argument("--cycle", type=_ints, required=True)
            q.add_argument("--k", type=int, default=1)
        if name == "zariski":
            q.add_argument("--divisor", type=lambda s: [_rational(x) for x in s.split(",")], required=True)
        if name == "reduce":
            q.add_argument("--divisor", type=_ints, required=True)
            q.add_argument("--no-k3", action="store_true")
    cf.set_defaults(handler=_config)

    fb = areas.add_parser("fib", help="elliptic fibrations")
    sub = fb.add_subparsers(dest="cmd", required=True)
    for name in ("delta", "pm", "wild"):
        q = sub.add_parser(name, parents=[fmt])
        q.add_argument("--input", required=True)
        if name == "pm":
            q.add_argument("--m", type=int, required=True)
    sub.add_parser("torsion", parents=[fmt]).add_argument("--parts-max", type=int, default=4)
    sub.add_parser("p12", parents=[fmt]).add_argument("--cap", type=int, default=12)
    fb.set_defaults(handler=_fib)

    cl = areas.add_parser("classify", help="surface invariants")
    sub = cl.add_subparsers(dest="cmd", required=True)
    sub.add_parser("table", parents=[fmt])
    q = sub.add_parser("invariants", parents=[fmt])
    q.add_argument("--chi", type=int, required=True)
    q.add_argument("--k2", type=int, required=True)
    q = sub.add_parser("rr", parents=[fmt])
    q.add_argument("--chi", type=int, required=True)
    q.add_argument("--kd", type=int, required=True, help="K.D")
    q.add_argument("--d2", type=int, required=True, help="D.D")
    sub.add_parser("nef-threshold", parents=[fmt]).add_argument("--input", required=True)
    q = sub.add_parser("nu", parents=[fmt])
    q.add_argument("--k2", type=int, required=True)
    q.add_argument("--nef", action=argparse.BooleanOptionalAction, default=True)
    q.add_argument("--num-zero", action="store_true")
    cl.set_defaults(handler=_classify)

    gd = areas.add_parser("golden", help="compare reference computations with committed outputs")
    gd.add_argument("suite", choices=sorted(golden.SUITES) + ["all"])
    gd.add_argument("--update", action="store_true", help="rewrite the golden files")
    gd.set_defaults(handler=None)
    return p


# -- output ------------------------------------------------------------------


def _cell(v) -> str:
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    return "" if v is None else str(v)


def render_table(data) -> str:
    if isinstance(data, list) and data and all(isinstance(r, dict) for r in data):
        keys = sorted({k for r in data for k in r})
        rows = [keys] + [[_cell(r.get(k)) for k in keys] for r in data]
    elif isinstance(data, list):
        rows = [[_cell(x)] for x in data]
    elif isinstance(data, dict):
        rows = [[k, _cell(data[k])] for k in sorted(data)]
    else:
        return _cell(data)
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows)


def _golden(args, out) -> int:
    names = sorted(golden.SUITES) if args.suite == "all" else [args.suite]
    status = 0
    for name in names:
        if args.update:
            golden.update(name)
            print(f"{name}: updated", file=out)
            continue
        try:
            ok = golden.check(name)
        except FileNotFoundError:
            print(f"{name}: missing golden file", file=sys.stderr)
            return 2
        print(f"{name}: {'pass' if ok else 'FAIL'}", file=out)
        if not ok:
            status = 1
    return status


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = sys.stdout
    try:
        if args.area == "golden":
            return _golden(args, out)
        result = golden.jsonable(args.handler(args))
    except UsageError as exc:
        print(f"surfcalc: {exc}", file=sys.stderr)
        return 2
    except SurfcalcError as exc:
        print(json.dumps({"error": exc.kind, "message": str(exc)}, sort_keys=True), file=sys.stderr)
        return 1
    except ValueError as exc:
        print(json.dumps({"error": "PreconditionFailed", "message": str(exc)}, sort_keys=True), file=sys.stderr)
        return 1
    if args.format == "table":
        print(render_table(result), file=out)
    else:
        print(json.dumps(result, sort_keys=True, indent=1), file=out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
