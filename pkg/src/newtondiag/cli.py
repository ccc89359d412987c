"""Command line entry point.

Exit codes: 0 success, 1 a proved inequality failed at runtime, 2 bad input,
3 a search cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .errors import CapExceeded, InternalContradiction, PreconditionError

EXIT_OK, EXIT_CONTRADICTION, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


def _read_arg(text: str) -> str:
    if text == "-":
        return sys.stdin.read()
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            return fh.read()
    return text


def _emit(args, obj, text: str):
    if args.json:
        print(json.dumps(obj, indent=2, sort_keys=True, default=str))
    else:
        print(text)


def _parse_poly(text: str, homogeneous=None):
    from .grammar import parse_polynomial_ex

    parsed = parse_polynomial_ex(text, homogeneous=homogeneous)
    return parsed.poly, parsed.homogeneous_vars


# -- commands -------------------------------------------------------------------------------------


def cmd_analyze(args) -> int:
    from .diagram import (
        diagram_of,
        diagram_of_polynomial,
        diagram_sc_3d,
        has_overhang,
        node_count,
        node_kinds_2d,
        support_geometry,
        weighted_surface_count_2d,
    )
    from .grammar import format_polynomial
    from .polynomial import class_membership, divide_by_s, p_degree_and_count, strip_common_monomial

    p, homog = _parse_poly(_read_arg(args.poly))
    out = {"polynomial": format_polynomial(p, homogeneous=homog)}
    if homog:
        P = p
        pd, deg, N = p_degree_and_count(P)
        P0 = strip_common_monomial(P)
        D = diagram_of(divide_by_s(P0), P0.degree)
        out.update({"p_degree": pd, "degree": deg, "N": N, "in_I": True})
    else:
        rep = class_membership(p)
        out["class"] = rep.as_dict()
        if not rep.in_I:
            _emit(args, out, _format_dict(out))
            return EXIT_OK
        D = diagram_of_polynomial(p)
    geo = support_geometry(D.support)
    stats = {
        "n": D.n,
        "d": D.d,
        "nodes": node_count(D),
        "support_points": len(D.support),
        "support_size": geo.size,
        "connected": geo.connected,
        "components": geo.component_count,
    }
    if D.n == 2:
        stats["node_kinds"] = node_kinds_2d(D)
        stats["sc"] = str(weighted_surface_count_2d(D))
    if D.n in (2, 3):
        oh, wit = has_overhang(D.support)
        stats["overhang"] = oh
        if wit:
            stats["overhang_witness"] = {k: list(v) if isinstance(v, tuple) else v for k, v in wit.items()}
    if D.n == 3 and len(D.support) <= 22:
        stats["sc"] = str(diagram_sc_3d(D))
    out["diagram"] = stats
    out["diagram_json"] = D.to_json_obj()
    if args.trace:
        out["receipts"] = _trace(D)
    _emit(args, out, _format_dict(out))
    return EXIT_OK


def _trace(D) -> list:
    from .transforms import fill_to_maximal_2d, reduce_3d_step

    if D.n == 2:
        _, receipts = fill_to_maximal_2d(D, "sc")
        return [r.to_json_obj() for r in receipts]
    if D.n == 3:
        res = reduce_3d_step(D)
        return [res.receipt.to_json_obj()] if res.receipt is not None else []
    return []


def _format_dict(d, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for k, v in d.items():
        if k == "diagram_json":
            continue
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_format_dict(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for item in v:
                lines.append(f"{pad}  - " + json.dumps(item, default=str, sort_keys=True))
        else:
            lines.append(f"{pad}{k}: {v}")
    return "\n".join(lines)


def cmd_generate(args) -> int:
    from .constructions import SharpFamilySpec, filledsharp_search
    from .grammar import format_polynomial

    fam = args.family
    if fam == "sharp3d":
        rep = filledsharp_search(args.d, long_running=args.long_running)
        polys = [format_polynomial(q) for q in rep.results]
        _emit(args, {"d": args.d, "results": polys}, "\n".join(polys) if polys else "(none)")
        return EXIT_OK
    choices = ()
    if fam == "faran3" and args.perm:
        choices = tuple(int(x) for x in args.perm.split(","))
    spec = SharpFamilySpec(fam, n=args.n, d=args.d, choices=choices)
    p = spec.generate()
    obj = {"family": fam, "polynomial": format_polynomial(p), "degree": p.degree, "N": p.monomial_count}
    _emit(args, obj, obj["polynomial"])
    return EXIT_OK


def cmd_verify_bounds(args) -> int:
    from .bounds import verify_bound
    from .grammar import parse_map

    text = _read_arg(args.object).strip()
    if text.startswith("map"):
        obj = parse_map(text)
        rep = verify_bound(obj)
    else:
        p, homog = _parse_poly(text)
        rep = verify_bound(p, homogeneous=homog)
    data = rep.to_json_obj()
    rows = [f"{'tag':8} {'bound':>10} {'actual':>7} {'status':12} {'ok':5} sharp"]
    for b in data["bounds"]:
        actual = data["actual_p_degree"] if b["quantity"] == "p-degree" else data["actual_degree"]
        rows.append(f"{b['tag']:8} {b['value']:>10} {actual:>7} {b['status']:12} {str(b['satisfied']):5} {b['sharp']}")
    rows.extend(f"note: {n}" for n in data["notes"])
    _emit(args, data, "\n".join(rows))
    bad = rep.violated_proved()
    if bad:
        raise InternalContradiction(f"proved bounds failed: {', '.join(bad)}")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    from .enumeration import exhaustive_bound_verify

    certs = exhaustive_bound_verify(args.theorem, args.dmax, long_running=args.long_running)
    data = [c.to_json_obj() for c in certs]
    rows = [
        f"{c.theorem} d={c.d} supports={c.support_count} min_nodes={c.min_nodes} bound={c.bound} "
        f"{'ok' if c.ok else 'VIOLATED'}"
        for c in certs
    ]
    _emit(args, data, "\n".join(rows))
    if any(not c.ok for c in certs):
        raise InternalContradiction("exhaustive sweep found a support below the bound")
    return EXIT_OK


def cmd_render(args) -> int:
    from .diagram import NewtonDiagram
    from .render import render_diagram

    D = NewtonDiagram.from_json(_read_arg(args.diagram))
    text = render_diagram(D, args.format)
    if args.json:
        print(json.dumps({"format": args.format, "output": text}))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return EXIT_OK


def cmd_convert(args) -> int:
    from .grammar import format_map, format_polynomial, parse_map
    from .quadrics import map_of_positive_polynomial, real_polynomial_of_map, verify_quadric_map

    text = _read_arg(args.object).strip()
    if text.startswith("map"):
        f = parse_map(text)
        P = real_polynomial_of_map(f)
        obj = {"real_polynomial": format_polynomial(P, homogeneous=True), "is_quadric_map": verify_quadric_map(f)}
        _emit(args, obj, obj["real_polynomial"])
    else:
        p, homog = _parse_poly(text)
        if homog:
            raise PreconditionError("convert expects an affine polynomial in x1..xn")
        f = map_of_positive_polynomial(p)
        _emit(args, f.to_json_obj(), format_map(f))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="newtondiag", description="Newton diagrams of polynomials constant on a hyperplane")
    ap.add_argument("--json", action="store_true", help="emit JSON")
    ap.add_argument("--trace", action="store_true", help="include transform receipts")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="class report and diagram statistics")
    a.add_argument("poly", help="polynomial text, a file, or - for stdin")
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("generate", help="generate a family member")
    g.add_argument("family", choices=["whitney", "faran2", "faran3", "dkr2d", "sharp3d"])
    g.add_argument("--n", type=int, default=3)
    g.add_argument("--d", type=int, default=1)
    g.add_argument("--perm", help="variable permutation for faran3, e.g. 1,0,2")
    g.add_argument("--long-running", action="store_true")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify-bounds", help="check the degree bounds for a polynomial or map")
    v.add_argument("object")
    v.set_defaults(func=cmd_verify_bounds)

    e = sub.add_parser("enumerate", help="exhaustive node-count sweep")
    e.add_argument("theorem", choices=["T3.4", "T5.2"])
    e.add_argument("--dmax", type=int, default=None)
    e.add_argument("--long-running", action="store_true")
    e.set_defaults(func=cmd_enumerate)

    r = sub.add_parser("render", help="draw a diagram stored as JSON")
    r.add_argument("diagram")
    r.add_argument("--format", choices=["ascii", "svg"], default="ascii")
    r.set_defaults(func=cmd_render)

    c = sub.add_parser("convert", help="polynomial to sphere map, or map to real polynomial")
    c.add_argument("object")
    c.set_defaults(func=cmd_convert)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except InternalContradiction as exc:
        print(f"internal contradiction: {exc}", file=sys.stderr)
        return EXIT_CONTRADICTION
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:  # includes grammar, precondition and polynomial errors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
