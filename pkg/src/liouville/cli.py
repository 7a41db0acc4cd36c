"""Command-line frontend.

Exit codes: 0 success, 1 usage or parse error, 2 mathematically undecidable
input (flat germ, resonant multiplier), 3 internal invariant violation.
Errors go to stderr as one JSON object; results go to stdout or --out.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import checks, contact, dynamics, plane
from .errors import (LiouvilleError, ParseError, ResonantMultiplier,
                     InternalInvariantError, ZeroGerm)
from .expr import parse_germ, parse_plane_polynomial
from .germs import ClassKind, classify, normal_form
from .jets import DEFAULT_ORDER, Jet
from .polys import SparsePoly


def _dump(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _error(kind: str, message: str, code: int, **extra) -> int:
    payload = {"error": {"type": kind, "message": message, **extra}}
    sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")
    return code


def _fractions(text: str) -> list[Fraction]:
    return [Fraction(part.strip()) for part in text.split(",") if part.strip()]


def _floats(text: str) -> list[float]:
    return [float(part.strip()) for part in text.split(",") if part.strip()]


def _coeff_obj(c):
    to_json = getattr(c, "to_json", None)
    if to_json is not None and not isinstance(c, Fraction):
        return to_json()
    return str(c)


def _grid_points(text: str, nparams: int) -> list[tuple]:
    """Semicolon-separated points; 'lo:hi:n' items expand to uniform ranges."""
    points: list[tuple] = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ":" in chunk:
            lo, hi, count = chunk.split(":")
            lo, hi, count = Fraction(lo), Fraction(hi), int(count)
            if nparams != 1:
                raise ValueError("range expansion is for one-parameter grids")
            if count == 1:
                points.append((lo,))
            else:
                step = (hi - lo) / (count - 1)
                points.extend(((lo + i * step),) for i in range(count))
            continue
        values = tuple(Fraction(v) for v in chunk.strip("()").split(","))
        if len(values) != nparams:
            raise ValueError(f"grid point {chunk!r} needs {nparams} coordinates")
        points.append(values)
    return points


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liouville",
        description="Germ classification, form-preserving plane and contact "
                    "fields, unfoldings, and their numerical exploration.")
    parser.add_argument("--order", type=int, default=None,
                        help=f"jet truncation order (default {DEFAULT_ORDER})")
    parser.add_argument("--format", choices=["json", "csv"], default="json")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized verification runs")
    parser.add_argument("--out", default=None, help="write output to a file")
    parser.add_argument("--config", default=None,
                        help="key=value file: order, window, seeds, step")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("classify", help="classify a germ").add_argument("germ")
    sub.add_parser("normalize", help="normalizing diffeomorphism and certificate"
                   ).add_argument("germ")
    sub.add_parser("field", help="plane field of a germ, with its Lie residual"
                   ).add_argument("germ")
    p = sub.add_parser("lift", help="lift the plane field of a germ to 3-space")
    p.add_argument("germ")
    p.add_argument("--c", default="0", help="constant Reeb component")
    p = sub.add_parser("equilibria", help="equilibria of the germ's plane field")
    p.add_argument("germ")
    p.add_argument("--range", dest="yrange", default="-4,4", help="y interval a,b")
    p = sub.add_parser("tangent", help="tangent space of the singularity class")
    p.add_argument("germ")
    p.add_argument("--deg", type=int, default=None)
    p = sub.add_parser("transversal", help="transversality of the Q or T family")
    p.add_argument("--family", choices=["Q", "T"], required=True)
    p = sub.add_parser("portrait", help="phase portrait SVG for Q or T")
    p.add_argument("--family", choices=["Q", "T"], required=True)
    p.add_argument("--params", required=True, help="a  or  a,b")
    p.add_argument("--window", default=None, help="xmin,xmax,ymin,ymax")
    p.add_argument("--seeds", default=None, help="nx,ny seed grid")
    p.add_argument("--T", type=float, default=5.0)
    p.add_argument("--step", type=float, default=None)
    p = sub.add_parser("sweep", help="equilibrium sweep over a parameter grid")
    p.add_argument("--family", choices=["Q", "T"], required=True)
    p.add_argument("--grid", required=True,
                   help="points 'a;a;...' or '(a,b);(a,b)'; ranges 'lo:hi:n'")
    p.add_argument("--workers", type=int, default=1)
    p = sub.add_parser("basis3d", help="homogeneous basis of degree-d fields")
    p.add_argument("--degree", type=int, required=True)
    p = sub.add_parser("admatrix", help="bracket operator matrix in the basis")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--a", default="1")
    p = sub.add_parser("linearize3d", help="normal-form linearization over the "
                       "homogeneous generators")
    p.add_argument("coeffs", help="c1,c2,... coefficients of X_1, X_2, ...")
    p = sub.add_parser("linmap", help="jet linearization of a plane "
                       "form-preserving diffeomorphism")
    p.add_argument("germ", help="the 1-D generator germ h")
    sub.add_parser("verify", help="run the symbolic identity checks")
    return parser


def _apply_config(args):
    settings = {}
    if args.config:
        with open(args.config) as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#") or "=" not in line:
                    continue
                key, value = line.split("=", 1)
                settings[key.strip()] = value.strip()
    if args.order is None:
        args.order = int(settings.get("order", DEFAULT_ORDER))
    if getattr(args, "window", None) is None and "window" in settings:
        args.window = settings["window"]
    if getattr(args, "seeds", None) is None and "seeds" in settings:
        args.seeds = settings["seeds"]
    if getattr(args, "step", None) is None and "step" in settings:
        args.step = float(settings["step"])
    return args


def _defuse_dashes(argv: list[str]) -> list[str]:
    """Let values like '-y^3+y^5' or '-3,3' through argparse: a token whose
    dash is followed by expression material is a value, not a flag, and a
    leading space (stripped by every consumer) stops option matching."""
    out = []
    for token in argv:
        if len(token) > 1 and token[0] == "-" and token[1] in "0123456789xyz(.":
            out.append(" " + token)
        else:
            out.append(token)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_defuse_dashes(list(argv)))
    except SystemExit as exc:
        if exc.code in (0, None):
            return 0
        return 1
    try:
        args = _apply_config(args)
        return _dispatch(args)
    except ParseError as exc:
        return _error("ParseError", str(exc), 1, offset=exc.offset,
                      expected=list(exc.expected))
    except (ZeroGerm, ResonantMultiplier) as exc:
        return _error(type(exc).__name__, str(exc), 2)
    except InternalInvariantError as exc:
        return _error("InternalInvariantError", str(exc), 3)
    except (LiouvilleError, ValueError, OSError) as exc:
        return _error(type(exc).__name__, str(exc), 1)


def _dispatch(args) -> int:
    order = args.order
    cmd = args.command

    if cmd == "classify":
        verdict = classify(parse_germ(args.germ, order))
        if verdict.kind is ClassKind.UNDETERMINED:
            return _error("UndeterminedGerm",
                          f"zero through order {verdict.order_bound}: "
                          "truncated data cannot classify", 2)
        _emit(_dump(verdict.to_json()), args.out)
        return 0

    if cmd == "normalize":
        result = normal_form(parse_germ(args.germ, order))
        payload = {
            "class": result.germ_class.to_json(),
            "diffeo": {"order": result.diffeo.order,
                       "coeffs": [_coeff_obj(c) for c in result.diffeo.jet.coeffs]},
            "target": result.target.to_json(),
            "achieved": result.achieved.to_json(),
            "exact": result.exact,
            "modulus": str(result.modulus),
        }
        _emit(_dump(payload), args.out)
        return 0

    if cmd == "field":
        fld = plane.field_from_germ(parse_germ(args.germ, order))
        res = plane.lie_residual(fld)
        payload = fld.to_json()
        payload["lie_residual"] = [res[0].to_json(), res[1].to_json()]
        _emit(_dump(payload), args.out)
        return 0

    if cmd == "lift":
        fld = plane.field_from_germ(parse_germ(args.germ, order))
        lifted = contact.lift_plane_field(fld, Fraction(args.c))
        payload = lifted.to_json()
        res = contact.lie_residual3(lifted)
        payload["lie_residual"] = [p.to_json() for p in res]
        _emit(_dump(payload), args.out)
        return 0

    if cmd == "equilibria":
        lo, hi = _floats(args.yrange)
        fld = plane.field_from_germ(parse_germ(args.germ, order))
        eqs = plane.equilibria(fld, (lo, hi))
        if args.format == "csv":
            lines = ["y,type,eig_minus,eig_plus"]
            for e in eqs:
                eig = ["", ""] if e.eigenvalues is None else [str(v) for v in e.eigenvalues]
                lines.append(f"{e.y},{e.type.value},{eig[0]},{eig[1]}")
            _emit("\n".join(lines) + "\n", args.out)
        else:
            _emit(_dump([e.to_json() for e in eqs]), args.out)
        return 0

    if cmd == "tangent":
        germ = parse_germ(args.germ, order)
        deg = args.deg if args.deg is not None else germ.order
        space = plane.singularity_tangent_space(germ, deg)
        payload = {
            "deg": deg,
            "rank": space.rank,
            "basis": [[str(v) for v in row] for row in space.rows],
        }
        _emit(_dump(payload), args.out)
        return 0

    if cmd == "transversal":
        if args.family == "Q":
            family, model = plane.q_family(order), Jet.monomial(2, 1, order)
        else:
            family, model = plane.t_family(order), Jet.monomial(3, 1, order)
        ok, rank = plane.transversality(family, model, order)
        _emit(_dump({"family": args.family, "transversal": ok, "rank": rank}), args.out)
        return 0

    if cmd == "portrait":
        params = _fractions(args.params)
        fld = dynamics._family_field(args.family, tuple(params), order)
        window = _floats(args.window) if args.window else [-2.0, 2.0, -2.0, 2.0]
        seeds = [int(v) for v in _floats(args.seeds)] if args.seeds else [8, 8]
        step = args.step if args.step is not None else 0.01
        portrait = dynamics.phase_portrait(
            fld, ((window[0], window[1]), (window[2], window[3])),
            (seeds[0], seeds[1]), args.T, step)
        if args.format == "csv":
            _emit(portrait.to_csv(), args.out)
        else:
            _emit(dynamics.portrait_svg(portrait), args.out)
        return 0

    if cmd == "sweep":
        nparams = 1 if args.family == "Q" else 2
        grid = _grid_points(args.grid, nparams)
        result = dynamics.parameter_sweep(args.family, grid, order=order,
                                          workers=args.workers)
        _emit(result.serialize() + "\n", args.out)
        return 0

    if cmd == "basis3d":
        basis = contact.homogeneous_basis(args.degree)
        _emit(_dump(basis.to_json()), args.out)
        return 0

    if cmd == "admatrix":
        matrix = contact.ad_matrix(Fraction(args.a), args.degree)
        payload = {
            "degree": args.degree,
            "a": str(Fraction(args.a)),
            "matrix": [[str(v) for v in row] for row in matrix],
        }
        _emit(_dump(payload), args.out)
        return 0

    if cmd == "linearize3d":
        coeffs = _fractions(args.coeffs)
        fld = contact.Field3.zero()
        for d, c in enumerate(coeffs, start=1):
            if c:
                fld = fld + contact.liouville_homogeneous(d).scale(c)
        log, final = contact.linearize_field(fld, order)
        payload = {
            "generators": [{"degree": s.degree, "coefficient": str(s.coefficient)}
                           for s in log],
            "final": final.to_json(),
        }
        _emit(_dump(payload), args.out)
        return 0

    if cmd == "linmap":
        germ = parse_germ(args.germ, order)
        from .jets import DiffeoGerm
        psi, residual = plane.linearize_diffeo(DiffeoGerm(germ))
        payload = {
            "psi": psi.jet.to_json(),
            "residual": residual.to_json(),
            "multiplier": str(germ.coeff(1)),
        }
        _emit(_dump(payload), args.out)
        return 0

    if cmd == "verify":
        results = checks.run_checks(args.seed)
        lines = []
        ok_all = True
        for name, ok, detail in results:
            status = "ok" if ok else "FAIL"
            suffix = f" ({detail})" if detail else ""
            lines.append(f"{status:4s} {name}{suffix}")
            ok_all = ok_all and ok
        lines.append(f"{sum(1 for _, ok, _ in results if ok)}/{len(results)} checks passed")
        _emit("\n".join(lines) + "\n", args.out)
        return 0 if ok_all else 3

    raise ValueError(f"unknown command {cmd!r}")


if __name__ == "__main__":
    sys.exit(main())
