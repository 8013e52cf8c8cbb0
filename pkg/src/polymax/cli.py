"""Command-line surface: parse polynomials, run the solvers, emit JSON
reports (the machine contract) or human-readable text, and write basin
images as binary PPM files.

Exit codes: 0 success/accepted certificate, 1 rejected certificate,
2 input error, 3 no candidates, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .basins import GridSpec, default_palette, render_basins, write_ppm
from .geometry import classify_direction, compute_cone
from .poly import ParseError, Polynomial, parse_complex, parse_polynomial, \
    render_polynomial
from .roots import find_roots
from .solver import (
    Method,
    NoCandidatesError,
    NormOptions,
    OrbitOutcome,
    basic_family_orbit,
    compute_norm,
    fixed_point_orbit,
    pseudo_newton_orbit,
)
from .stationarity import DEFAULT_BOUNDARY_TOL, DEFAULT_CERT_TOL, certify

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_INPUT = 2
EXIT_NO_CANDIDATES = 3
EXIT_IO = 4

ORBIT_LISTING_CAP = 100

_METHOD_NAMES = {
    "f-iter": Method.FIXED_POINT,
    "pseudo-newton": Method.PSEUDO_NEWTON,
    "basic3": Method.BASIC_FAMILY_3,
    "scan": Method.BOUNDARY_SCAN,
    "hybrid": Method.HYBRID,
}


def _cjson(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _cert_json(cert) -> dict:
    return {
        "point": _cjson(cert.point),
        "residual": cert.residual,
        "modulus": cert.modulus,
        "newton_ratio": cert.newton_ratio,
        "boundary_gap": cert.boundary_gap,
        "accepted": cert.accepted,
    }


def _emit(payload: dict, args) -> None:
    if args.output == "json":
        print(json.dumps(payload, indent=2))
    else:
        _print_text(payload)


def _print_text(payload: dict, indent: int = 0) -> None:
    pad = "  " * indent
    for key, value in payload.items():
        if isinstance(value, dict) and set(value) == {"re", "im"}:
            print(f"{pad}{key}: {value['re']:.12g} {value['im']:+.12g}i")
        elif isinstance(value, dict):
            print(f"{pad}{key}:")
            _print_text(value, indent + 1)
        elif isinstance(value, list):
            print(f"{pad}{key}: [{len(value)} entries]")
            for item in value:
                if isinstance(item, dict):
                    _print_text(item, indent + 1)
                    print()
                else:
                    print(f"{pad}  {item}")
        else:
            print(f"{pad}{key}: {value}")


def _resolve_seed(args) -> int:
    if args.rng_seed is not None:
        return args.rng_seed
    env = os.environ.get("POLYMAX_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ParseError(f"POLYMAX_SEED must be an integer, got {env!r}", 0)
    return 42


def _load_polynomial(args) -> Polynomial:
    poly = parse_polynomial(args.poly, args.format)
    if poly.degree < 1:
        raise ParseError("polynomial must be nonconstant (degree >= 1)", 0)
    return poly


def _norm_options(args, seed: int) -> NormOptions:
    opts = NormOptions(rng_seed=seed)
    if getattr(args, "cert_tol", None) is not None:
        opts.cert_tol = args.cert_tol
    if getattr(args, "boundary_tol", None) is not None:
        opts.boundary_tol = args.boundary_tol
    if getattr(args, "samples", None) is not None:
        opts.scan_samples = args.samples
    return opts


def cmd_norm(args) -> int:
    poly = _load_polynomial(args)
    options = _norm_options(args, _resolve_seed(args))
    try:
        report = compute_norm(poly, _METHOD_NAMES[args.method], options)
    except NoCandidatesError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_NO_CANDIDATES
    payload = {
        "polynomial": render_polynomial(poly),
        "norm": report.norm_value,
        "best_point": _cjson(report.best_point),
        "candidates": [_cert_json(c) for c in report.candidates],
        "method": report.method.value,
        "bernstein_ok": report.bernstein_ok,
        "seeds_used": report.seeds_used,
    }
    _emit(payload, args)
    return EXIT_OK


def cmd_certify(args) -> int:
    poly = _load_polynomial(args)
    point = parse_complex(args.point)
    cert = certify(poly, point, args.tol, args.boundary_tol)
    payload = _cert_json(cert)
    if args.explain:
        cone = compute_cone(poly, point)
        theta = math.atan2(point.imag, point.real)
        payload["explain"] = {
            "cone": {
                "k": cone.k,
                "alpha": cone.alpha,
                "magnitude": cone.magnitude,
                "at_root": cone.at_root,
            },
            "radial_outward": classify_direction(poly, point, theta).value,
            "radial_inward": classify_direction(poly, point, theta + math.pi).value,
        }
    _emit(payload, args)
    return EXIT_OK if cert.accepted else EXIT_REJECTED


def cmd_orbit(args) -> int:
    poly = _load_polynomial(args)
    seed = parse_complex(args.seed)
    method = _METHOD_NAMES[args.method]
    if method is Method.FIXED_POINT:
        max_iter = args.max_iter if args.max_iter is not None else 1000
        trace = fixed_point_orbit(poly, seed, max_iter)
    elif method is Method.PSEUDO_NEWTON:
        max_iter = args.max_iter if args.max_iter is not None else 200
        trace = pseudo_newton_orbit(poly, seed, max_iter)
    elif method is Method.BASIC_FAMILY_3:
        max_iter = args.max_iter if args.max_iter is not None else 200
        trace = basic_family_orbit(poly, seed, max_iter, m=3)
    else:
        print("error: orbit method must be f-iter, pseudo-newton, or basic3",
              file=sys.stderr)
        return EXIT_INPUT
    outcome: dict = {"status": trace.outcome.value}
    if trace.outcome is OrbitOutcome.CONVERGED:
        outcome["attractor"] = _cjson(trace.attractor)
    if trace.outcome is OrbitOutcome.SINGULAR:
        outcome["reason"] = trace.reason.value
    payload = {
        "seed": _cjson(trace.seed),
        "iterates": [_cjson(z) for z in trace.iterates[:ORBIT_LISTING_CAP]],
        "iterate_count": len(trace.iterates),
        "iterations": trace.iterations,
        "outcome": outcome,
    }
    _emit(payload, args)
    return EXIT_OK


def _parse_palette(text: str) -> list[tuple[int, int, int]]:
    colors = []
    for part in text.split(","):
        part = part.strip().lstrip("#")
        if len(part) != 6 or any(c not in "0123456789abcdefABCDEF" for c in part):
            raise ParseError(f"palette entry {part!r} is not a 6-digit hex color", 0)
        colors.append(tuple(int(part[i:i + 2], 16) for i in (0, 2, 4)))
    return colors


def cmd_basins(args) -> int:
    poly = _load_polynomial(args)
    method = _METHOD_NAMES[args.method]
    if method not in (Method.FIXED_POINT, Method.PSEUDO_NEWTON):
        print("error: basins method must be f-iter or pseudo-newton",
              file=sys.stderr)
        return EXIT_INPUT
    center = parse_complex(args.center)
    spec = GridSpec(center=center, half_width=args.half_width,
                    width_px=args.size, height_px=args.size)
    options = NormOptions(rng_seed=_resolve_seed(args))
    try:
        image = render_basins(poly, method, spec, args.max_iter, options)
    except NoCandidatesError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_NO_CANDIDATES
    palette = _parse_palette(args.palette) if args.palette else \
        default_palette(len(image.attractors))
    data = write_ppm(image, palette)
    try:
        with open(args.out, "wb") as fh:
            fh.write(data)
    except OSError as err:
        print(f"error: cannot write {args.out}: {err}", file=sys.stderr)
        return EXIT_IO
    payload = {
        "polynomial": render_polynomial(poly),
        "method": method.value,
        "out": args.out,
        "width": image.spec.width_px,
        "height": image.spec.height_px,
        "max_iter": image.max_iter,
        "attractors": [_cjson(a) for a in image.attractors],
        "pixel_counts": image.pixel_counts(),
    }
    _emit(payload, args)
    return EXIT_OK


def cmd_roots(args) -> int:
    poly = parse_polynomial(args.poly, args.format)
    if poly.degree < 1:
        raise ParseError("root finding requires degree >= 1", 0)
    result = find_roots(poly)
    payload = {
        "polynomial": render_polynomial(poly),
        "roots": [{"root": _cjson(r), "multiplicity": m}
                  for r, m in result.roots],
        "residual_bound": result.residual_bound,
    }
    _emit(payload, args)
    return EXIT_OK


def _add_common(sub, methods, default_method=None):
    sub.add_argument("--poly", required=True,
                     help="polynomial text (see formats in the README)")
    sub.add_argument("--format", choices=["expression", "coefficients"],
                     default="expression")
    sub.add_argument("--output", choices=["json", "text"], default="json")
    sub.add_argument("--rng-seed", type=int, default=None,
                     help="RNG seed (default: POLYMAX_SEED env var, else 42)")
    if methods:
        sub.add_argument("--method", choices=methods, default=default_method)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polymax",
        description="Maximum modulus of a complex polynomial over the unit "
                    "disc, via certified stationary points of |p|.")
    subs = parser.add_subparsers(dest="command", required=True)

    p_norm = subs.add_parser("norm", help="compute the infinity norm")
    _add_common(p_norm, ["hybrid", "f-iter", "pseudo-newton", "basic3", "scan"],
                "hybrid")
    p_norm.add_argument("--cert-tol", type=float, default=None)
    p_norm.add_argument("--boundary-tol", type=float, default=None)
    p_norm.add_argument("--samples", type=int, default=None,
                        help="boundary scan sample count")
    p_norm.set_defaults(func=cmd_norm)

    p_cert = subs.add_parser("certify",
                             help="test a point for being a local maximum")
    _add_common(p_cert, None)
    p_cert.add_argument("--point", required=True, help="complex literal")
    p_cert.add_argument("--tol", type=float, default=DEFAULT_CERT_TOL)
    p_cert.add_argument("--boundary-tol", type=float, default=DEFAULT_BOUNDARY_TOL)
    p_cert.add_argument("--explain", action="store_true",
                        help="include ascent-cone data and radial classes")
    p_cert.set_defaults(func=cmd_certify)

    p_orbit = subs.add_parser("orbit", help="trace one iteration orbit")
    _add_common(p_orbit, ["f-iter", "pseudo-newton", "basic3"], "f-iter")
    p_orbit.add_argument("--seed", required=True, help="complex literal")
    p_orbit.add_argument("--max-iter", type=int, default=None)
    p_orbit.set_defaults(func=cmd_orbit)

    p_bas = subs.add_parser("basins", help="render basins of attraction")
    _add_common(p_bas, ["f-iter", "pseudo-newton"], "f-iter")
    p_bas.add_argument("--size", type=int, default=600)
    p_bas.add_argument("--max-iter", type=int, default=None)
    p_bas.add_argument("--center", default="0")
    p_bas.add_argument("--half-width", type=float, default=1.5)
    p_bas.add_argument("--palette", default=None,
                       help="comma-separated hex colors, last = unlabeled")
    p_bas.add_argument("--out", required=True, help="output PPM path")
    p_bas.set_defaults(func=cmd_basins)

    p_roots = subs.add_parser("roots", help="find all roots of p")
    _add_common(p_roots, None)
    p_roots.set_defaults(func=cmd_roots)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
