"""``majorana`` command-line interface.

Exit codes: 0 ok, 2 I/O or parse error, 3 validation failure, 4 solver
non-convergence, 5 dimension mismatch, 6 size cap exceeded, 7 verification
residual above threshold.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import io
from .core import ConvergenceError, SizeError, StarSet, StateVector, ValidationError
from .mixed import decompose_mixed, purify_and_represent
from .poly import build_polynomial, find_roots, root_residuals
from .representation import roundtrip_check, state_inner_via_stars, state_to_stars, stars_to_state

EXIT_OK = 0
EXIT_IO = 2
EXIT_INVALID = 3
EXIT_CONVERGENCE = 4
EXIT_DIM_MISMATCH = 5
EXIT_SIZE = 6
EXIT_VERIFY = 7

VERIFY_TOL = 1e-6


class DimensionMismatch(Exception):
    pass


def _fmt(z: complex) -> str:
    z = complex(z)
    return f"{z.real:.15g} {z.imag:.15g}"


def _plot(path, star_sets, labels=None, title=None):
    from .plotting import plot_star_sets

    plot_star_sets(star_sets, path, labels=labels, title=title)


def cmd_to_stars(args) -> int:
    state = io.state_from_doc(io.read_json(args.input))
    result = state_to_stars(state)
    io.write_text(args.output, io.dumps(io.star_set_to_doc(result.stars)))
    if args.csv:
        io.write_text(args.csv, io.bloch_csv(result.stars))
    if args.plot:
        _plot(args.plot, [result.stars], title=f"d = {state.dim}")
    return EXIT_OK


def cmd_to_state(args) -> int:
    stars = io.star_set_from_doc(io.read_json(args.input))
    state = stars_to_state(stars)
    io.write_text(args.output, io.dumps(io.state_to_doc(state)))
    return EXIT_OK


def _load_either(path) -> StateVector | StarSet:
    doc = io.read_json(path)
    return io.star_set_from_doc(doc) if io.is_star_doc(doc) else io.state_from_doc(doc)


def _as_state(x) -> StateVector:
    return stars_to_state(x) if isinstance(x, StarSet) else x


def _as_stars(x) -> StarSet:
    return x if isinstance(x, StarSet) else state_to_stars(x).stars


def cmd_inner(args) -> int:
    a, b = _load_either(args.a), _load_either(args.b)
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions differ: {a.dim} vs {b.dim}")
    lines = []
    if args.via in ("coords", "both"):
        coords = complex(np.vdot(_as_state(a).amplitudes, _as_state(b).amplitudes))
    if args.via in ("stars", "both"):
        stars = state_inner_via_stars(_as_stars(a), _as_stars(b))
    if args.via == "coords":
        lines.append(_fmt(coords))
    elif args.via == "stars":
        lines.append(_fmt(stars))
    else:
        lines.append(f"coords {_fmt(coords)}")
        lines.append(f"stars {_fmt(stars)}")
        lines.append(f"diff {abs(coords - stars):.15g}")
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_mixed(args) -> int:
    rho = io.density_from_doc(io.read_json(args.input))
    if args.action == "decompose":
        model = decompose_mixed(rho)
        io.write_text(args.output, io.dumps(io.mixed_model_to_doc(model)))
        if args.plot:
            labels = [f"p = {w:.4g}" for w in model.weights]
            _plot(args.plot, model.components, labels=labels)
    else:
        result = purify_and_represent(rho)
        doc = io.star_set_to_doc(result.stars)
        doc["rank"] = result.source.dim // rho.dim
        io.write_text(args.output, io.dumps(doc))
        if args.plot:
            _plot(args.plot, [result.stars], title=f"purification, rank {doc['rank']}")
    return EXIT_OK


def cmd_verify(args) -> int:
    state = io.state_from_doc(io.read_json(args.input))
    poly = build_polynomial(state)
    roots = find_roots(poly)
    residual = roundtrip_check(state)
    out = [f"residual {residual:.6e}", f"dim {state.dim}", "coefficients"]
    out += [f"  c{j} {_fmt(c)}" for j, c in enumerate(poly.coefficients)]
    out.append(f"roots_at_infinity {roots.infinity_count}")
    out.append("roots")
    for mu, res in zip(roots.finite_roots, root_residuals(poly, roots.finite_roots)):
        out.append(f"  {_fmt(mu)} residual {res:.3e}")
    sys.stdout.write("\n".join(out) + "\n")
    if residual > args.tol:
        print(f"majorana: round-trip residual {residual:.3e} exceeds {args.tol:g}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="majorana", description="Majorana stellar representation tools.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("to-stars", help="state vector -> star set")
    p.add_argument("input", help='StateFile path, or "-" for stdin')
    p.add_argument("-o", "--output", help="StarFile path (default stdout)")
    p.add_argument("--csv", help="also write Bloch points as cx,cy,cz rows")
    p.add_argument("--plot", help="also render the stars on the Bloch sphere (png, pdf, svg)")
    p.set_defaults(func=cmd_to_stars)

    p = sub.add_parser("to-state", help="star set -> state vector")
    p.add_argument("input", help='StarFile path, or "-" for stdin')
    p.add_argument("-o", "--output", help="StateFile path (default stdout)")
    p.set_defaults(func=cmd_to_state)

    p = sub.add_parser("inner", help="inner product <a, b> of two states or star sets")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--via", choices=["coords", "stars", "both"], default="stars")
    p.set_defaults(func=cmd_inner)

    p = sub.add_parser("mixed", help="density matrix -> star ensemble or purification")
    p.add_argument("action", choices=["decompose", "purify"])
    p.add_argument("input", help='DensityFile path, or "-" for stdin')
    p.add_argument("-o", "--output", help="output path (default stdout)")
    p.add_argument("--plot", help="also render the star sets on the Bloch sphere")
    p.set_defaults(func=cmd_mixed)

    p = sub.add_parser("verify", help="round-trip diagnostics for a state file")
    p.add_argument("input", help='StateFile path, or "-" for stdin')
    p.add_argument("--tol", type=float, default=VERIFY_TOL, help="residual threshold (default 1e-6)")
    p.set_defaults(func=cmd_verify)
    return parser


_EXIT_CODES = [
    (io.ParseError, EXIT_IO),
    (ValidationError, EXIT_INVALID),
    (ConvergenceError, EXIT_CONVERGENCE),
    (DimensionMismatch, EXIT_DIM_MISMATCH),
    (SizeError, EXIT_SIZE),
]


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except tuple(cls for cls, _ in _EXIT_CODES) as exc:
        print(f"majorana: {exc}", file=sys.stderr)
        return next(code for cls, code in _EXIT_CODES if isinstance(exc, cls))


if __name__ == "__main__":
    sys.exit(main())
