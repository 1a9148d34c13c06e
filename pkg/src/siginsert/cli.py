"""Command-line front end.

Exit status: 0 on success, 1 on data errors, 2 on invalid flags.
"""
from __future__ import annotations

import argparse
import io
import sys


from . import bounds, dataio
from .insertion import InsertionError, solve_two_piece
from .reconstruct import ReconstructionConfig, reconstruct_path
from .signature import path_signature
from .tensor import NormKind


class FlagError(Exception):
    pass


def fmt(x) -> str:
    return repr(float(x))


def level_range(text: str):
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi if sep else lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}") from None
    if a > b:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(a, b + 1)


def _load_path(args):
    with open(args.input) as fh:
        text = fh.read()
    if getattr(args, "pendigits", None) is not None:
        samples = dataio.parse_pendigits(text)
        if not 0 <= args.pendigits < len(samples):
            raise dataio.DataFormatError(f"sample {args.pendigits} not in file ({len(samples)} rows)")
        path = dataio.digit_path(samples[args.pendigits], args.resample or dataio.DIGIT_RESAMPLE_POINTS)
    else:
        path = dataio.parse_points_csv(text)
        if args.resample:
            path = dataio.resample_unit_speed(path, args.resample)
    return path


def _rows(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(r if isinstance(r, str) else fmt(r) if isinstance(r, float) else str(r)
                           for r in row) + "\n")
    return buf.getvalue()


def _emit(args, text):
    if args.out:
        dataio.atomic_write_text(args.out, text)
    else:
        sys.stdout.write(text)


def cmd_signature(args):
    if args.depth < 0:
        raise FlagError("--depth must be >= 0")
    sig = path_signature(_load_path(args), args.depth)
    _emit(args, dataio.format_signature(sig))


def cmd_invert(args):
    if args.level < 1 or args.samples < 2:
        raise FlagError("--level must be >= 1 and --samples >= 2")
    if args.length is not None and args.length <= 0:
        raise FlagError("--length must be positive")
    try:
        config = ReconstructionConfig(args.level, args.samples, length=args.length,
                                      length_norm=args.length_norm, interval=args.interval,
                                      smoothing=args.smooth)
    except ValueError as exc:
        raise FlagError(str(exc)) from None
    sig = dataio.read_signature(args.sig)
    result = reconstruct_path(sig, config)
    d = sig.dim
    rows = [(t, *dv, r) for t, dv, r in zip(result.thetas, result.derivatives, result.residuals)]
    text = _rows(["theta"] + [f"d{j + 1}" for j in range(d)] + ["residual"],
                 [tuple(float(v) for v in row) for row in rows])
    text += _rows(["vertex"] + [f"x{j + 1}" for j in range(d)],
                  [(k, *map(float, v)) for k, v in enumerate(result.vertices)])
    _emit(args, text)
    print(f"length used: {fmt(result.length_used)}", file=sys.stderr)


def cmd_two_piece(args):
    if args.level < 1:
        raise FlagError("--level must be >= 1")
    sig = dataio.read_signature(args.sig)
    n = args.level
    if sig.depth < n + 1:
        raise dataio.DataFormatError(f"signature depth {sig.depth} < {n + 1}")
    sol = solve_two_piece(sig[n], sig[n + 1], sig.dim)
    d = sig.dim
    text = _rows(["piece"] + [f"x{j + 1}" for j in range(d)],
                 [("a", *map(float, sol.a)), ("b", *map(float, sol.b))])
    text += _rows(["residual", "rank_deficient"], [(float(sol.residual), str(sol.rank_deficient).lower())])
    _emit(args, text)
    if args.out:
        print(f"a=({', '.join(f'{v:.12g}' for v in sol.a)}) "
              f"b=({', '.join(f'{v:.12g}' for v in sol.b)}) residual={sol.residual:.3g}")


def cmd_bounds(args):
    if not 0 < args.theta < 1:
        raise FlagError("--theta must lie in (0, 1)")
    if args.levels[0] < 1:
        raise FlagError("--levels must start at 1 or above")
    with_bound = args.s is not None or args.t is not None
    if with_bound:
        if args.s is None or args.t is None:
            raise FlagError("--s and --t must be given together")
        if not (0 <= args.s < args.theta < args.t <= 1):
            raise FlagError("need 0 <= s < theta < t <= 1")
    path = _load_path(args)
    curve = bounds.gap_curve(path, args.theta, args.levels, args.norm)
    header = ["n", "p", "gap"] + (["bound"] if with_bound else [])
    rows = []
    for n, p, gap in curve.rows:
        row = [n, p, float(gap)]
        if with_bound:
            row.append(float(bounds.binomial_bound(args.s, args.t, n, p)))
        rows.append(row)
    _emit(args, _rows(header, rows))


def cmd_lattice(args):
    if args.levels[0] < 0:
        raise FlagError("--levels must be >= 0")
    rows = [(n, *map(float, bounds.lattice_decay(n))) for n in args.levels]
    _emit(args, _rows(["n", "l1", "hs"], rows))


def cmd_develop(args):
    if args.depth < 0:
        raise FlagError("--depth must be >= 0")
    const_flags = (args.omega, args.pieces, args.c)
    with_const = any(v is not None for v in const_flags)
    if with_const:
        if args.c is None or not 0 < args.c < 1:
            raise FlagError("--c must lie in (0, 1)")
        if args.omega is not None and args.omega == 0:
            raise FlagError("--omega must be non-zero")
        if args.pieces is not None and args.pieces < 1:
            raise FlagError("--pieces must be >= 1")
    path = _load_path(args)
    dev = bounds.graded_development(path, args.depth)
    header = ["n", "witness"]
    const = None
    if with_const:
        omega = args.omega if args.omega is not None else bounds.smallest_half_angle(path)
        pieces = args.pieces if args.pieces is not None else path.n_pieces
        const = bounds.lower_bound_constant(pieces, omega, args.c)
        header += ["constant", "clears"]
    rows = []
    for n in range(dev.depth + 1):
        w = dev.witness(n)
        row = [n, float(w)]
        if const is not None:
            row += [float(const), str(w >= const).lower()]
        rows.append(row)
    _emit(args, _rows(header, rows))


def cmd_length(args):
    if args.level < 1:
        raise FlagError("--level must be >= 1")
    sig = dataio.read_signature(args.sig)
    if args.level > sig.depth:
        raise dataio.DataFormatError(f"signature depth {sig.depth} < {args.level}")
    print(fmt(bounds.length_estimate(sig, args.level, args.norm)))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise FlagError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="siginsert", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_input(p):
        p.add_argument("--in", dest="input", required=True, help="points CSV (or pen-digits file)")
        p.add_argument("--pendigits", type=int, metavar="ROW",
                       help="read --in as UCI pen-digits and use this row")
        p.add_argument("--resample", type=int, metavar="K",
                       help="resample to K points equally spaced in arc length")

    def add_out(p):
        p.add_argument("--out", help="output file (default: stdout)")

    norm = dict(type=NormKind.parse, default=NormKind.L1, choices=list(NormKind), metavar="l1|l2|linf")

    p = sub.add_parser("signature", help="signature of a polyline")
    add_input(p)
    p.add_argument("--depth", type=int, required=True)
    add_out(p)
    p.set_defaults(func=cmd_signature)

    p = sub.add_parser("invert", help="reconstruct a path from a signature file")
    p.add_argument("--sig", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--length", type=float)
    g.add_argument("--estimate-length", action="store_true")
    p.add_argument("--length-norm", **{**norm, "default": NormKind.L2})
    p.add_argument("--interval", choices=["inner", "full"], default="inner")
    p.add_argument("--smooth", type=int, metavar="WINDOW")
    add_out(p)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("two-piece", help="exact inversion for a two-segment path")
    p.add_argument("--sig", required=True)
    p.add_argument("--level", type=int, required=True)
    add_out(p)
    p.set_defaults(func=cmd_two_piece)

    p = sub.add_parser("bounds", help="insertion gaps and the binomial upper bound")
    add_input(p)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--norm", **norm)
    p.add_argument("--levels", type=level_range, required=True, metavar="a..b")
    p.add_argument("--s", type=float)
    p.add_argument("--t", type=float)
    add_out(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("lattice", help="lattice-path level norms")
    p.add_argument("--levels", type=level_range, required=True, metavar="a..b")
    add_out(p)
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("develop", help="hyperbolic development lower-bound witnesses")
    add_input(p)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--omega", type=float, help="half-angle (default: from the path)")
    p.add_argument("--pieces", type=int, help="piece count (default: from the path)")
    p.add_argument("--c", type=float)
    add_out(p)
    p.set_defaults(func=cmd_develop)

    p = sub.add_parser("length", help="length estimate from one signature level")
    p.add_argument("--sig", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--norm", **{**norm, "default": NormKind.L2})
    p.set_defaults(func=cmd_length)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "resample", None) is not None and args.resample < 2:
            raise FlagError("--resample must be >= 2")
        args.func(args)
    except FlagError as exc:
        print(f"siginsert: error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, InsertionError) as exc:
        print(f"siginsert: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
