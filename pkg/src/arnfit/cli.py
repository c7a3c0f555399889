"""Command-line interface: fit, eval, and the four example studies.

Exit codes (stable, machine-readable; stderr carries the matching class
name as its first token):

    0  success (rank-deficiency downgrades to a warning on stderr)
    2  usage errors (argparse)
    3  DuplicateNodes
    4  DegreeTooHigh
    5  Breakdown
    6  SchemaMismatch
    7  PointsParse
    8  I/O failure
    1  anything else

Data goes to the output files; stderr is for humans.
"""

from __future__ import annotations

import argparse
import sys

from . import experiments, modelio
from .arnoldi import ArnoldiModel, arnoldi_eval, arnoldi_eval_realpart, arnoldi_fit, arnoldi_fit_realpart
from .errors import (
    BreakdownError,
    DegreeTooHighError,
    DuplicateNodesError,
    PointsParseError,
    SchemaMismatchError,
)
from .vandermonde import polyfit, polyfit_realpart, polyval, polyval_realpart

_EXIT_CODES = [
    (DuplicateNodesError, "DuplicateNodes", 3),
    (DegreeTooHighError, "DegreeTooHigh", 4),
    (BreakdownError, "Breakdown", 5),
    (SchemaMismatchError, "SchemaMismatch", 6),
    (PointsParseError, "PointsParse", 7),
    (OSError, "IOError", 8),
]

_EXAMPLE_STEPS = {"chebyshev": 2, "twointerval": 2, "fourext": 4, "conformal": 10}


def _cmd_fit(args) -> int:
    x, f = modelio.read_points(args.points)
    if args.realpart:
        if x.dtype.kind != "c":
            raise PointsParseError(f"{args.points}: --realpart needs complex abscissae (x,xi columns)")
        if f.dtype.kind == "c":
            raise PointsParseError(f"{args.points}: --realpart needs real values (no fi column)")
        if args.method == "plain":
            model = polyfit_realpart(x, f, args.degree)
        else:
            model = arnoldi_fit_realpart(x, f, args.degree, reorth=args.reorth)
    else:
        if args.method == "plain":
            model = polyfit(x, f, args.degree)
        else:
            model = arnoldi_fit(x, f, args.degree, reorth=args.reorth)
    if model.rank_warning:
        print("RankDeficient: basis numerically rank deficient; "
              "coefficients are a regularized solution", file=sys.stderr)
    provenance = {
        "input_digest": modelio.digest_file(args.points),
        "options": {"method": args.method, "degree": args.degree,
                    "realpart": bool(args.realpart), "reorth": args.reorth},
    }
    modelio.save_model(model, args.out, provenance=provenance)
    return 0


def _cmd_eval(args) -> int:
    model = modelio.load_model(args.model)
    s = modelio.read_grid(args.grid)
    if model.realpart and s.dtype.kind != "c":
        raise PointsParseError(f"{args.grid}: realpart model needs a complex grid (s,si columns)")
    if isinstance(model, ArnoldiModel):
        y = arnoldi_eval_realpart(model, s) if model.realpart else arnoldi_eval(model, s)
    else:
        y = polyval_realpart(model, s) if model.realpart else polyval(model, s)
    modelio.write_eval(args.out, s, y)
    return 0


def _conformal_points_csv(path, nmax: int) -> None:
    curve = experiments.blob_curve()
    models = {}
    for method in ("plain", "arnoldi"):
        cmodel, _ = experiments.conformal_blob(nmax, method=method, curve=curve)
        models[method] = cmodel
    labels, points, images = experiments.conformal_point_sets(curve, models)
    columns = {
        "set": labels,
        "z_re": points.real,
        "z_im": points.imag,
        "g_plain_re": images["plain"].real,
        "g_plain_im": images["plain"].imag,
        "g_arnoldi_re": images["arnoldi"].real,
        "g_arnoldi_im": images["arnoldi"].imag,
    }
    meta = {"experiment": "conformal", "degree": str(nmax), "curve": curve.description}
    _write_mixed_csv(path, columns, meta)


def _write_mixed_csv(path, columns, meta):
    # like modelio.write_csv but allows one string column (the set labels)
    names = list(columns)
    length = len(columns[names[0]])
    with open(path, "w", encoding="utf-8") as fh:
        for key, val in meta.items():
            fh.write(f"# {key}: {val}\n")
        fh.write(",".join(names) + "\n")
        for i in range(length):
            fields = []
            for name in names:
                v = columns[name][i]
                fields.append(v if isinstance(v, str) else repr(float(v)))
            fh.write(",".join(fields) + "\n")


def _cmd_example(args) -> int:
    step = args.step if args.step is not None else _EXAMPLE_STEPS[args.name]
    if args.nmax < step or step < 1:
        raise ValueError(f"nmax must be >= step >= 1, got nmax={args.nmax} step={step}")
    degrees = list(range(step, args.nmax + 1, step))
    if args.name == "chebyshev":
        table = experiments.chebyshev_runge(degrees)
    elif args.name == "twointerval":
        table = experiments.two_interval_sign(degrees)
    elif args.name == "fourext":
        table = experiments.fourier_extension(degrees)
    else:
        table = experiments.conformal_table(degrees)
    modelio.write_table(table, args.out)
    if args.points_out:
        if args.name == "conformal":
            _conformal_points_csv(args.points_out, args.nmax)
        else:
            n_show = min(80, args.nmax)
            meta, cols = experiments.showcase_values(args.name, n_show)
            modelio.write_csv(args.points_out, cols, meta)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arnfit", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_fit = sub.add_parser("fit", help="fit a model to a points CSV")
    p_fit.add_argument("--points", required=True, help="CSV with header x[,xi],f[,fi]")
    p_fit.add_argument("--degree", type=int, required=True)
    p_fit.add_argument("--method", choices=("plain", "arnoldi"), default="arnoldi")
    p_fit.add_argument("--realpart", action="store_true",
                       help="fit real data by the real part of a complex series")
    p_fit.add_argument("--reorth", type=int, choices=(0, 1), default=0,
                       help="extra orthogonalization sweep (arnoldi only)")
    p_fit.add_argument("--out", required=True, help="output model JSON")
    p_fit.set_defaults(func=_cmd_fit)

    p_eval = sub.add_parser("eval", help="evaluate a model file on a grid CSV")
    p_eval.add_argument("--model", required=True)
    p_eval.add_argument("--grid", required=True, help="CSV with header s[,si]")
    p_eval.add_argument("--out", required=True, help="output CSV s[,si],y[,yi]")
    p_eval.set_defaults(func=_cmd_eval)

    p_ex = sub.add_parser("example", help="run one of the four convergence studies")
    p_ex.add_argument("name", choices=("chebyshev", "twointerval", "fourext", "conformal"))
    p_ex.add_argument("--nmax", type=int, required=True)
    p_ex.add_argument("--step", type=int, default=None,
                      help="degree increment (default per experiment)")
    p_ex.add_argument("--out", required=True, help="output table CSV")
    p_ex.add_argument("--points-out", default=None,
                      help="also write point data (mapped points for conformal, "
                           "fitted showcase curves otherwise)")
    p_ex.set_defaults(func=_cmd_example)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except tuple(cls for cls, _, _ in _EXIT_CODES) as exc:
        for cls, tag, code in _EXIT_CODES:
            if isinstance(exc, cls):
                print(f"{tag}: {exc}", file=sys.stderr)
                return code
        raise AssertionError("unreachable")
    except (ValueError, ArithmeticError) as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
