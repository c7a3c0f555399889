"""CLI: arnfit-figures render --experiment <name> --table <csv> [--points <csv>] --out <img>."""

from __future__ import annotations

import argparse
import sys

from .render import EXPERIMENTS, FigureSpec, RenderError, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arnfit-figures", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("render", help="render one experiment figure from CSV data")
    p.add_argument("--experiment", choices=EXPERIMENTS, required=True)
    p.add_argument("--table", required=True, help="convergence table CSV")
    p.add_argument("--points", default=None,
                   help="points CSV from `arnfit example ... --points-out`")
    p.add_argument("--out", required=True, help="output image path (vector formats work best)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(experiment=args.experiment, table=args.table,
                      points=args.points, out=args.out)
    try:
        render(spec)
    except RenderError as exc:
        print(f"RenderError: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"IOError: {exc}", file=sys.stderr)
        return 8
    return 0


if __name__ == "__main__":
    sys.exit(main())
