"""Render the four experiment figure layouts from arnfit CSV output.

Pure presentation: every number plotted comes from the input files, nothing
is recomputed. Each figure is a 2x2 grid: showcase panels on top (fitted
curves, or mapped point sets for the conformal study) and semilog
error-versus-degree panels below, classical path on the left and the
Arnoldi path on the right. Missing files, missing columns, or empty tables
raise instead of producing a blank plot.
"""

from __future__ import annotations

from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

EXPERIMENTS = ("chebyshev", "twointerval", "fourext", "conformal")

PLAIN_COLOR = "#c0392b"
ARNOLDI_COLOR = "#1f77b4"
TARGET_COLOR = "#444444"

ERROR_YLIM = (1e-16, 1e0)


class RenderError(ValueError):
    """Raised for missing/malformed inputs; never render a blank panel."""


@dataclass(frozen=True)
class FigureSpec:
    experiment: str
    table: str
    out: str
    points: str | None = None


def read_metadata(path) -> dict:
    """Collect the '# key: value' lines that precede the CSV header."""
    meta = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.startswith("#"):
                break
            body = line[1:].strip()
            if ":" in body:
                key, val = body.split(":", 1)
                meta[key.strip()] = val.strip()
    return meta


def load_table(path, required) -> pd.DataFrame:
    try:
        frame = pd.read_csv(path, comment="#")
    except FileNotFoundError:
        raise RenderError(f"input file not found: {path}") from None
    except pd.errors.EmptyDataError:
        raise RenderError(f"{path}: no columns to parse") from None
    missing = [c for c in required if c not in frame.columns]
    if missing:
        raise RenderError(f"{path}: missing columns {missing}; has {list(frame.columns)}")
    if len(frame) == 0:
        raise RenderError(f"{path}: table has no rows")
    return frame


def _error_panel(ax, degrees, errors, color, label):
    finite = np.isfinite(errors)
    ax.semilogy(degrees[finite], errors[finite], ".-", color=color, ms=4, lw=1.0, label=label)
    ax.set_ylim(*ERROR_YLIM)
    ax.set_xlabel("degree n")
    ax.set_ylabel("max error")
    ax.grid(True, which="both", ls=":", alpha=0.4)
    ax.legend(loc="upper right", frameon=False)


def _split_at_gaps(s):
    """Indices that break a 1-D grid into contiguous runs (for interval gaps)."""
    if len(s) < 3:
        return [np.arange(len(s))]
    ds = np.diff(s)
    typical = np.median(np.abs(ds))
    breaks = np.where(np.abs(ds) > 3 * typical)[0]
    pieces = []
    start = 0
    for b in breaks:
        pieces.append(np.arange(start, b + 1))
        start = b + 1
    pieces.append(np.arange(start, len(s)))
    return pieces


def _function_panel(ax, s, f, y, color, label, title):
    for piece in _split_at_gaps(s):
        ax.plot(s[piece], f[piece], "-", color=TARGET_COLOR, lw=1.0,
                label="target" if piece[0] == 0 else None)
        ax.plot(s[piece], y[piece], "-", color=color, lw=1.0,
                label=label if piece[0] == 0 else None)
    ax.set_title(title)
    ax.set_xlabel("x")
    ax.legend(loc="best", frameon=False)


def _conformal_panel(ax, frame, method, color, title):
    unit = np.exp(1j * np.linspace(0, 2 * np.pi, 361))
    ax.plot(unit.real, unit.imag, "--", color="#999999", lw=0.8)
    boundary = frame[frame["set"] == "boundary"]
    ax.plot(boundary["z_re"], boundary["z_im"], "-", color=TARGET_COLOR, lw=0.8, alpha=0.5)
    for name, group in frame.groupby("set"):
        gre = group[f"g_{method}_re"].to_numpy()
        gim = group[f"g_{method}_im"].to_numpy()
        style = "-" if name == "boundary" else "-"
        lw = 1.2 if name == "boundary" else 0.6
        ax.plot(gre, gim, style, color=color, lw=lw)
    ax.set_title(title)
    ax.set_aspect("equal")
    ax.set_xlim(-1.35, 1.35)
    ax.set_ylim(-1.35, 1.35)


def render(spec: FigureSpec):
    """Build and save the figure; returns the matplotlib Figure."""
    if spec.experiment not in EXPERIMENTS:
        raise RenderError(f"unknown experiment {spec.experiment!r}; expected one of {EXPERIMENTS}")
    table = load_table(spec.table, required=("n", "error_plain", "error_arnoldi"))
    if spec.points is None:
        raise RenderError(
            f"{spec.experiment}: a points file is required for the showcase panels "
            "(write one with `arnfit example ... --points-out`)"
        )
    fig, axes = plt.subplots(2, 2, figsize=(9.0, 7.0))
    (ax_tl, ax_tr), (ax_bl, ax_br) = axes

    if spec.experiment == "conformal":
        points = load_table(
            spec.points,
            required=("set", "z_re", "z_im", "g_plain_re", "g_plain_im",
                      "g_arnoldi_re", "g_arnoldi_im"),
        )
        degree = read_metadata(spec.points).get("degree", "?")
        _conformal_panel(ax_tl, points, "plain", PLAIN_COLOR, f"power basis, image at n = {degree}")
        _conformal_panel(ax_tr, points, "arnoldi", ARNOLDI_COLOR, f"arnoldi, image at n = {degree}")
    else:
        points = load_table(spec.points, required=("s", "f", "y_plain", "y_arnoldi"))
        degree = read_metadata(spec.points).get("showcase_degree", "?")
        s = points["s"].to_numpy()
        f = points["f"].to_numpy()
        _function_panel(ax_tl, s, f, points["y_plain"].to_numpy(), PLAIN_COLOR,
                        "fit", f"power basis, n = {degree}")
        _function_panel(ax_tr, s, f, points["y_arnoldi"].to_numpy(), ARNOLDI_COLOR,
                        "fit", f"arnoldi, n = {degree}")

    degrees = table["n"].to_numpy()
    _error_panel(ax_bl, degrees, table["error_plain"].to_numpy(), PLAIN_COLOR, "power basis")
    _error_panel(ax_br, degrees, table["error_arnoldi"].to_numpy(), ARNOLDI_COLOR, "arnoldi")

    meta = read_metadata(spec.table)
    fig.suptitle(meta.get("experiment", spec.experiment))
    fig.tight_layout()
    fig.savefig(spec.out)
    return fig
