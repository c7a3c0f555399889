"""Deterministic drivers for the four convergence studies.

Each driver fixes its own grids and emits a table of max-abs errors per
degree for the plain power-basis path and the Arnoldi path. Non-finite
evaluations at high degree are recorded as an ``inf`` sentinel rather than
aborting the sweep. All configuration is hard-coded or passed explicitly,
so identical calls produce bit-identical tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .arnoldi import ArnoldiModel, arnoldi_eval, arnoldi_fit, arnoldi_fit_realpart
from .linalg import as_vector
from .vandermonde import PlainModel, polyfit, polyfit_realpart, polyval

DEFAULT_METHODS = ("plain", "arnoldi")


def runge(x):
    """The classical 1/(1 + 25 x^2) test function."""
    x = np.asarray(x)
    return 1.0 / (1.0 + 25.0 * x * x)


def chebyshev_points(n: int) -> np.ndarray:
    """The n+1 extreme points cos(j*pi/n), j = 0..n."""
    return np.cos(np.arange(n + 1) * np.pi / n)


@dataclass(frozen=True)
class ConvergenceTable:
    """Rows of (degree, error per method column) plus grid metadata."""

    experiment: str
    degrees: tuple
    columns: dict
    metadata: dict

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.degrees, self.degrees[1:])):
            raise ValueError("degrees must be strictly increasing")
        for name, vals in self.columns.items():
            if len(vals) != len(self.degrees):
                raise ValueError(f"column {name} has {len(vals)} rows, expected {len(self.degrees)}")


def _max_err(values, reference) -> float:
    with np.errstate(all="ignore"):
        err = float(np.max(np.abs(values - reference)))
    return err if np.isfinite(err) else float("inf")


def _fit_eval(method: str, x, f, degree: int, grids) -> list:
    """Fit one degree with one method and return evaluations on each grid."""
    with np.errstate(all="ignore"):
        if method == "plain":
            model = polyfit(x, f, degree)
            return [polyval(model, s) for s in grids]
        model = arnoldi_fit(x, f, degree)
        return [arnoldi_eval(model, s) for s in grids]


def _fit_eval_realpart(method: str, z, f, degree: int, grids) -> list:
    from .arnoldi import arnoldi_eval_realpart
    from .vandermonde import polyval_realpart

    with np.errstate(all="ignore"):
        if method == "plain":
            model = polyfit_realpart(z, f, degree)
            return [polyval_realpart(model, s) for s in grids]
        model = arnoldi_fit_realpart(z, f, degree)
        return [arnoldi_eval_realpart(model, s) for s in grids]


def chebyshev_runge(degrees=None, methods=DEFAULT_METHODS) -> ConvergenceTable:
    """Interpolation of the Runge function in Chebyshev points.

    For each degree n the data are the n+1 Chebyshev extreme points (the
    square, interpolatory case); the error is the max deviation on 1000
    equispaced points in [-1, 1].
    """
    degrees = tuple(degrees) if degrees is not None else tuple(range(2, 201, 2))
    s = np.linspace(-1.0, 1.0, 1000)
    fs = runge(s)
    columns = {f"error_{m}": [] for m in methods}
    for n in degrees:
        x = chebyshev_points(n)
        f = runge(x)
        for m in methods:
            (y,) = _fit_eval(m, x, f, n, [s])
            columns[f"error_{m}"].append(_max_err(y, fs))
    meta = {
        "experiment": "chebyshev",
        "target": "1/(1+25*x^2)",
        "fit_nodes": "n+1 chebyshev extreme points cos(j*pi/n)",
        "eval_grid": "1000 equispaced points in [-1,1] inclusive",
        "error": "max abs deviation on eval grid; inf marks non-finite evaluations",
    }
    return ConvergenceTable("chebyshev", degrees, {k: tuple(v) for k, v in columns.items()}, meta)


def two_interval_grid() -> np.ndarray:
    """500 equispaced points in each of [-1, -1/3] and [1/3, 1]."""
    return np.concatenate([np.linspace(-1.0, -1.0 / 3.0, 500), np.linspace(1.0 / 3.0, 1.0, 500)])


def _two_interval_offgrid() -> np.ndarray:
    # interior midpoints, disjoint from the fit grid
    left = -1.0 + (np.arange(1000) + 0.5) * ((2.0 / 3.0) / 1000)
    right = 1.0 / 3.0 + (np.arange(1000) + 0.5) * ((2.0 / 3.0) / 1000)
    return np.concatenate([left, right])


def two_interval_sign(degrees=None, methods=DEFAULT_METHODS) -> ConvergenceTable:
    """Least-squares fit of sign(x) on two symmetric intervals.

    The primary error column is measured on the 1000-point fit grid itself;
    a secondary off-grid column samples 1000 interior midpoints per
    interval.
    """
    degrees = tuple(degrees) if degrees is not None else tuple(range(2, 201, 2))
    x = two_interval_grid()
    f = np.sign(x)
    xo = _two_interval_offgrid()
    fo = np.sign(xo)
    columns = {}
    for m in methods:
        columns[f"error_{m}"] = []
        columns[f"offgrid_{m}"] = []
    for n in degrees:
        for m in methods:
            y, yo = _fit_eval(m, x, f, n, [x, xo])
            columns[f"error_{m}"].append(_max_err(y, f))
            columns[f"offgrid_{m}"].append(_max_err(yo, fo))
    # keep primary columns first in the emitted table
    ordered = {f"error_{m}": tuple(columns[f"error_{m}"]) for m in methods}
    ordered.update({f"offgrid_{m}": tuple(columns[f"offgrid_{m}"]) for m in methods})
    meta = {
        "experiment": "twointerval",
        "target": "sign(x)",
        "fit_grid": "500 equispaced points in [-1,-1/3] plus 500 in [1/3,1]",
        "eval_grid": "the fit grid; offgrid_* columns use 1000 interior midpoints per interval",
        "error": "max abs deviation; inf marks non-finite evaluations",
    }
    return ConvergenceTable("twointerval", degrees, ordered, meta)


def fourier_extension(degrees=None, methods=DEFAULT_METHODS, m: int = 1000, target=None) -> ConvergenceTable:
    """Fourier-extension fit of 1/(10-9x) on [-1,1] via z = exp(i*pi*x/2).

    The substitution puts the samples on half of the unit circle and the
    trigonometric fit becomes a real-part polynomial fit in z. Error is
    measured on a 1000-point midpoint grid, offset from the fit samples.
    ``target`` replaces the default integrand (self-test hook).
    """
    degrees = tuple(degrees) if degrees is not None else tuple(range(4, 201, 4))
    target_label = "1/(10-9*x)" if target is None else "custom"
    if target is None:
        target = lambda t: 1.0 / (10.0 - 9.0 * t)
    x = np.linspace(-1.0, 1.0, m)
    z = np.exp(1j * np.pi * x / 2.0)
    f = np.asarray(target(x), dtype=np.float64)
    xs = -1.0 + (np.arange(1000) + 0.5) * (2.0 / 1000)
    zs = np.exp(1j * np.pi * xs / 2.0)
    fs = np.asarray(target(xs), dtype=np.float64)
    if max(degrees) * 2 + 1 > m:
        raise ValueError(f"m = {m} is too small for degree {max(degrees)}")
    columns = {f"error_{meth}": [] for meth in methods}
    for n in degrees:
        for meth in methods:
            (y,) = _fit_eval_realpart(meth, z, f, n, [zs])
            columns[f"error_{meth}"].append(_max_err(y, fs))
    meta = {
        "experiment": "fourext",
        "target": target_label,
        "substitution": "z = exp(i*pi*x/2), samples on half of the unit circle",
        "fit_samples": f"m={m} equispaced points in [-1,1]",
        "eval_grid": "1000 midpoint-offset points in [-1,1]",
        "error": "max abs deviation of Re p(z(x)) from target; inf marks non-finite evaluations",
    }
    return ConvergenceTable("fourext", degrees, {k: tuple(v) for k, v in columns.items()}, meta)


BLOB_FORMULA = "exp(i*theta)*(1 + 0.12*cos(3*theta) + 0.08*sin(4*theta) + 0.03*cos(6*theta))"


def _blob_radius(theta):
    return 1.0 + 0.12 * np.cos(3 * theta) + 0.08 * np.sin(4 * theta) + 0.03 * np.cos(6 * theta)


@dataclass(frozen=True)
class BlobCurve:
    """A closed curve around the origin with fit and held-out test nodes.

    The raw parametrization is scaled by 1/max|z| over the fit nodes so the
    fit nodes have maximum modulus exactly 1; test nodes sit between fit
    nodes (half a parameter step off), so the sets are disjoint.
    """

    fit_nodes: np.ndarray
    test_nodes: np.ndarray
    scale: float
    description: str

    def __post_init__(self):
        fit = as_vector(self.fit_nodes, "fit_nodes").astype(np.complex128)
        test = as_vector(self.test_nodes, "test_nodes").astype(np.complex128)
        if abs(np.max(np.abs(fit)) - 1.0) > 1e-15:
            raise ValueError("fit nodes must be scaled to max modulus 1")
        turns = np.angle(fit / np.roll(fit, 1)).sum() / (2 * np.pi)
        if abs(turns - 1.0) > 1e-8:
            raise ValueError(f"curve must wind once around the origin, got {turns}")
        if np.intersect1d(fit, test).size:
            raise ValueError("fit and test nodes must be disjoint")
        fit.flags.writeable = False
        test.flags.writeable = False
        object.__setattr__(self, "fit_nodes", fit)
        object.__setattr__(self, "test_nodes", test)


def _curve_from_radius(radius_fn, description, m, m_test):
    th_fit = 2 * np.pi * np.arange(m) / m
    th_test = (np.arange(m_test) + 0.5) * (2 * np.pi / m_test)
    raw_fit = radius_fn(th_fit) * np.exp(1j * th_fit)
    scale = float(np.max(np.abs(raw_fit)))
    fit = raw_fit / scale
    test = radius_fn(th_test) * np.exp(1j * th_test) / scale
    return BlobCurve(fit_nodes=fit, test_nodes=test, scale=1.0 / scale, description=description)


def blob_curve(m: int = 1000, m_test: int = 2000) -> BlobCurve:
    """The default blob-shaped region boundary."""
    return _curve_from_radius(_blob_radius, BLOB_FORMULA + ", scaled to max modulus 1", m, m_test)


def circle_curve(m: int = 1000, m_test: int = 2000) -> BlobCurve:
    """The unit circle; the associated disk map is the identity."""
    return _curve_from_radius(np.ones_like, "exp(i*theta)", m, m_test)


@dataclass(frozen=True)
class ConformalModel:
    """Disk map g(z) = z * exp(h(z) - i*rotation) built from a boundary fit.

    ``hmodel`` is the real-part fit of u = -log|z| on the boundary;
    ``rotation`` is the fitted harmonic conjugate's value at the origin,
    subtracted so that v(0) = 0 and hence g'(0) = e^{u(0)} > 0. For the
    power basis the coefficient convention already pins v(0) = 0 and the
    stored rotation is exactly zero.
    """

    hmodel: PlainModel | ArnoldiModel
    rotation: float = 0.0

    def __post_init__(self):
        if not getattr(self.hmodel, "realpart", False):
            raise ValueError("conformal model requires a realpart boundary fit")


def _eval_h(model, pts: np.ndarray) -> np.ndarray:
    if isinstance(model, ArnoldiModel):
        return arnoldi_eval(model, pts)
    return polyval(model, pts)


def conformal_map_points(cmodel: ConformalModel, pts) -> np.ndarray:
    """Apply the fitted disk map to points inside or on the boundary."""
    zv = as_vector(pts, "pts")
    if zv.dtype.kind != "c":
        zv = zv.astype(np.complex128)
    with np.errstate(all="ignore"):
        h = _eval_h(cmodel.hmodel, zv)
        return zv * np.exp(h - 1j * cmodel.rotation)


def conformal_blob(degree: int, method: str = "arnoldi", curve: BlobCurve | None = None):
    """Fit the boundary Laplace problem and return (model, boundary residual).

    The Dirichlet data u = -log|z| on the curve is fitted by the real part
    of a degree-n series; the disk map follows as g(z) = z*exp(h(z)). The
    residual is max | |g| - 1 | over the held-out test nodes (inf if the
    evaluation overflowed).
    """
    if curve is None:
        curve = blob_curve()
    u = -np.log(np.abs(curve.fit_nodes))
    if method == "plain":
        hmodel = polyfit_realpart(curve.fit_nodes, u, degree)
    elif method == "arnoldi":
        hmodel = arnoldi_fit_realpart(curve.fit_nodes, u, degree)
    else:
        raise ValueError(f"unknown method {method!r}")
    rotation = float(_eval_h(hmodel, np.zeros(1, dtype=np.complex128))[0].imag)
    cmodel = ConformalModel(hmodel=hmodel, rotation=rotation)
    g = conformal_map_points(cmodel, curve.test_nodes)
    with np.errstate(all="ignore"):
        residual = float(np.max(np.abs(np.abs(g) - 1.0)))
    if not np.isfinite(residual):
        residual = float("inf")
    return cmodel, residual


def conformal_table(degrees=None, methods=DEFAULT_METHODS, curve: BlobCurve | None = None) -> ConvergenceTable:
    """Boundary residual versus degree for both fitting paths."""
    degrees = tuple(degrees) if degrees is not None else tuple(range(10, 201, 10))
    if curve is None:
        curve = blob_curve()
    columns = {f"error_{m}": [] for m in methods}
    for n in degrees:
        for m in methods:
            _, res = conformal_blob(n, method=m, curve=curve)
            columns[f"error_{m}"].append(res)
    meta = {
        "experiment": "conformal",
        "curve": curve.description,
        "fit_nodes": f"{curve.fit_nodes.size} equispaced parameter values",
        "test_nodes": f"{curve.test_nodes.size} parameter values offset by half a step",
        "boundary_data": "u = -log|z|",
        "error": "max | |g(z)| - 1 | over test nodes; inf marks non-finite evaluations",
    }
    return ConvergenceTable("conformal", degrees, {k: tuple(v) for k, v in columns.items()}, meta)


def conformal_point_sets(curve: BlobCurve, models: dict, rings=(0.25, 0.5, 0.75), rays: int = 12):
    """Domain points and their images under each fitted map, for rendering.

    Returns (labels, points, images) where ``images`` maps a method name to
    the mapped points. The sets are the boundary itself (the held-out test
    nodes, so image moduli respect the reported residual) plus interior
    rings (scaled copies of the boundary, valid because the curve is
    star-shaped about the origin) and radial rays.
    """
    sets = [("boundary", curve.test_nodes)]
    for lam in rings:
        sets.append((f"ring{lam:g}", lam * curve.fit_nodes))
    mfit = curve.fit_nodes.size
    t = np.linspace(0.0, 1.0, 41)
    for j in range(rays):
        anchor = curve.fit_nodes[(j * mfit) // rays]
        sets.append((f"ray{j}", t * anchor))
    labels = np.concatenate([[name] * pts.size for name, pts in sets])
    points = np.concatenate([pts for _, pts in sets])
    images = {name: conformal_map_points(model, points) for name, model in models.items()}
    return labels, points, images


def showcase_values(name: str, degree: int):
    """Fitted values of both methods at one degree, for the figure panels.

    Returns (metadata, columns) with columns s, f, y_plain, y_arnoldi on
    the experiment's evaluation grid.
    """
    if name == "chebyshev":
        s = np.linspace(-1.0, 1.0, 1000)
        fs = runge(s)
        x = chebyshev_points(degree)
        f = runge(x)
        yp, = _fit_eval("plain", x, f, degree, [s])
        ya, = _fit_eval("arnoldi", x, f, degree, [s])
    elif name == "twointerval":
        s = two_interval_grid()
        fs = np.sign(s)
        yp, = _fit_eval("plain", s, fs, degree, [s])
        ya, = _fit_eval("arnoldi", s, fs, degree, [s])
    elif name == "fourext":
        x = np.linspace(-1.0, 1.0, 1000)
        z = np.exp(1j * np.pi * x / 2.0)
        f = 1.0 / (10.0 - 9.0 * x)
        s = -1.0 + (np.arange(1000) + 0.5) * (2.0 / 1000)
        zs = np.exp(1j * np.pi * s / 2.0)
        fs = 1.0 / (10.0 - 9.0 * s)
        yp, = _fit_eval_realpart("plain", z, f, degree, [zs])
        ya, = _fit_eval_realpart("arnoldi", z, f, degree, [zs])
    else:
        raise ValueError(f"no showcase values for experiment {name!r}")
    meta = {"experiment": name, "showcase_degree": str(degree)}
    return meta, {"s": s, "f": fs, "y_plain": yp, "y_arnoldi": ya}
