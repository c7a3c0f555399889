"""Model files (JSON) and data files (CSV).

Floats are written in shortest round-trip decimal form, so a write/read
cycle reproduces every value bit for bit. Complex scalars appear as
[re, im] pairs in JSON and as paired columns in CSV. Table files carry
their configuration as '#'-prefixed metadata lines above the header.
"""

from __future__ import annotations

import hashlib
import json

import numpy as np

from .arnoldi import ArnoldiModel
from .errors import PointsParseError, SchemaMismatchError
from .experiments import ConvergenceTable
from .vandermonde import PlainModel

SCHEMA_VERSION = 1


def _encode_scalars(arr: np.ndarray) -> list:
    if arr.dtype.kind == "c":
        return [[float(v.real), float(v.imag)] for v in arr]
    return [float(v) for v in arr]


def _decode_scalars(entries, is_complex: bool) -> np.ndarray:
    if is_complex:
        return np.array([complex(re, im) for re, im in entries], dtype=np.complex128)
    return np.array(entries, dtype=np.float64)


def save_model(model, path, provenance: dict | None = None) -> None:
    """Write a fitted model as schema-versioned JSON."""
    doc = {
        "schema_version": SCHEMA_VERSION,
        "method": "arnoldi" if isinstance(model, ArnoldiModel) else "plain",
        "field": "complex" if model.is_complex else "real",
        "realpart": bool(model.realpart),
        "degree": int(model.degree),
        "coeffs": _encode_scalars(model.coeffs),
        "rank_warning": bool(model.rank_warning),
    }
    if isinstance(model, ArnoldiModel):
        H = model.recurrence
        doc["recurrence"] = {
            "rows": int(H.shape[0]),
            "cols": int(H.shape[1]),
            "order": "column-major",
            "entries": _encode_scalars(H.flatten(order="F")),
        }
    if provenance is not None:
        doc["provenance"] = provenance
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def load_model(path):
    """Read a model file back into a :class:`PlainModel` or :class:`ArnoldiModel`."""
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaMismatchError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict) or doc.get("schema_version") != SCHEMA_VERSION:
        raise SchemaMismatchError(
            f"{path}: unsupported schema version {doc.get('schema_version')!r}"
        )
    try:
        method = doc["method"]
        is_complex = doc["field"] == "complex"
        degree = int(doc["degree"])
        coeffs = _decode_scalars(doc["coeffs"], is_complex)
        realpart = bool(doc.get("realpart", False))
        rank_warning = bool(doc.get("rank_warning", False))
        if method == "plain":
            return PlainModel(degree=degree, coeffs=coeffs, realpart=realpart,
                              rank_warning=rank_warning)
        if method == "arnoldi":
            rec = doc["recurrence"]
            if rec.get("order") != "column-major":
                raise SchemaMismatchError(f"{path}: unknown recurrence layout")
            H = _decode_scalars(rec["entries"], is_complex).reshape(
                (int(rec["rows"]), int(rec["cols"])), order="F"
            )
            return ArnoldiModel(degree=degree, coeffs=coeffs, recurrence=H,
                                realpart=realpart, rank_warning=rank_warning)
        raise SchemaMismatchError(f"{path}: unknown method {method!r}")
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaMismatchError(f"{path}: malformed model file ({exc})") from exc


def digest_file(path) -> str:
    """SHA-256 hex digest of a file's bytes, for model provenance."""
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def _fmt(value) -> str:
    return repr(float(value))


def write_csv(path, columns: dict, metadata: dict | None = None) -> None:
    """Write named columns as CSV with optional '#'-prefixed metadata lines."""
    names = list(columns)
    arrays = [np.asarray(columns[name]) for name in names]
    length = arrays[0].shape[0]
    if any(a.shape[0] != length for a in arrays):
        raise ValueError("columns have unequal lengths")
    with open(path, "w", encoding="utf-8") as fh:
        for key, val in (metadata or {}).items():
            fh.write(f"# {key}: {val}\n")
        fh.write(",".join(names) + "\n")
        for i in range(length):
            fields = []
            for a in arrays:
                v = a[i]
                if a.dtype.kind in "iu":
                    fields.append(str(int(v)))
                else:
                    fields.append(_fmt(v))
            fh.write(",".join(fields) + "\n")


def write_table(table: ConvergenceTable, path) -> None:
    """Write a convergence table in the n,error_plain,error_arnoldi layout."""
    columns = {"n": np.asarray(table.degrees, dtype=np.int64)}
    for name, vals in table.columns.items():
        columns[name] = np.asarray(vals, dtype=np.float64)
    write_csv(path, columns, table.metadata)


def _split_header(line: str) -> list:
    return [t.strip() for t in line.strip().split(",")]


def _read_rows(path):
    """Yield (lineno, fields) for non-comment rows; first yield is the header."""
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            yield lineno, _split_header(line)


def _parse_float(token: str, lineno: int, path) -> float:
    try:
        return float(token)
    except ValueError:
        raise PointsParseError(f"{path}: {token!r} is not a number", line=lineno) from None


def read_points(path):
    """Read a fitting points file; returns (abscissae, values).

    The header names the columns: x,f for real data; add xi for a complex
    abscissa and fi for a complex value (x,xi,f / x,f,fi / x,xi,f,fi).
    """
    rows = _read_rows(path)
    try:
        header_line, header = next(rows)
    except StopIteration:
        raise PointsParseError(f"{path}: empty points file", line=1) from None
    layouts = {
        ("x", "f"): (False, False),
        ("x", "xi", "f"): (True, False),
        ("x", "f", "fi"): (False, True),
        ("x", "xi", "f", "fi"): (True, True),
    }
    key = tuple(header)
    if key not in layouts:
        raise PointsParseError(
            f"{path}: header must name columns x[,xi],f[,fi], got {header}", line=header_line
        )
    cx, cf = layouts[key]
    xs, fs = [], []
    for lineno, fields in rows:
        if len(fields) != len(header):
            raise PointsParseError(
                f"{path}: expected {len(header)} fields, got {len(fields)}", line=lineno
            )
        vals = [_parse_float(t, lineno, path) for t in fields]
        it = iter(vals)
        x = next(it)
        x = complex(x, next(it)) if cx else x
        f = next(it)
        f = complex(f, next(it)) if cf else f
        xs.append(x)
        fs.append(f)
    if not xs:
        raise PointsParseError(f"{path}: no data rows", line=header_line)
    xarr = np.array(xs, dtype=np.complex128 if cx else np.float64)
    farr = np.array(fs, dtype=np.complex128 if cf else np.float64)
    return xarr, farr


def read_grid(path) -> np.ndarray:
    """Read an evaluation grid file with header s or s,si."""
    rows = _read_rows(path)
    try:
        header_line, header = next(rows)
    except StopIteration:
        raise PointsParseError(f"{path}: empty grid file", line=1) from None
    if tuple(header) == ("s",):
        cx = False
    elif tuple(header) == ("s", "si"):
        cx = True
    else:
        raise PointsParseError(f"{path}: header must be s or s,si, got {header}", line=header_line)
    out = []
    for lineno, fields in rows:
        if len(fields) != len(header):
            raise PointsParseError(
                f"{path}: expected {len(header)} fields, got {len(fields)}", line=lineno
            )
        vals = [_parse_float(t, lineno, path) for t in fields]
        out.append(complex(vals[0], vals[1]) if cx else vals[0])
    if not out:
        raise PointsParseError(f"{path}: no data rows", line=header_line)
    return np.array(out, dtype=np.complex128 if cx else np.float64)


def write_eval(path, s: np.ndarray, y: np.ndarray) -> None:
    """Write evaluation results as s[,si],y[,yi]."""
    columns = {}
    if s.dtype.kind == "c":
        columns["s"] = s.real
        columns["si"] = s.imag
    else:
        columns["s"] = s
    if y.dtype.kind == "c":
        columns["y"] = y.real
        columns["yi"] = y.imag
    else:
        columns["y"] = y
    write_csv(path, columns)
