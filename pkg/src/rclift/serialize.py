"""JSON encoding of matrices, series, data sets and reports.

Complex numbers are ``[re, im]`` pairs and matrices are row-major nested
lists.  A series is ``{"in_dim", "out_dim", "coeffs"}`` and a data set is
``{"A", "Tprime", "R", "Q"}``.  Decoders also accept plain real numbers.
"""

from __future__ import annotations

import json
import math
from dataclasses import is_dataclass
from importlib.resources import files

import numpy as np

from .analytic import TaylorFn
from .dataset import DataSet
from .exceptions import DimensionMismatch
from .lifting import GammaOp
from .schurpair import SchurPair

__all__ = [
    "MalformedInput",
    "encode_matrix",
    "decode_matrix",
    "encode_taylor",
    "decode_taylor",
    "encode_dataset",
    "decode_dataset",
    "encode_gamma",
    "decode_gamma",
    "encode_pair",
    "decode_pair",
    "sanitize",
    "dumps",
    "load",
    "corpus_names",
    "corpus_path",
    "load_corpus",
]


class MalformedInput(ValueError):
    """Raised when a JSON document does not describe the expected object."""


def _decode_scalar(x) -> complex:
    if isinstance(x, bool):
        raise MalformedInput("booleans are not numbers")
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, (list, tuple)) and len(x) == 2 and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in x
    ):
        return complex(x[0], x[1])
    raise MalformedInput(f"not a number or [re, im] pair: {x!r}")


def encode_matrix(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[float(v.real), float(v.imag)] for v in row] for row in m]


def decode_matrix(obj, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise MalformedInput("a matrix must be a list of rows")
    widths = {len(r) for r in obj}
    if len(widths) > 1:
        raise MalformedInput("matrix rows have different lengths")
    n_rows = len(obj)
    n_cols = widths.pop() if widths else (cols or 0)
    if n_rows == 0 and cols is not None:
        n_cols = cols
    out = np.zeros((n_rows, n_cols), dtype=complex)
    for i, r in enumerate(obj):
        for j, x in enumerate(r):
            out[i, j] = _decode_scalar(x)
    if not np.all(np.isfinite(out)):
        raise MalformedInput("matrix entries must be finite")
    if (rows is not None and n_rows != rows) or (cols is not None and n_cols != cols):
        raise MalformedInput(f"expected a {rows}x{cols} matrix, got {n_rows}x{n_cols}")
    return out


def encode_taylor(T: TaylorFn) -> dict:
    return {
        "in_dim": T.in_dim,
        "out_dim": T.out_dim,
        "coeffs": [encode_matrix(c) for c in T.coeffs],
    }


def _require(obj, keys, what):
    if not isinstance(obj, dict):
        raise MalformedInput(f"{what} must be a JSON object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise MalformedInput(f"{what} is missing {', '.join(missing)}")


def decode_taylor(obj) -> TaylorFn:
    _require(obj, ("in_dim", "out_dim", "coeffs"), "series")
    p, q = obj["in_dim"], obj["out_dim"]
    if not all(isinstance(v, int) and not isinstance(v, bool) and v >= 0 for v in (p, q)):
        raise MalformedInput("in_dim and out_dim must be nonnegative integers")
    cs = obj["coeffs"]
    if not isinstance(cs, list) or not cs:
        raise MalformedInput("coeffs must be a nonempty list of matrices")
    return TaylorFn(np.stack([decode_matrix(c, q, p) for c in cs]))


def encode_dataset(ds: DataSet) -> dict:
    return {k: encode_matrix(getattr(ds, k)) for k in ("A", "Tprime", "R", "Q")}


def decode_dataset(obj) -> DataSet:
    _require(obj, ("A", "Tprime", "R", "Q"), "data set")
    try:
        return DataSet(*(decode_matrix(obj[k]) for k in ("A", "Tprime", "R", "Q")))
    except DimensionMismatch as exc:
        raise MalformedInput(str(exc)) from exc


def encode_gamma(g: GammaOp) -> dict:
    return {"degree": g.degree, "theta": encode_taylor(g.theta)}


def decode_gamma(obj) -> GammaOp:
    """Accepts ``{"theta": series}`` or a bare series."""
    if isinstance(obj, dict) and "theta" in obj:
        obj = obj["theta"]
    return GammaOp(decode_taylor(obj))


def encode_pair(p: SchurPair) -> dict:
    return {"F": encode_taylor(p.F), "G": encode_taylor(p.G), "w0_deviation": p.w0_deviation}


def decode_pair(obj) -> SchurPair:
    _require(obj, ("F", "G"), "Schur pair")
    try:
        return SchurPair(decode_taylor(obj["F"]), decode_taylor(obj["G"]))
    except DimensionMismatch as exc:
        raise MalformedInput(str(exc)) from exc


def sanitize(obj):
    """Plain JSON types; non-finite floats become ``None``."""
    if isinstance(obj, dict):
        return {str(k): sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [sanitize(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return f if math.isfinite(f) else None
    if isinstance(obj, (complex, np.complexfloating)):
        return [sanitize(obj.real), sanitize(obj.imag)]
    if isinstance(obj, np.ndarray):
        return sanitize(obj.tolist())
    if isinstance(obj, TaylorFn):
        return encode_taylor(obj)
    if is_dataclass(obj) and hasattr(obj, "to_dict"):
        return sanitize(obj.to_dict())
    if obj is None or isinstance(obj, str):
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(sanitize(obj), sort_keys=True, indent=2, allow_nan=False) + "\n"


def load(path) -> object:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path} is not valid JSON: {exc.msg} at line {exc.lineno}") from exc


def corpus_names() -> list[str]:
    """Names of the data sets shipped with the package."""
    return sorted(p.name[:-5] for p in files("rclift").joinpath("corpus").iterdir() if p.name.endswith(".json"))


def corpus_path(name: str):
    return files("rclift").joinpath("corpus", f"{name}.json")


def load_corpus(name: str) -> DataSet:
    return decode_dataset(json.loads(corpus_path(name).read_text(encoding="utf-8")))
