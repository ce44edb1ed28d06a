"""Text rendering of numbers, vectors and matrices.

All floats are printed with 17 significant digits so every double-precision
value round-trips exactly through ``float()``.
"""

import re

import numpy as np

# Decimal or scientific notation only; no inf/nan, no locale separators.
FLOAT_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


def fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def fmt_vector(v) -> str:
    """``[x,y,z]`` with 17-significant-digit entries."""
    return "[" + ",".join(fmt_float(c) for c in np.asarray(v).ravel()) + "]"


def fmt_matrix(m) -> str:
    """Row-major matrix text: rows separated by ``;``, entries by ``,``."""
    rows = [",".join(fmt_float(c) for c in row) for row in np.asarray(m)]
    return "[" + ";".join(rows) + "]"


def parse_float(token: str) -> float:
    if not FLOAT_RE.match(token):
        raise ValueError(f"not a number: {token!r}")
    return float(token)


def parse_float_list(text: str, count: int | None = None) -> list[float]:
    """Parse ``a,b,c`` into floats, optionally enforcing the element count."""
    tokens = text.split(",")
    if count is not None and len(tokens) != count:
        raise ValueError(f"expected {count} comma-separated values, got {len(tokens)}")
    return [parse_float(t) for t in tokens]
