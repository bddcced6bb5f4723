"""Extended-real arithmetic on [0, inf].

Young functions map [0, inf] to [0, inf], so products and sums of their
values must follow the measure-theoretic conventions

    x + inf = inf,   c * inf = inf (c > 0),   0 * inf = 0.

Plain IEEE arithmetic gets the first two right but turns 0 * inf into nan;
the helpers here patch that single hole, for scalars and numpy arrays.
"""

from __future__ import annotations

import math

import numpy as np

INF = math.inf


def is_finite(x: float) -> bool:
    return x < INF


def xmul(a: float, b: float) -> float:
    """Product on [0, inf] with 0 * inf = 0."""
    if a == 0.0 or b == 0.0:
        return 0.0
    return a * b


def xdiv(a: float, b: float) -> float:
    """Quotient on [0, inf]: x/0 = inf for x > 0, 0/0 = 0, x/inf = 0 for finite x."""
    if a == 0.0:
        return 0.0
    if b == 0.0:
        return INF
    if math.isinf(a) and math.isinf(b):
        return INF
    if math.isinf(b):
        return 0.0
    return a / b


def xmul_arr(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Elementwise product with the 0 * inf = 0 convention."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    with np.errstate(invalid="ignore"):
        out = a * b
    zero = (a == 0.0) | (b == 0.0)
    if np.any(zero):
        out = np.where(zero, 0.0, out)
    return out


def sup(values) -> float:
    """Supremum of a (possibly empty) collection of extended reals."""
    arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values, dtype=float)
    if arr.size == 0:
        return 0.0
    return float(np.max(arr))


def rel_close(a: float, b: float, tol: float) -> bool:
    """Relative agreement on [0, inf]; two infinities agree."""
    if math.isinf(a) or math.isinf(b):
        return math.isinf(a) and math.isinf(b)
    scale = max(abs(a), abs(b), 1e-300)
    return abs(a - b) <= tol * scale
