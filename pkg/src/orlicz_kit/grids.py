"""Log-spaced sampling grids and the grid-stability rule.

Finite sampling can refute a universal inequality but never prove one, so
every "holds" verdict in this library is backed by the same heuristic: the
reported constant must change by less than 1% when the grid range expands
tenfold on each side and the density doubles.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

STABILITY_RTOL = 0.01


def log_grid(lo: float, hi: float, n: int) -> np.ndarray:
    if not (0.0 < lo < hi) or n < 2:
        raise ValueError("need 0 < lo < hi and n >= 2")
    return np.geomspace(lo, hi, n)


def default_log_grid(lo: float = 1e-8, hi: float = 1e8, n: int = 400) -> np.ndarray:
    return log_grid(lo, hi, n)


def extend_grid(grid: np.ndarray, factor: float = 10.0, densify: int = 2) -> np.ndarray:
    grid = np.asarray(grid, dtype=float)
    return log_grid(grid.min() / factor, grid.max() * factor, densify * grid.size)


def grid_stable(value_of: Callable[[np.ndarray], float], grid: np.ndarray,
                rtol: float = STABILITY_RTOL) -> dict:
    """Evaluate on the grid and its extension; stable = finite and <1% apart."""
    v1 = value_of(np.asarray(grid, dtype=float))
    v2 = value_of(extend_grid(np.asarray(grid, dtype=float)))
    finite = math.isfinite(v1) and math.isfinite(v2)
    drift = abs(v2 - v1) / max(abs(v1), 1e-300) if finite else math.inf
    return {"value": v1, "extended_value": v2, "stable": finite and drift <= rtol,
            "drift": drift}
