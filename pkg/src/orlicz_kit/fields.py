"""Sampled fields on uniform grids over a window of R^n (n = 1, 2).

Samples live at cell centers placed symmetrically about the origin
(coordinate i maps to (i - (N-1)/2) * h along each axis) and the field is
extended by zero outside the window.  Balls are open; a cell belongs to a
ball when its center does.  Means over balls divide by the number of
*lattice* centers in the ball, so a ball overhanging the window picks up
the implicit zeros.

One normalization subtlety is load-bearing for the norm identities: in 1d,
a ball centered on a cell with radius (k + 1/2) * h contains exactly
2k + 1 cells, so its discrete measure h * count equals the continuum
measure 2r exactly.  Ball constructors expose ``snap=True`` to produce
such measure-exact balls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from pathlib import Path

import numpy as np

UNIT_BALL_VOLUME = {1: 2.0, 2: math.pi}
SPHERE_MEASURE = {1: 2.0, 2: 2.0 * math.pi}


@dataclass(frozen=True)
class SampledField:
    h: float
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if self.h <= 0:
            raise ValueError("need h > 0")
        if v.ndim not in (1, 2):
            raise ValueError("fields are 1-d or 2-d")
        object.__setattr__(self, "values", v)

    @property
    def dim(self) -> int:
        return self.values.ndim

    @property
    def shape(self) -> tuple:
        return self.values.shape

    @property
    def half_width(self) -> float:
        return max(self.shape) * self.h / 2.0

    @property
    def cell_volume(self) -> float:
        return self.h ** self.dim

    def axis_coords(self, axis: int = 0) -> np.ndarray:
        n = self.shape[axis]
        return (np.arange(n) - (n - 1) / 2.0) * self.h

    def coords(self) -> np.ndarray:
        """Cell-center coordinates: (N,) in 1d, (Nx, Ny, 2) in 2d."""
        if self.dim == 1:
            return self.axis_coords(0)
        xs = self.axis_coords(0)
        ys = self.axis_coords(1)
        return np.stack(np.meshgrid(xs, ys, indexing="ij"), axis=-1)

    def radii(self) -> np.ndarray:
        """Distance of each cell center from the origin."""
        if self.dim == 1:
            return np.abs(self.axis_coords(0))
        c = self.coords()
        return np.hypot(c[..., 0], c[..., 1])

    def like(self, values: np.ndarray) -> "SampledField":
        if np.asarray(values).shape != self.shape:
            raise ValueError("replacement values must match the grid shape")
        return SampledField(self.h, np.asarray(values, dtype=float))


def field_from_function(fn, h: float, n_cells: int, dim: int = 1) -> SampledField:
    """Sample a callable on the symmetric grid; fn takes coords (vectorized)."""
    if dim == 1:
        xs = (np.arange(n_cells) - (n_cells - 1) / 2.0) * h
        return SampledField(h, np.asarray(fn(xs), dtype=float))
    xs = (np.arange(n_cells) - (n_cells - 1) / 2.0) * h
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    return SampledField(h, np.asarray(fn(X, Y), dtype=float))


@dataclass(frozen=True)
class Ball:
    center: tuple
    radius: float

    def __post_init__(self):
        c = self.center if isinstance(self.center, tuple) else (float(self.center),)
        object.__setattr__(self, "center", tuple(float(x) for x in c))
        if self.radius <= 0:
            raise ValueError("ball radius must be positive")

    @property
    def dim(self) -> int:
        return len(self.center)

    @property
    def volume(self) -> float:
        return UNIT_BALL_VOLUME[self.dim] * self.radius ** self.dim


def ball_mask(f: SampledField, ball: Ball) -> np.ndarray:
    """Boolean mask of in-window cells whose centers lie in the open ball."""
    if ball.dim != f.dim:
        raise ValueError("ball and field dimensions differ")
    if f.dim == 1:
        return np.abs(f.axis_coords(0) - ball.center[0]) < ball.radius
    c = f.coords()
    d = np.hypot(c[..., 0] - ball.center[0], c[..., 1] - ball.center[1])
    return d < ball.radius


def lattice_count(f: SampledField, ball: Ball) -> int:
    """Number of infinite-lattice cell centers in the open ball."""
    h = f.h

    def count_1d(center: float, r: float, axis: int) -> int:
        off = (f.shape[axis] - 1) / 2.0
        lo = center / h + off - r / h
        hi = center / h + off + r / h
        return max(0, math.floor(math.nextafter(hi, -math.inf))
                   - math.ceil(math.nextafter(lo, math.inf)) + 1)

    if f.dim == 1:
        return count_1d(ball.center[0], ball.radius, 0)
    total = 0
    offy = (f.shape[1] - 1) / 2.0
    j_lo = math.ceil(ball.center[1] / h + offy - ball.radius / h)
    j_hi = math.floor(ball.center[1] / h + offy + ball.radius / h)
    for j in range(j_lo, j_hi + 1):
        y = (j - offy) * h
        dy = y - ball.center[1]
        if abs(dy) >= ball.radius:
            continue
        half = math.sqrt(ball.radius ** 2 - dy ** 2)
        total += count_1d(ball.center[0], half, 0)
    return total


def ball_mean(f: SampledField, ball: Ball) -> float:
    """Average of samples over the ball; overhang contributes zeros."""
    mask = ball_mask(f, ball)
    n_lat = lattice_count(f, ball)
    if n_lat == 0:
        raise ValueError(f"ball {ball} contains no cell centers (radius below resolution)")
    return float(np.sum(f.values[mask])) / n_lat


def distribution(f: SampledField, t: float, ball: Ball | None = None) -> float:
    """m(G, f, t): measure of {|f| > t} within the ball (or the whole space)."""
    if t < 0:
        raise ValueError("need t >= 0")
    absv = np.abs(f.values)
    if ball is None:
        return f.cell_volume * float(np.count_nonzero(absv > t))
    mask = ball_mask(f, ball)
    return f.cell_volume * float(np.count_nonzero(absv[mask] > t))


# ---------------------------------------------------------------------------
# ball families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BallFamily:
    """Finite ball collection for the discretized sup over all balls.

    ``dense1d`` stands for every interval with cell-aligned endpoints; the
    operator implementations expand it implicitly and exactly.
    """

    kind: str  # "explicit" | "dense1d"
    balls: tuple = ()
    note: str = ""

    def __post_init__(self):
        if self.kind not in ("explicit", "dense1d"):
            raise ValueError("kind must be 'explicit' or 'dense1d'")
        if self.kind == "explicit" and not self.balls:
            raise ValueError("explicit family must contain at least one ball")

    def __len__(self):
        return len(self.balls)


def dense_family() -> BallFamily:
    return BallFamily("dense1d", note="all cell-aligned intervals")


def snap_radius_1d(r: float, h: float) -> float:
    """Nearest (k + 1/2) * h, the measure-exact radii for on-grid centers."""
    k = max(0, round(r / h - 0.5))
    return (k + 0.5) * h


def geometric_family(f: SampledField, r0: float, kappa: float, levels: int | None = None,
                     center_stride: int = 1, snap: bool = False) -> BallFamily:
    """Centers on every ``center_stride``-th cell, radii r0 * kappa^j <= 2L."""
    if kappa <= 1.0 or r0 <= 0:
        raise ValueError("need r0 > 0 and kappa > 1")
    rmax = 2.0 * f.half_width
    radii = []
    r = r0
    j = 0
    while r <= rmax and (levels is None or j < levels):
        radii.append(snap_radius_1d(r, f.h) if (snap and f.dim == 1) else r)
        r *= kappa
        j += 1
    if not radii:
        raise ValueError("family radii are empty; r0 exceeds the window")
    radii = sorted(set(radii))
    balls = []
    if f.dim == 1:
        for c in f.axis_coords(0)[::center_stride]:
            for r in radii:
                balls.append(Ball((float(c),), r))
    else:
        xs = f.axis_coords(0)[::center_stride]
        ys = f.axis_coords(1)[::center_stride]
        for cx in xs:
            for cy in ys:
                for r in radii:
                    balls.append(Ball((float(cx), float(cy)), r))
    return BallFamily("explicit", tuple(balls),
                      note=f"geometric r0={r0:g} kappa={kappa:g} stride={center_stride}")


def absolute_family(half_width: float, r0: float, kappa: float,
                    center_spacing: float, dim: int = 1,
                    r_max: float | None = None) -> BallFamily:
    """Grid-independent family: centers on an absolute lattice, geometric radii.

    Refinement studies need the *same* balls at every resolution, so this
    constructor never consults a field.
    """
    if kappa <= 1.0 or r0 <= 0 or center_spacing <= 0:
        raise ValueError("need r0 > 0, kappa > 1, center_spacing > 0")
    rmax = 2.0 * half_width if r_max is None else r_max
    radii = []
    r = r0
    while r <= rmax:
        radii.append(r)
        r *= kappa
    if not radii:
        raise ValueError("family radii are empty; r0 exceeds the window")
    m = int(math.floor(half_width / center_spacing))
    axis = [k * center_spacing for k in range(-m, m + 1)]
    balls = []
    if dim == 1:
        for c in axis:
            for r in radii:
                balls.append(Ball((c,), r))
    else:
        for cx in axis:
            for cy in axis:
                for r in radii:
                    balls.append(Ball((cx, cy), r))
    return BallFamily("explicit", tuple(balls),
                      note=f"absolute r0={r0:g} kappa={kappa:g} spacing={center_spacing:g}")


def balls_at_origin(f: SampledField, radii, snap: bool = True) -> BallFamily:
    origin = (0.0,) * f.dim
    rr = [snap_radius_1d(r, f.h) if (snap and f.dim == 1) else float(r) for r in radii]
    return BallFamily("explicit", tuple(Ball(origin, r) for r in rr), note="origin radii")


# ---------------------------------------------------------------------------
# CSV I/O
# ---------------------------------------------------------------------------

def write_field_csv(f: SampledField, path) -> None:
    path = Path(path)
    with path.open("w") as fh:
        if f.dim == 1:
            fh.write(f"# n=1 h={f.h!r} cells={f.shape[0]}\n")
            fh.write("x,value\n")
            for x, v in zip(f.axis_coords(0), f.values):
                fh.write(f"{x!r},{v!r}\n")
        else:
            fh.write(f"# n=2 h={f.h!r} cells={f.shape[0]}x{f.shape[1]}\n")
            for row in f.values:
                fh.write(",".join(repr(v) for v in row) + "\n")


def read_field_csv(path) -> SampledField:
    path = Path(path)
    lines = [ln.strip() for ln in path.read_text().splitlines() if ln.strip()]
    if not lines:
        raise ValueError(f"{path}: empty field file")
    meta = {}
    if lines[0].startswith("#"):
        for tok in lines[0][1:].split():
            if "=" in tok:
                k, v = tok.split("=", 1)
                meta[k] = v
        lines = lines[1:]
    dim = int(meta.get("n", 1))
    if dim == 1:
        if lines and lines[0].lower().replace(" ", "") == "x,value":
            lines = lines[1:]
        xs, vs = [], []
        for ln in lines:
            parts = ln.split(",")
            if len(parts) != 2:
                raise ValueError(f"{path}: malformed 1-d row {ln!r}")
            xs.append(float(parts[0]))
            vs.append(float(parts[1]))
        xs = np.asarray(xs)
        if xs.size < 2:
            raise ValueError(f"{path}: need at least two samples")
        steps = np.diff(xs)
        h = float(meta.get("h", steps[0]))
        if np.any(np.abs(steps - h) > 1e-9 * max(h, 1.0)):
            raise ValueError(f"{path}: sample abscissae are not uniform")
        if abs(xs[0] + xs[-1]) > 1e-9 * max(abs(xs[0]), 1.0):
            raise ValueError(f"{path}: grid must be symmetric about the origin")
        return SampledField(h, np.asarray(vs))
    if "h" not in meta:
        raise ValueError(f"{path}: 2-d field needs h in the header")
    rows = [np.asarray([float(x) for x in ln.split(",")]) for ln in lines]
    mat = np.vstack(rows)
    return SampledField(float(meta["h"]), mat)
