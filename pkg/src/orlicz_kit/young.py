"""Young-function algebra on the extended half line.

A Young function is an increasing, convex Phi: [0, inf] -> [0, inf] with
Phi(0) = 0, left continuous before its blow-up point b(Phi).  The catalog
below also carries one deliberately non-convex member (``ExpPower``) that
is equivalent to a convex function, so code downstream must never assume
more than monotonicity plus left continuity.

Everything an Orlicz-type norm needs lives here: evaluation (vectorized),
the thresholds a(Phi) and b(Phi), the generalized (right-continuous)
inverse ``inf{t : Phi(t) > u}``, the convex conjugate, the doubling-type
growth checks, and the Y1/Y2/Y3 classification by blow-up behaviour.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .extreal import INF
from .grids import default_log_grid, extend_grid

_INV_BISECT_STEPS = 90


class YoungFunction:
    """Base class: increasing [0, inf] -> [0, inf] with Phi(0) = 0."""

    family = "abstract"
    convex = True

    # -- evaluation ---------------------------------------------------------

    def values(self, t: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, t: float) -> float:
        if t == INF:
            return INF
        return float(self.values(np.asarray([t], dtype=float))[0])

    # -- thresholds ---------------------------------------------------------

    @property
    def a_threshold(self) -> float:
        """sup{t : Phi(t) = 0}, with sup(empty) = 0."""
        raise NotImplementedError

    @property
    def b_threshold(self) -> float:
        """inf{t : Phi(t) = inf}, with inf(empty) = inf."""
        raise NotImplementedError

    # -- generalized inverse -------------------------------------------------

    def inverse(self, u: float) -> float:
        """inf{t >= 0 : Phi(t) > u} for finite u; inf at u = inf."""
        if u == INF:
            return INF
        if u < 0:
            raise ValueError("generalized inverse needs u >= 0")
        return self._inverse_scalar(u)

    def inverse_values(self, u: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        return np.asarray([self.inverse(x) for x in u.ravel()]).reshape(u.shape)

    def _inverse_scalar(self, u: float) -> float:
        # Log-scale bisection on the monotone predicate Phi(t) > u.
        b = self.b_threshold
        if math.isfinite(b):
            hi = b
            if not self(hi) > u:
                # Phi finite at b; the blow-up sits immediately beyond.
                return b
        else:
            hi = 1.0
            while not self(hi) > u:
                hi *= 16.0
                if hi > 1e300:
                    return INF
        lo = 1e-300
        if self(lo) > u:
            return 0.0
        for _ in range(_INV_BISECT_STEPS):
            mid = math.sqrt(lo * hi)
            if self(mid) > u:
                hi = mid
            else:
                lo = mid
        return hi

    # -- conjugate -----------------------------------------------------------

    def conjugate(self) -> "YoungFunction":
        """Convex conjugate sup{t u - Phi(u) : u in [0, inf)}."""
        return numeric_conjugate(self)

    # -- misc ----------------------------------------------------------------

    @property
    def params(self) -> dict:
        return {}

    def label(self) -> str:
        ps = ",".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"{self.family}({ps})"

    def __repr__(self) -> str:
        return self.label()


@dataclass(frozen=True, repr=False)
class ScaledPower(YoungFunction):
    """Phi(t) = coef * t**p with p >= 1; covers t^p and t^p/p."""

    coef: float = 1.0
    p: float = 2.0
    family = "power"

    def __post_init__(self):
        if self.coef <= 0 or self.p < 1:
            raise ValueError("need coef > 0 and p >= 1")

    def values(self, t):
        t = np.asarray(t, dtype=float)
        with np.errstate(over="ignore"):
            return self.coef * t ** self.p

    @property
    def a_threshold(self):
        return 0.0

    @property
    def b_threshold(self):
        return INF

    def _inverse_scalar(self, u):
        return (u / self.coef) ** (1.0 / self.p)

    def inverse_values(self, u):
        u = np.asarray(u, dtype=float)
        return (u / self.coef) ** (1.0 / self.p)

    def conjugate(self):
        if self.p == 1.0:
            return ZeroInfStep(self.coef)
        pc = self.p / (self.p - 1.0)
        coef_c = (1.0 - 1.0 / self.p) * (self.coef * self.p) ** (-1.0 / (self.p - 1.0))
        return ScaledPower(coef_c, pc)

    @property
    def params(self):
        return {"coef": self.coef, "p": self.p}


def power(p: float) -> ScaledPower:
    """Phi(t) = t**p."""
    return ScaledPower(1.0, p)


def power_over_p(p: float) -> ScaledPower:
    """Phi(t) = t**p / p, the normalization whose conjugate is t**p'/p'."""
    return ScaledPower(1.0 / p, p)


@dataclass(frozen=True, repr=False)
class CappedLinear(YoungFunction):
    """Phi(t) = t on [0, 1], inf beyond; the simplest Y3 member."""

    family = "capped_linear"

    def values(self, t):
        t = np.asarray(t, dtype=float)
        return np.where(t > 1.0, INF, t)

    @property
    def a_threshold(self):
        return 0.0

    @property
    def b_threshold(self):
        return 1.0

    def _inverse_scalar(self, u):
        return min(u, 1.0)

    def inverse_values(self, u):
        return np.minimum(np.asarray(u, dtype=float), 1.0)

    def conjugate(self):
        return ShiftedLinear(1.0)


@dataclass(frozen=True, repr=False)
class ShiftedLinear(YoungFunction):
    """Phi(t) = max(0, t - a); conjugate partner of the capped ramp."""

    a: float = 1.0
    family = "shifted_linear"

    def values(self, t):
        t = np.asarray(t, dtype=float)
        return np.maximum(0.0, t - self.a)

    @property
    def a_threshold(self):
        return self.a

    @property
    def b_threshold(self):
        return INF

    def _inverse_scalar(self, u):
        return self.a + u

    def inverse_values(self, u):
        return self.a + np.asarray(u, dtype=float)

    def conjugate(self):
        if self.a == 1.0:
            return CappedLinear()
        return numeric_conjugate(self)

    @property
    def params(self):
        return {"a": self.a}


@dataclass(frozen=True, repr=False)
class ShiftedSquare(YoungFunction):
    """Phi(t) = max(0, t**2 - 4), vanishing up to t = 2."""

    family = "shifted_square"

    def values(self, t):
        t = np.asarray(t, dtype=float)
        with np.errstate(over="ignore"):
            return np.maximum(0.0, t * t - 4.0)

    @property
    def a_threshold(self):
        return 2.0

    @property
    def b_threshold(self):
        return INF

    def _inverse_scalar(self, u):
        return math.sqrt(u + 4.0) if u < INF else INF

    def inverse_values(self, u):
        return np.sqrt(np.asarray(u, dtype=float) + 4.0)

    def conjugate(self):
        return ShiftedSquareConj()


@dataclass(frozen=True, repr=False)
class ShiftedSquareConj(YoungFunction):
    """Conjugate of max(0, t**2 - 4): 2t up to t = 4, then t**2/4 + 4."""

    family = "shifted_square_conj"

    def values(self, t):
        t = np.asarray(t, dtype=float)
        with np.errstate(over="ignore"):
            return np.where(t <= 4.0, 2.0 * t, 0.25 * t * t + 4.0)

    @property
    def a_threshold(self):
        return 0.0

    @property
    def b_threshold(self):
        return INF

    def _inverse_scalar(self, u):
        if u == INF:
            return INF
        return 0.5 * u if u < 8.0 else 2.0 * math.sqrt(u - 4.0)

    def inverse_values(self, u):
        u = np.asarray(u, dtype=float)
        with np.errstate(invalid="ignore"):
            big = 2.0 * np.sqrt(np.maximum(u - 4.0, 0.0))
        return np.where(u < 8.0, 0.5 * u, big)

    def conjugate(self):
        return ShiftedSquare()


@dataclass(frozen=True, repr=False)
class ExpPower(YoungFunction):
    """Phi(t) = exp(1 - t**-p) for t <= 1, exp(t**p - 1) beyond.

    Increasing and continuous but concave on a stretch below t = 1, so it
    is *not* convex; it is equivalent to its convex envelope and models
    exp-type integrability scales.
    """

    p: float = 1.0
    family = "exp_power"
    convex = False

    def __post_init__(self):
        if self.p <= 0:
            raise ValueError("need p > 0")

    def values(self, t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore", over="ignore"):
            low = np.exp(1.0 - t ** (-self.p))
            high = np.exp(t ** self.p - 1.0)
        out = np.where(t <= 1.0, low, high)
        return np.where(t == 0.0, 0.0, out)

    @property
    def a_threshold(self):
        return 0.0

    @property
    def b_threshold(self):
        return INF

    def _inverse_scalar(self, u):
        if u == 0.0:
            return 0.0
        if u == INF:
            return INF
        if u <= 1.0:
            return (1.0 - math.log(u)) ** (-1.0 / self.p)
        return (1.0 + math.log(u)) ** (1.0 / self.p)

    def inverse_values(self, u):
        u = np.asarray(u, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            low = (1.0 - np.log(u)) ** (-1.0 / self.p)
            high = (1.0 + np.log(np.maximum(u, 1.0))) ** (1.0 / self.p)
        out = np.where(u <= 1.0, low, high)
        return np.where(u == 0.0, 0.0, out)

    @property
    def params(self):
        return {"p": self.p}


@dataclass(frozen=True, repr=False)
class ZeroInfStep(YoungFunction):
    """Phi = 0 on [0, c], inf beyond: conjugate of a linear ramp."""

    c: float = 1.0
    family = "zero_inf_step"

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError("need c > 0")

    def values(self, t):
        t = np.asarray(t, dtype=float)
        return np.where(t > self.c, INF, 0.0)

    @property
    def a_threshold(self):
        return self.c

    @property
    def b_threshold(self):
        return self.c

    def _inverse_scalar(self, u):
        return self.c

    def inverse_values(self, u):
        return np.full(np.asarray(u, dtype=float).shape, self.c)

    def conjugate(self):
        return ScaledPower(self.c, 1.0)

    @property
    def params(self):
        return {"c": self.c}


@dataclass(frozen=True, repr=False)
class ReciprocalGap(YoungFunction):
    """Phi(t) = max(0, (t - a)/(b - t)) for t < b, inf beyond: a Y2 blow-up."""

    a: float
    b: float
    family = "reciprocal_gap"

    def __post_init__(self):
        if not 0.0 <= self.a < self.b < INF:
            raise ValueError("need 0 <= a < b < inf")

    def values(self, t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            ramp = (t - self.a) / (self.b - t)
        out = np.where(t < self.b, np.maximum(0.0, ramp), INF)
        return out

    @property
    def a_threshold(self):
        return self.a

    @property
    def b_threshold(self):
        return self.b

    def _inverse_scalar(self, u):
        if u == INF:
            return INF
        return (self.a + u * self.b) / (1.0 + u)

    def inverse_values(self, u):
        u = np.asarray(u, dtype=float)
        out = (self.a + u * self.b) / (1.0 + u)
        return np.where(np.isinf(u), self.b, out)

    @property
    def params(self):
        return {"a": self.a, "b": self.b}


@dataclass(frozen=True, repr=False)
class SumYoung(YoungFunction):
    """Pointwise sum of Young functions (used by the Y3 -> Y2 majorant)."""

    parts: tuple
    family = "sum"

    def values(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        for part in self.parts:
            out = out + part.values(t)
        return out

    @property
    def a_threshold(self):
        return min(p.a_threshold for p in self.parts)

    @property
    def b_threshold(self):
        return min(p.b_threshold for p in self.parts)

    @property
    def convex(self):  # type: ignore[override]
        return all(p.convex for p in self.parts)

    def label(self):
        return "+".join(p.label() for p in self.parts)


@dataclass(frozen=True, repr=False)
class TabulatedYoung(YoungFunction):
    """Piecewise-linear Young function through (t_k, y_k) nodes.

    Nodes must be strictly increasing in t and non-decreasing in y; an
    ``inf`` value at node k means the function blows up immediately after
    node k-1.  Beyond the last finite node the last slope is extrapolated.
    """

    ts: tuple
    ys: tuple
    assume_convex: bool = True

    family = "tabulated"

    def __post_init__(self):
        ts = np.asarray(self.ts, dtype=float)
        ys = np.asarray(self.ys, dtype=float)
        if ts.ndim != 1 or ts.size < 2 or ts.size != ys.size:
            raise ValueError("need matching 1-d node arrays with >= 2 nodes")
        if np.any(np.diff(ts) <= 0):
            raise ValueError("node abscissae must be strictly increasing")
        fin = ys[np.isfinite(ys)]
        if np.any(np.diff(fin) < 0) or (ts[0] == 0.0 and ys[0] != 0.0):
            raise ValueError("table must be increasing with Phi(0) = 0")
        object.__setattr__(self, "_t", ts)
        object.__setattr__(self, "_y", ys)
        inf_idx = np.where(np.isinf(ys))[0]
        object.__setattr__(self, "_first_inf", int(inf_idx[0]) if inf_idx.size else -1)

    @property
    def convex(self):  # type: ignore[override]
        return self.assume_convex

    def values(self, t):
        t = np.asarray(t, dtype=float)
        ts, ys = self._t, self._y
        k = self._first_inf
        if k >= 0:
            t_blow = ts[k - 1] if k > 0 else 0.0
            ts_f, ys_f = ts[:k], ys[:k]
        else:
            t_blow = INF
            ts_f, ys_f = ts, ys
        if ts_f.size >= 2:
            out = np.interp(t, ts_f, ys_f)
            # extrapolate the last finite slope; a Young function keeps rising
            slope = (ys_f[-1] - ys_f[-2]) / (ts_f[-1] - ts_f[-2])
            beyond = t > ts_f[-1]
            if np.any(beyond):
                out = np.where(beyond, ys_f[-1] + slope * (t - ts_f[-1]), out)
        else:
            out = np.zeros_like(t)
        if ts_f.size and ts_f[0] > 0:
            out = np.where(t <= ts_f[0], ys_f[0] * t / ts_f[0], out)
        out = np.where(t > t_blow, INF, out)
        return np.where(t == 0.0, 0.0, out)

    @property
    def a_threshold(self):
        y = self._y
        pos = np.where(y > 0)[0]
        if pos.size == 0:
            return float(self._t[-1])
        k = pos[0]
        if k == 0:
            return 0.0
        # linear piece crosses zero at the previous node
        return float(self._t[k - 1])

    @property
    def b_threshold(self):
        k = self._first_inf
        if k < 0:
            return INF
        return float(self._t[k - 1]) if k > 0 else 0.0

    @property
    def params(self):
        return {"nodes": len(self.ts)}


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def thresholds(phi: YoungFunction) -> tuple[float, float]:
    """(a(Phi), b(Phi))."""
    return phi.a_threshold, phi.b_threshold


def gen_inverse(phi: YoungFunction, u: float) -> float:
    """Generalized inverse inf{t : Phi(t) > u}."""
    return phi.inverse(u)


def complementary(phi: YoungFunction) -> YoungFunction:
    """Conjugate partner; closed form where the family has one."""
    return phi.conjugate()


def numeric_conjugate(phi: YoungFunction, t_grid: np.ndarray | None = None,
                      n_u: int = 2000) -> TabulatedYoung:
    """Tabulated conjugate sup_u (t*u - Phi(u)) via a dense scan plus refinement."""
    if t_grid is None:
        t_grid = default_log_grid(1e-6, 1e6, 241)
    b = phi.b_threshold
    u_hi = b if math.isfinite(b) else None
    out = []
    for t in t_grid:
        if u_hi is None:
            # expand until the slope turns negative: t < Phi'(u) eventually
            hi = 1.0
            for _ in range(400):
                if phi(2 * hi) - phi(hi) > t * hi:
                    break
                hi *= 2.0
                if hi > 1e280:
                    raise ValueError(
                        "conjugate sup not bracketed: objective still rising at u=1e280")
            span = hi * 2.0
        else:
            span = u_hi
        us = np.linspace(0.0, span, n_u)
        vals = t * us - phi.values(us)
        vals = np.where(np.isnan(vals), -INF, vals)
        k = int(np.argmax(vals))
        lo = us[max(k - 1, 0)]
        hi2 = us[min(k + 1, n_u - 1)]
        out.append(max(0.0, _golden_max(lambda u: t * u - phi(u), lo, hi2)))
    ys = np.maximum.accumulate(np.asarray(out))
    ts = np.concatenate(([0.0], np.asarray(t_grid, dtype=float)))
    ys = np.concatenate(([0.0], ys))
    return TabulatedYoung(tuple(ts), tuple(ys))


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_max(f, lo: float, hi: float, iters: int = 80) -> float:
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(iters):
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = f(x1)
    return max(f1, f2)


def check_delta2(phi: YoungFunction, t_grid: np.ndarray | None = None) -> dict:
    """Doubling of values: constant = sup Phi(2t)/Phi(t) over the grid.

    Pairs with Phi(t) = Phi(2t) = 0 are skipped; Phi(2t) > 0 = Phi(t)
    counts as an infinite ratio.  The verdict is the finite-sample
    heuristic: finite and stable when the grid is extended.
    """
    if t_grid is None:
        t_grid = default_log_grid(1e-8, 1e8, 400)

    def constant(grid):
        num = phi.values(2.0 * np.asarray(grid))
        den = phi.values(np.asarray(grid))
        ratios = []
        for a, b in zip(den, num):
            if b == 0.0 or a == INF:
                continue  # 0/0 and inf/inf pairs carry no doubling information
            ratios.append(INF if a == 0.0 else b / a)
        return float(max(ratios)) if ratios else 1.0

    c1 = constant(t_grid)
    c2 = constant(extend_grid(t_grid))
    holds = math.isfinite(c1) and math.isfinite(c2) and abs(c2 - c1) <= 0.01 * max(c1, 1e-300)
    return {"holds": bool(holds), "constant": max(c1, c2)}


def check_nabla2(phi: YoungFunction, t_grid: np.ndarray | None = None,
                 k_grid: Sequence[float] | None = None) -> dict:
    """Lower doubling: smallest k in the grid with Phi(t) <= Phi(kt)/(2k) for all t."""
    if t_grid is None:
        t_grid = default_log_grid(1e-8, 1e8, 400)
    if k_grid is None:
        k_grid = (1.5, 2.0, 3.0, 4.0, 5.0, 8.0, 16.0, 32.0, 64.0)
    grids = (np.asarray(t_grid), extend_grid(np.asarray(t_grid)))
    for k in k_grid:
        ok = True
        for grid in grids:
            lhs = phi.values(grid)
            rhs = phi.values(k * grid) / (2.0 * k)
            with np.errstate(invalid="ignore"):
                bad = lhs > rhs
            # inf <= inf is fine; nan only arises from inf/inf which means rhs = inf
            if np.any(bad[np.isfinite(lhs)]):
                ok = False
                break
        if ok:
            return {"holds": True, "witness_k": float(k)}
    return {"holds": False, "witness_k": None}


def classify(phi: YoungFunction) -> str:
    """Y1: b = inf; Y2: b < inf with blow-up at b; Y3: finite value at b.

    The value at b follows the left-limit convention, so a jump exactly at
    b classifies by the limit from the left.
    """
    b = phi.b_threshold
    if not math.isfinite(b):
        return "Y1"
    return "Y2" if phi(b) == INF else "Y3"


def y3_to_y2_majorant(phi: YoungFunction, delta: float) -> SumYoung:
    """For Y3 input, a Y2 majorant Psi with Psi(delta*t) <= Phi(t) <= Psi(t)."""
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    if classify(phi) != "Y3":
        raise ValueError("majorant construction needs a Y3 input")
    b = phi.b_threshold
    return SumYoung((phi, ReciprocalGap(delta * b, b)))


def approx_equiv(phi: YoungFunction, psi: YoungFunction,
                 C_grid: Sequence[float] | None = None,
                 t_grid: np.ndarray | None = None) -> dict:
    """Argument-scaling equivalence: Phi(t/C) <= Psi(t) <= Phi(C t) on the grid."""
    if t_grid is None:
        t_grid = default_log_grid(1e-8, 1e8, 400)
    if C_grid is None:
        C_grid = [2.0 ** (k / 8.0) for k in range(0, 81)]
    t = np.asarray(t_grid, dtype=float)
    mid = psi.values(t)
    for C in sorted(C_grid):
        lo = phi.values(t / C)
        hi = phi.values(C * t)
        if np.all(lo <= mid) and np.all(mid <= hi):
            return {"equiv": True, "witness_C": float(C)}
    return {"equiv": False, "witness_C": None}


def convex_envelope(phi: YoungFunction, t_grid: np.ndarray | None = None) -> TabulatedYoung:
    """Lower convex envelope on a grid (tabulated), for equivalence tests."""
    if t_grid is None:
        t_grid = default_log_grid(1e-6, 1e3, 800)
    ts = np.concatenate(([0.0], np.asarray(t_grid, dtype=float)))
    ys = phi.values(ts)
    if np.any(np.isinf(ys)):
        cut = int(np.where(np.isinf(ys))[0][0])
        ts, ys = ts[:cut], ys[:cut]
    hull_t, hull_y = [], []
    for x, y in zip(ts, ys):
        hull_t.append(float(x))
        hull_y.append(float(y))
        while len(hull_t) >= 3:
            x1, x2, x3 = hull_t[-3:]
            y1, y2, y3 = hull_y[-3:]
            if (y2 - y1) * (x3 - x2) >= (y3 - y2) * (x2 - x1):
                del hull_t[-2], hull_y[-2]
            else:
                break
    return TabulatedYoung(tuple(hull_t), tuple(hull_y))


def default_catalog() -> dict[str, YoungFunction]:
    """The seven stock Young-type functions exercised by the test suites."""
    return {
        "power1": power(1.0),
        "power2": power(2.0),
        "power_over_2": power_over_p(2.0),
        "power_over_3": power_over_p(3.0),
        "capped_linear": CappedLinear(),
        "shifted_square": ShiftedSquare(),
        "exp_power1": ExpPower(1.0),
    }
