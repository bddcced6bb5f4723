"""Weight functions phi(r) and kernel functions rho(t) on (0, inf).

Weights normalize ball means in the Orlicz-Morrey norms; the admissible
class pairs an almost-decreasing phi with an almost-increasing phi(r)*r^n.
Kernels drive the fractional integral (rho(|x-y|)/|x-y|^n) and fractional
maximal (rho(radius) times ball mean) operators, and carry the two
admissibility conditions: integrability of rho(t)/t at zero, and the
window condition  sup_{r<=t<=2r} rho(t) <= C * int_{K1 r}^{K2 r} rho(t)/t dt.

All class-membership checks are finite-sample heuristics with the shared
grid-stability rule; a "holds" verdict means finite and stable, never a
proof of the universal statement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .extreal import INF
from .grids import default_log_grid, extend_grid, grid_stable, log_grid
from .quadrature import (ImproperResult, integrate_dt_over_t,
                         integrate_dt_over_t_from_zero)
from .young import YoungFunction


class RadialFunction:
    """Positive function of a radius, vectorized."""

    family = "abstract"

    def values(self, r: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, r: float) -> float:
        return float(self.values(np.asarray([r], dtype=float))[0])

    @property
    def params(self) -> dict:
        return {}

    def label(self) -> str:
        ps = ",".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"{self.family}({ps})"

    def __repr__(self) -> str:
        return self.label()


# ---------------------------------------------------------------------------
# weights
# ---------------------------------------------------------------------------

class WeightFunction(RadialFunction):
    pass


@dataclass(frozen=True, repr=False)
class PowerWeight(WeightFunction):
    """phi(r) = r**lam."""

    lam: float
    family = "power"

    def values(self, r):
        r = np.asarray(r, dtype=float)
        with np.errstate(divide="ignore", over="ignore"):
            return r ** self.lam

    @property
    def params(self):
        return {"lam": self.lam}


def reciprocal_power(n: int) -> PowerWeight:
    """phi(r) = r**-n, the weight that collapses the ball norms to Orlicz norms."""
    return PowerWeight(-float(n))


@dataclass(frozen=True, repr=False)
class PowerLogWeight(WeightFunction):
    """phi(r) = r**lam * (1 + |log r|)**beta."""

    lam: float
    beta: float
    family = "power_log"

    def values(self, r):
        r = np.asarray(r, dtype=float)
        with np.errstate(divide="ignore", over="ignore"):
            return r ** self.lam * (1.0 + np.abs(np.log(r))) ** self.beta

    @property
    def params(self):
        return {"lam": self.lam, "beta": self.beta}


@dataclass(frozen=True, repr=False)
class ConstantWeight(WeightFunction):
    c: float = 1.0
    family = "constant"

    def values(self, r):
        return np.full(np.asarray(r, dtype=float).shape, self.c)

    @property
    def params(self):
        return {"c": self.c}


@dataclass(frozen=True, repr=False)
class ComposedWeight(WeightFunction):
    """r -> Phi^{-1}(phi(r)); shows up as the target weight of embeddings."""

    young: YoungFunction
    weight: WeightFunction
    family = "composed"

    def values(self, r):
        return self.young.inverse_values(self.weight.values(np.asarray(r, dtype=float)))

    def label(self):
        return f"{self.young.label()}^-1({self.weight.label()})"


@dataclass(frozen=True, repr=False)
class TabulatedWeight(WeightFunction):
    """Log-log linear interpolation through positive nodes; clamped outside."""

    rs: tuple
    vals: tuple
    family = "tabulated"

    def __post_init__(self):
        rs = np.asarray(self.rs, dtype=float)
        vs = np.asarray(self.vals, dtype=float)
        if rs.ndim != 1 or rs.size < 2 or rs.size != vs.size:
            raise ValueError("need matching 1-d node arrays with >= 2 nodes")
        if np.any(np.diff(rs) <= 0) or np.any(rs <= 0) or np.any(vs <= 0):
            raise ValueError("nodes must be positive with increasing radii")
        object.__setattr__(self, "_logr", np.log(rs))
        object.__setattr__(self, "_logv", np.log(vs))

    def values(self, r):
        r = np.asarray(r, dtype=float)
        return np.exp(np.interp(np.log(r), self._logr, self._logv))

    @property
    def params(self):
        return {"nodes": len(self.rs)}


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------

class KernelFunction(RadialFunction):
    """Kernel rho with the window constants K1 < K2 of the sup condition."""

    K1 = 1.0
    K2 = 2.0


@dataclass(frozen=True, repr=False)
class PowerKernel(KernelFunction):
    """rho(t) = t**alpha."""

    alpha: float
    K1: float = 1.0
    K2: float = 2.0
    family = "power"

    def __post_init__(self):
        if not 0.0 < self.K1 < self.K2:
            raise ValueError("need 0 < K1 < K2")

    def values(self, t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore", over="ignore"):
            return t ** self.alpha

    @property
    def params(self):
        return {"alpha": self.alpha}


@dataclass(frozen=True, repr=False)
class LogKernel(KernelFunction):
    """Slowly varying kernel: (log(1/t))**-(alpha+1) for t < 1/e, 1 on
    [1/e, e], (log t)**(alpha-1) for t > e.  Both seams evaluate to 1, so
    the kernel is continuous and doubling."""

    alpha: float
    K1: float = 1.0
    K2: float = 2.0
    family = "log"

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("need alpha > 0")
        if not 0.0 < self.K1 < self.K2:
            raise ValueError("need 0 < K1 < K2")

    def values(self, t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            small = (-np.log(t)) ** (-(self.alpha + 1.0))
            large = np.log(np.maximum(t, 1.0)) ** (self.alpha - 1.0)
        out = np.ones_like(t)
        out = np.where(t < math.exp(-1.0), small, out)
        out = np.where(t > math.e, large, out)
        return out

    @property
    def params(self):
        return {"alpha": self.alpha}


@dataclass(frozen=True, repr=False)
class BesselKernel(KernelFunction):
    """rho(t) = min(t**alpha, exp(-t/2)).

    The exponential tail kills the doubling property at large t, but the
    kernel still satisfies the window condition provided the window
    reaches below r, hence the K1 = 1/2, K2 = 1 defaults.
    """

    alpha: float
    K1: float = 0.5
    K2: float = 1.0
    family = "bessel"

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("need alpha > 0")
        if not 0.0 < self.K1 < self.K2:
            raise ValueError("need 0 < K1 < K2")

    def values(self, t):
        t = np.asarray(t, dtype=float)
        with np.errstate(over="ignore"):
            return np.minimum(t ** self.alpha, np.exp(-t / 2.0))

    @property
    def params(self):
        return {"alpha": self.alpha}


@dataclass(frozen=True, repr=False)
class ConstantKernel(KernelFunction):
    """rho = c: the fractional maximal operator degenerates to the plain one."""

    c: float = 1.0
    K1: float = 1.0
    K2: float = 2.0
    family = "constant"

    def values(self, t):
        return np.full(np.asarray(t, dtype=float).shape, self.c)

    @property
    def params(self):
        return {"c": self.c}


@dataclass(frozen=True, repr=False)
class TabulatedKernel(KernelFunction):
    rs: tuple
    vals: tuple
    K1: float = 1.0
    K2: float = 2.0
    family = "tabulated"

    def __post_init__(self):
        object.__setattr__(self, "_interp", TabulatedWeight(self.rs, self.vals))

    def values(self, t):
        return self._interp.values(t)

    @property
    def params(self):
        return {"nodes": len(self.rs)}


# ---------------------------------------------------------------------------
# class checks
# ---------------------------------------------------------------------------

def almost_monotone_constant(values: np.ndarray, direction: str) -> float:
    """Smallest C with v(r) <= C v(s) (increasing) or v(s) <= C v(r)
    (decreasing) over all ordered grid pairs r < s; inf-aware."""
    v = np.asarray(values, dtype=float)
    if direction == "decreasing":
        v = v[::-1]
    elif direction != "increasing":
        raise ValueError("direction must be 'increasing' or 'decreasing'")
    # after normalization: need v[j] <= C v[k] for j < k
    best = 1.0
    run_max = -INF
    for x in v:
        if run_max > -INF:
            if x == 0.0:
                return INF if run_max > 0 else best
            ratio = run_max / x
            if ratio > best:
                best = ratio
        run_max = max(run_max, x)
        if math.isinf(run_max):
            # an inf can never be dominated by a later finite value
            idx = np.where(v == INF)[0]
            tail = v[idx[0]:]
            if np.any(np.isfinite(tail[tail > -INF]) & (tail < INF)):
                return INF
            return best
    return float(best)


def check_gdec(phi: WeightFunction, n: int, r_grid: np.ndarray | None = None) -> dict:
    """Weight class check: phi almost decreasing and phi(r) r^n almost increasing."""
    if r_grid is None:
        r_grid = default_log_grid()

    def constant(grid):
        v = phi.values(grid)
        c_dec = almost_monotone_constant(v, "decreasing")
        c_inc = almost_monotone_constant(v * grid ** float(n), "increasing")
        return max(c_dec, c_inc)

    st = grid_stable(constant, r_grid)
    return {"holds": bool(st["stable"]), "C": st["value"], "stability": st}


def check_doubling(theta: RadialFunction, r_grid: np.ndarray | None = None) -> dict:
    """Bounded ratio over grid pairs within a factor 2 of each other."""
    if r_grid is None:
        r_grid = default_log_grid()

    def constant(grid):
        v = theta.values(grid)
        best = 1.0
        # sample the full [r, 2r] window, including the exact factor-2 pair,
        # so the estimate does not depend on the grid density
        for f in np.geomspace(1.0, 2.0, 17)[1:]:
            w = theta.values(f * grid)
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                r1 = w / v
                r2 = v / w
            r1 = np.where(np.isnan(r1), INF, r1)
            r2 = np.where(np.isnan(r2), INF, r2)
            best = max(best, float(np.max(r1)), float(np.max(r2)))
        return best

    st = grid_stable(constant, r_grid)
    return {"holds": bool(st["stable"]), "C": st["value"], "stability": st}


def check_int_rho(rho: KernelFunction, rel_tol: float = 1e-10) -> dict:
    """Integrability of rho(t)/t at zero: int_0^1 rho(t)/t dt."""
    res: ImproperResult = integrate_dt_over_t_from_zero(rho, 1.0, rel_tol=rel_tol)
    return {"finite": res.finite, "value": res.value, "diagnostic": res.diagnostic}


def tilde_rho(rho: KernelFunction, r: float) -> float:
    """Window average int_{K1 r}^{K2 r} rho(t)/t dt."""
    if r <= 0:
        raise ValueError("need r > 0")
    return integrate_dt_over_t(rho, rho.K1 * r, rho.K2 * r)


def check_sup_rho(rho: KernelFunction, r_grid: np.ndarray | None = None,
                  samples: int = 65) -> dict:
    """Window condition: sup of rho on [r, 2r] against tilde_rho(r)."""
    if r_grid is None:
        r_grid = default_log_grid(1e-6, 1e6, 200)

    def ratio_at(r):
        ts = np.geomspace(r, 2.0 * r, samples)
        top = float(np.max(rho.values(ts)))
        denom = tilde_rho(rho, r)
        if denom <= 0.0:
            if top == 0.0:
                return 0.0  # both sides underflowed; no information at this r
            raise ArithmeticError("window integral of a positive kernel vanished")
        return top / denom

    def constant(grid):
        vals = [ratio_at(r) for r in grid]
        k = int(np.argmax(vals))
        # local refinement so the reported sup does not depend on where the
        # grid happens to land relative to a narrow peak
        lo = grid[max(k - 1, 0)]
        hi = grid[min(k + 1, len(grid) - 1)]
        phi_g = (math.sqrt(5.0) - 1.0) / 2.0
        a, b = math.log(lo), math.log(hi)
        x1, x2 = b - phi_g * (b - a), a + phi_g * (b - a)
        f1, f2 = ratio_at(math.exp(x1)), ratio_at(math.exp(x2))
        for _ in range(40):
            if f1 < f2:
                a, x1, f1 = x1, x2, f2
                x2 = a + phi_g * (b - a)
                f2 = ratio_at(math.exp(x2))
            else:
                b, x2, f2 = x2, x1, f1
                x1 = b - phi_g * (b - a)
                f1 = ratio_at(math.exp(x1))
        return max(max(vals), f1, f2)

    st = grid_stable(constant, r_grid)
    return {"holds": bool(st["stable"]), "C": st["value"], "stability": st}


def strictify(phi: WeightFunction, n: int, r_grid: np.ndarray | None = None) -> TabulatedWeight:
    """Strictly decreasing representative of an admissible weight.

    Builds the right-to-left running sup (non-increasing, >= phi) and tilts
    it by a strictly decreasing factor in (1, 2]; for a non-increasing
    input the result stays within a factor 2 of phi pointwise.
    """
    if r_grid is None:
        r_grid = default_log_grid(1e-8, 1e8, 400)
    verdict = check_gdec(phi, n, r_grid)
    if not verdict["holds"]:
        raise ValueError(f"weight {phi.label()} failed the class check (C={verdict['C']})")
    grid = np.asarray(r_grid, dtype=float)
    v = phi.values(grid)
    envelope = np.maximum.accumulate(v[::-1])[::-1]
    tilt = 1.0 + 1.0 / (1.0 + np.log1p(grid / grid[0]))
    out = envelope * tilt
    if not np.all(np.diff(out) < 0):
        raise ArithmeticError("strictified weight is not strictly decreasing")
    return TabulatedWeight(tuple(grid), tuple(out))
