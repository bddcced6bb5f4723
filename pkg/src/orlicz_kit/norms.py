"""Luxemburg-type ball norms, their weak variants, and global suprema.

Per ball B = B(a, r) the strong norm is

    inf{ lam > 0 :  (1/phi(r)) avg_B Phi(|f|/lam) <= 1 },

with the ball average discretized as h^n * sum(cells in B) / |B| and |B|
the continuum volume.  The weak norm replaces the average by
sup_t Phi(t) m(B, f/lam, t) / (|B| phi(r)).  Because the distribution
function of grid data is a right-continuous step and Phi is left
continuous, the inner sup is attained on the set of distinct sample
magnitudes; no t-grid is involved.

The infimum over lam is found by bracketing plus geometric bisection on
the monotone predicate "modular <= 1"; ties (modular equal to 1 on a lam
interval) land on the smaller endpoint, matching the infimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .extreal import INF, rel_close, xmul
from .fields import Ball, BallFamily, SampledField, ball_mask, distribution
from .weights_kernels import WeightFunction
from .young import ScaledPower, YoungFunction

_BRACKET_CAP = 1e30
_BISECT_RTOL = 1e-10


@dataclass(frozen=True)
class _BallData:
    """Per-ball quantities every modular evaluation reuses."""

    absvals: np.ndarray        # |f| over cells in the ball
    levels: np.ndarray         # distinct positive magnitudes, ascending
    meas_ge: np.ndarray        # h^n * #{cells: |f| >= level}
    volume: float              # continuum |B|
    weight: float              # phi(r)
    cell_volume: float

    @property
    def empty(self) -> bool:
        return self.levels.size == 0


def _ball_data(f: SampledField, phi: WeightFunction, ball: Ball) -> _BallData:
    mask = ball_mask(f, ball)
    if not np.any(mask):
        raise ValueError(f"ball {ball} resolves no cells")
    a = np.abs(f.values[mask])
    pos = np.sort(a[a > 0])
    levels, first = np.unique(pos, return_index=True)
    meas_ge = f.cell_volume * (pos.size - first)
    return _BallData(a, levels, meas_ge, ball.volume, phi(ball.radius), f.cell_volume)


def _strong_modular(data: _BallData, young: YoungFunction, lam: float) -> float:
    vals = young.values(data.absvals / lam)
    s = float(np.sum(vals))
    return s * data.cell_volume / (data.volume * data.weight)


def _weak_modular(data: _BallData, young: YoungFunction, lam: float) -> float:
    phi_at = young.values(data.levels / lam)
    best = 0.0
    for p, m in zip(phi_at, data.meas_ge):
        best = max(best, xmul(float(p), float(m)))
    return best / (data.volume * data.weight)


def _luxemburg_inf(modular, scale_hint: float) -> float:
    """inf{lam : modular(lam) <= 1} for a non-increasing modular."""
    lam = max(scale_hint, 1e-300)
    if modular(lam) <= 1.0:
        hi = lam
        lo = lam
        while modular(lo / 16.0) <= 1.0:
            lo /= 16.0
            if lo < 1e-280:
                return 0.0
        lo /= 16.0
    else:
        lo = lam
        hi = lam
        while modular(hi * 16.0) > 1.0:
            hi *= 16.0
            if hi > _BRACKET_CAP:
                return INF
        hi *= 16.0
    while hi > lo * (1.0 + _BISECT_RTOL):
        mid = math.sqrt(lo * hi)
        if modular(mid) <= 1.0:
            hi = mid
        else:
            lo = mid
    return math.sqrt(lo * hi)


def _power_fast_path(data: _BallData, young: YoungFunction, weak: bool) -> float | None:
    """Closed-form infimum for coef * t^p, bypassing the bisection."""
    if not isinstance(young, ScaledPower):
        return None
    c, p = young.coef, young.p
    denom = data.volume * data.weight
    if weak:
        top = float(np.max(data.levels ** p * data.meas_ge))
        return (c * top / denom) ** (1.0 / p)
    s = float(np.sum(data.absvals ** p)) * data.cell_volume
    return (c * s / denom) ** (1.0 / p)


def luxemburg_norm(f: SampledField, young: YoungFunction, phi: WeightFunction,
                   ball: Ball) -> float:
    """Strong ball norm inf{lam : (1/phi(r)) avg_B Phi(|f|/lam) <= 1}."""
    data = _ball_data(f, phi, ball)
    if data.empty:
        return 0.0
    fast = _power_fast_path(data, young, weak=False)
    if fast is not None:
        return fast
    hint = float(np.max(data.absvals))
    return _luxemburg_inf(lambda lam: _strong_modular(data, young, lam), hint)


def weak_norm(f: SampledField, young: YoungFunction, phi: WeightFunction,
              ball: Ball) -> float:
    """Weak ball norm: distribution-function modular, exact inner sup."""
    data = _ball_data(f, phi, ball)
    if data.empty:
        return 0.0
    fast = _power_fast_path(data, young, weak=True)
    if fast is not None:
        return fast
    hint = float(np.max(data.absvals))
    return _luxemburg_inf(lambda lam: _weak_modular(data, young, lam), hint)


def global_norm(f: SampledField, young: YoungFunction, phi: WeightFunction,
                family: BallFamily, weak: bool = False,
                return_info: bool = False):
    """Supremum of ball norms over an explicit family.

    Balls that resolve no cells are skipped and counted; the reported value
    under-estimates the sup over all balls of R^n, which is why callers
    treat constants fitted against it as family-relative.
    """
    if family.kind != "explicit":
        raise ValueError("global norms need an explicit ball family")
    best = 0.0
    skipped = 0
    per_ball = []
    fn = weak_norm if weak else luxemburg_norm
    for ball in family.balls:
        try:
            v = fn(f, young, phi, ball)
        except ValueError:
            skipped += 1
            continue
        per_ball.append((ball, v))
        if v > best:
            best = v
    if return_info:
        return best, {"skipped": skipped, "per_ball": per_ball}
    return best


def orlicz_norm(f: SampledField, young: YoungFunction, measure_scale: float = 1.0) -> float:
    """Whole-window Orlicz norm inf{lam : scale * int Phi(|f|/lam) dx <= 1}."""
    a = np.abs(f.values).ravel()
    if not np.any(a > 0):
        return 0.0
    vol = f.cell_volume

    def modular(lam):
        return measure_scale * vol * float(np.sum(young.values(a / lam)))

    if isinstance(young, ScaledPower):
        s = float(np.sum(a ** young.p)) * vol * young.coef * measure_scale
        return s ** (1.0 / young.p)
    return _luxemburg_inf(modular, float(np.max(a)))


def holder_pairing(f: SampledField, g: SampledField, young: YoungFunction,
                   phi: WeightFunction, ball: Ball) -> dict:
    """Ball form of the conjugate-pair bound: pairing <= 2 ||f|| ||g~||."""
    if f.shape != g.shape or f.h != g.h:
        raise ValueError("paired fields must share one grid")
    mask = ball_mask(f, ball)
    lhs = float(np.sum(np.abs(f.values[mask] * g.values[mask]))) * f.cell_volume
    lhs /= ball.volume * phi(ball.radius)
    conj = young.conjugate()
    nf = luxemburg_norm(f, young, phi, ball)
    ng = luxemburg_norm(g, conj, phi, ball)
    rhs = xmul(nf, ng)
    ok = lhs <= 2.0 * rhs * (1.0 + 1e-6) or (rhs == INF)
    return {"lhs": lhs, "rhs": rhs, "ok": bool(ok)}


def weak_type_identity(f: SampledField, young: YoungFunction, ball: Ball) -> dict:
    """Three equivalent distribution suprema for step data.

    s1 = sup_t Phi(t) m(B, f, t)
    s2 = sup_t t m(B, f, Phi^{-1}(t))
    s3 = sup_t t m(B, Phi(|f|), t)

    s1 and s3 are evaluated exactly on the candidate level sets; s2 probes
    the implemented inverse just below each jump of the map t -> Phi^{-1}(t).
    """
    mask = ball_mask(f, ball)
    a = np.abs(f.values[mask])
    pos = np.sort(a[a > 0])
    if pos.size == 0:
        return {"s1": 0.0, "s2": 0.0, "s3": 0.0, "ok": True}
    levels, first = np.unique(pos, return_index=True)
    meas_ge = f.cell_volume * (pos.size - first)

    phi_lv = np.asarray([young(v) for v in levels])
    s1 = max(xmul(float(p), float(m)) for p, m in zip(phi_lv, meas_ge))

    if any(p == INF and m > 0 for p, m in zip(phi_lv, meas_ge)):
        s2 = INF
    else:
        s2 = 0.0
        for p in phi_lv:
            if p <= 0.0:
                continue
            for t in (p * (1.0 - 1e-12), p):
                thr = young.inverse(t)
                m = distribution(f, thr, ball)
                s2 = max(s2, t * m)

    g = young.values(a)
    if np.any(np.isinf(g)):
        s3 = INF
    else:
        glv, gfirst = np.unique(np.sort(g[g > 0]), return_index=True)
        gpos = np.sort(g[g > 0])
        gm = f.cell_volume * (gpos.size - gfirst)
        s3 = max((xmul(float(w), float(m)) for w, m in zip(glv, gm)), default=0.0)

    ok = (rel_close(s1, s2, 1e-9) and rel_close(s2, s3, 1e-9)
          and rel_close(s1, s3, 1e-9))
    return {"s1": s1, "s2": s2, "s3": s3, "ok": bool(ok)}
