"""Bohr-type functionals of harmonic mappings, each returned as an Enclosure.

All sums over coefficients come from :mod:`bohrharm.series` with their tail
bounds.  The two functionals that depend on a point ``z`` (``N`` and ``T4``)
are evaluated as a supremum over the circle ``|z| = r``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import minimize_scalar

from .harmonic import (
    HarmonicMapping,
    analytic,
    area_series,
    schwarz_pick_displacement_bound,
    schwarz_pick_point_bound,
)
from .series import EPS, AnalyticSeries, Enclosure, geometric_tail

H1_CONSTANT = 108 / 25
H2_CONSTANT = 4 / 3
L_CONSTANT = 3 / 8
B1_CONSTANT = 16 / 9
B2_CONSTANT = 9 / 8

TAGS = ("H1", "H2", "L", "N", "T4", "B1_analytic", "B2_analytic", "ThmB1", "ThmB2", "ThmB3", "P1", "P2", "bohr")
BASELINES = ("B1", "B2", "ThmB1", "ThmB2", "ThmB3")
SUP_GRID = 1024

# radius at which each functional is claimed to be <= 1
SHARP_RADII = {
    "H1": 1 / 5,
    "H2": 1 / 3,
    "L": 1 / 5,
    "N": 1 / 5,
    "B1_analytic": 1 / 3,
    "B2_analytic": 1 / 2,
    "ThmB1": 1 / 3,
    "ThmB2": 1 / 3,
    "ThmB3": math.sqrt(11 / 27),
    "bohr": 1 / 3,
}


@dataclass(frozen=True)
class FunctionalId:
    tag: str
    c_override: Optional[float] = None

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown functional {self.tag!r}; expected one of {TAGS}")
        if self.c_override is not None and not self.c_override > 0:
            raise ValueError("c_override must be positive")


def _check_r(r: float) -> float:
    r = float(r)
    if not 0.0 <= r < 1.0:
        raise ValueError(f"radius must lie in [0, 1), got {r}")
    return r


def bohr_blocks(m: HarmonicMapping, r: float) -> Enclosure:
    """``sum_{k>=1} (|a_k| + |b_k|) r^k``."""
    return m.h.majorant_sum(r, 1) + m.g.majorant_sum(r, 1)


def square_blocks(m: HarmonicMapping, r: float, weight: str = "rk") -> Enclosure:
    """``sum_{k>=1} (|a_k|^2 + |b_k|^2) w_k``."""
    return m.h.weighted_square_sum(r, weight) + m.g.weighted_square_sum(r, weight)


def eval_H1(m: HarmonicMapping, r: float, c: float = H1_CONSTANT) -> Enclosure:
    """``|a_0| + sum (|a_k| + |b_k|) r^k + c S_r/pi``; with another ``c`` this is ``D_c``."""
    r = _check_r(r)
    return abs(m.a0) + bohr_blocks(m, r) + c * area_series(m, r)


def eval_H2(m: HarmonicMapping, r: float, c: float = H2_CONSTANT) -> Enclosure:
    r = _check_r(r)
    return abs(m.a0) ** 2 + bohr_blocks(m, r) + c * area_series(m, r)


def eval_L(m: HarmonicMapping, r: float, c: float = L_CONSTANT) -> Enclosure:
    """``|a_0| + sum (|a_k|+|b_k|) r^k + c sum (|a_k|^2+|b_k|^2) r^k``.

    ``c`` multiplies the squared sum directly (default 3/8).
    """
    r = _check_r(r)
    return abs(m.a0) + bohr_blocks(m, r) + c * square_blocks(m, r, "rk")


def eval_Lc(m: HarmonicMapping, r: float, c: float) -> Enclosure:
    """Scan form with ``2c`` on the squared sum, so ``L = L_c`` at ``c = 3/16``."""
    return eval_L(m, r, 2.0 * c)


def circle_sup_square(s: AnalyticSeries, r: float, centered: bool, n_angles: int = SUP_GRID) -> Enclosure:
    """Enclosure of ``max_{|z|=r} |F(z)|^2`` with ``F = s`` or ``F = s - s(0)``.

    Lower end: grid maximum polished by a bounded 1-D search, minus the
    truncation tail.  Upper end: the smallest of the grid maximum plus a
    Lipschitz pad, the squared majorant sum, and (for series known to be
    bounded by one) the Schwarz-Pick bound.
    """
    r = _check_r(r)
    c0 = complex(s.coeffs[0])
    start = 1 if centered else 0
    if r == 0.0:
        v = 0.0 if centered else abs(c0) ** 2
        return Enclosure.point(v)
    shift = c0 if centered else 0.0
    vals = np.abs(s.on_circle(r, n_angles) - shift)
    j = int(np.argmax(vals))
    grid_max = float(vals[j])
    step = 2.0 * math.pi / n_angles
    coeffs = s.coeffs[::-1]

    def neg_mod(theta):
        return -abs(np.polyval(coeffs, r * np.exp(1j * theta)) - shift)

    polished = minimize_scalar(
        neg_mod, bounds=(j * step - step, j * step + step), method="bounded", options={"xatol": 1e-13}
    )
    best = max(grid_max, -float(polished.fun))
    M = s.tail_coeff_bound()
    tail = M * geometric_tail(r, s.order + 1) if M else 0.0
    lo = max(best - tail, 0.0) ** 2

    k = np.arange(1, s.order + 1)
    deriv = math.fsum(k * s.abs_coeffs[1:] * r ** (k - 1))
    if M:
        deriv += M * geometric_tail(r, s.order + 1, weighted=True) / r
    if s.bounded:
        deriv = min(deriv, 1.0 / (1.0 - r * r))
    uppers = [(grid_max + tail + 0.5 * step * r * deriv) ** 2, s.majorant_sum(r, start).hi ** 2]
    if s.bounded and abs(c0) <= 1.0:
        a0 = abs(c0)
        sp = schwarz_pick_displacement_bound(a0, r) if centered else schwarz_pick_point_bound(a0, r)
        uppers.append(sp * sp)
    hi = min(uppers)
    pad = 4.0 * EPS * max(hi, lo)
    return Enclosure(lo - pad, max(hi, lo) + pad)


def eval_N(m: HarmonicMapping, r: float, mode: str = "sup_grid", n_angles: int = SUP_GRID) -> Enclosure:
    """``|a_0| + sum (|a_k|+|b_k|) r^k + |h(z) - a_0|^2`` at its worst ``|z| = r``.

    ``mode="majorant_bound"`` replaces the last term by ``(sum_{k>=1} |a_k| r^k)^2``.
    """
    r = _check_r(r)
    if mode == "sup_grid":
        sup = circle_sup_square(m.h, r, centered=True, n_angles=n_angles)
    elif mode == "majorant_bound":
        sup = m.h.majorant_sum(r, 1).square()
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return abs(m.a0) + bohr_blocks(m, r) + sup


def eval_T4(m: HarmonicMapping, r: float, n_angles: int = SUP_GRID) -> Enclosure:
    """``max_{|z|=r} |h(z)|^2 + sum (|a_k|^2 + |b_k|^2) r^(2k)``."""
    r = _check_r(r)
    return circle_sup_square(m.h, r, centered=False, n_angles=n_angles) + square_blocks(m, r, "r2k")


def eval_analytic_baselines(h: AnalyticSeries, r: float, which: str, n_angles: int = SUP_GRID) -> Enclosure:
    """Baselines for analytic ``h`` (no co-analytic part).

    ``B1 = sum_{k>=0} |a_k| r^k + (16/9) S_r/pi``;
    ``B2 = |a_0|^2 + sum_{k>=1} |a_k| r^k + (9/8) S_r/pi``;
    ``ThmB1 = |a_0| + sum (|a_k| + |a_k|^2/2) r^k``;
    ``ThmB2 = sum_{k>=0} |a_k| r^k + max |h(z) - a_0|^2``;
    ``ThmB3 = max |h(z)|^2 + sum |a_k|^2 r^(2k)``.
    """
    r = _check_r(r)
    m = analytic(h)
    a0 = abs(m.a0)
    if which == "B1":
        return h.majorant_sum(r) + B1_CONSTANT * area_series(m, r)
    if which == "B2":
        return a0 * a0 + h.majorant_sum(r, 1) + B2_CONSTANT * area_series(m, r)
    if which == "ThmB1":
        return a0 + h.majorant_sum(r, 1) + 0.5 * h.weighted_square_sum(r, "rk")
    if which == "ThmB2":
        return h.majorant_sum(r) + circle_sup_square(h, r, centered=True, n_angles=n_angles)
    if which == "ThmB3":
        return circle_sup_square(h, r, centered=False, n_angles=n_angles) + h.weighted_square_sum(r, "r2k")
    raise ValueError(f"unknown baseline {which!r}; expected one of {BASELINES}")


def eval_bohr(h: AnalyticSeries, r: float) -> Enclosure:
    """Classical Bohr sum ``sum_{k>=0} |a_k| r^k``."""
    return h.majorant_sum(_check_r(r))


def eval_P1(m: HarmonicMapping, r: float) -> Enclosure:
    """Plain harmonic Bohr sum ``|a_0| + sum (|a_k| + |b_k|) r^k``."""
    r = _check_r(r)
    return abs(m.a0) + bohr_blocks(m, r)


def eval_P2(m: HarmonicMapping, r: float, K: Optional[float] = None) -> Enclosure:
    """``P1 + K S_r/pi``; ``K`` defaults to the sharp constant from :func:`radii.compute_K`."""
    if K is None:
        from .radii import compute_K

        K = compute_K()
    return eval_P1(m, r) + K * area_series(m, r)


def bound_curves(a0_mod: float, r: float, which: str) -> float:
    """Coefficient-sum bounds in terms of ``x = |a_0|``.

    ``A = r (1-x^2)/(1 - r x)`` and ``B = r sqrt(1-x^2)/sqrt(1-r^2)`` bound
    ``sum_{k>=1} |a_k| r^k`` (``A`` when ``x >= r``, ``B`` otherwise);
    ``C = (1-x^2) r / sqrt((1 - x^2 r)(1 - r))`` bounds ``sum |b_k| r^k``
    for ``r <= 1/2``.
    """
    if not 0.0 <= a0_mod <= 1.0:
        raise ValueError("|a_0| must lie in [0, 1]")
    if not 0.0 <= r < 1.0:
        raise ValueError("r must lie in [0, 1)")
    x2 = a0_mod * a0_mod
    if which == "A":
        return r * (1.0 - x2) / (1.0 - r * a0_mod)
    if which == "B":
        return r * math.sqrt(1.0 - x2) / math.sqrt(1.0 - r * r)
    if which == "C":
        if r > 0.5:
            raise ValueError("bound C is only established for r <= 1/2")
        return (1.0 - x2) * r / math.sqrt((1.0 - x2 * r) * (1.0 - r))
    raise ValueError(f"unknown bound curve {which!r}")


def coefficient_sum_bound(a0_mod: float, r: float) -> float:
    """``A(r)`` when ``|a_0| >= r`` else ``B(r)``."""
    return bound_curves(a0_mod, r, "A" if a0_mod >= r else "B")


def area_bound(a0_mod: float, r: float) -> float:
    """``S_r/pi <= (1-|a_0|^2)^2 r^2/(1-r^2)^2``."""
    return (1.0 - a0_mod**2) ** 2 * r * r / (1.0 - r * r) ** 2


def weighted_square_bound(a0_mod: float, r: float) -> float:
    """``sum k |a_k|^2 r^k <= r (1-|a_0|^2)^2/(1 - |a_0|^2 r)^2``, sharp for ``r <= 1/2``."""
    x2 = a0_mod * a0_mod
    return r * (1.0 - x2) ** 2 / (1.0 - x2 * r) ** 2


def square_sum_bound(a0_mod: float, r: float) -> float:
    """``sum |a_k|^2 r^k <= r (1-|a_0|^2)^2/(1 - |a_0|^2 r)`` for ``r <= 1/2``."""
    x2 = a0_mod * a0_mod
    return r * (1.0 - x2) ** 2 / (1.0 - x2 * r)


def prop1_area_bound(a0_mod: float, r: float) -> float:
    """Area bound for the ``g' = eta z h'`` subclass:
    ``(1-|a_0|^2)^2 (2r^2/(1-r^2) + log(1-r^2))``."""
    r2 = r * r
    return (1.0 - a0_mod**2) ** 2 * (2.0 * r2 / (1.0 - r2) + math.log1p(-r2))


def evaluate(fid: FunctionalId | str, m: HarmonicMapping, r: float) -> Enclosure:
    """Dispatch by tag, honoring ``c_override`` where the functional has a constant."""
    if isinstance(fid, str):
        fid = FunctionalId(fid)
    c = fid.c_override
    tag = fid.tag
    if tag == "H1":
        return eval_H1(m, r, H1_CONSTANT if c is None else c)
    if tag == "H2":
        return eval_H2(m, r, H2_CONSTANT if c is None else c)
    if tag == "L":
        return eval_L(m, r, L_CONSTANT if c is None else c)
    if tag == "N":
        return eval_N(m, r)
    if tag == "T4":
        return eval_T4(m, r)
    if tag == "P1":
        return eval_P1(m, r)
    if tag == "P2":
        return eval_P2(m, r, c)
    if tag == "bohr":
        return eval_bohr(m.h, r)
    if tag == "B1_analytic":
        return eval_analytic_baselines(m.h, r, "B1")
    if tag == "B2_analytic":
        return eval_analytic_baselines(m.h, r, "B2")
    return eval_analytic_baselines(m.h, r, tag)


def functional_result(tag: str, r: float, enc: Enclosure) -> dict:
    return {"functional": tag, "r": r, "value": enc.to_json(), "verdict": enc.verdict()}
