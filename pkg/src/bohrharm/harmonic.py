"""Harmonic mappings ``f = h + conj(g)`` and the image-area functional."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, NamedTuple, Optional

import numpy as np

from .series import AnalyticSeries, Enclosure, SchemaError, enclose, geometric_tail


@dataclass(frozen=True, eq=False)
class HarmonicMapping:
    """Analytic part ``h`` and co-analytic part ``g`` with ``g(0) = 0``.

    ``family`` holds the closed-form parameters when the mapping was expanded
    from an extremal family; it is metadata only.
    """

    h: AnalyticSeries
    g: AnalyticSeries
    family: Optional[Any] = None

    def __post_init__(self):
        if self.g.coeffs[0] != 0:
            raise ValueError("co-analytic part must satisfy g(0) = 0")

    @property
    def a0(self) -> complex:
        return complex(self.h.coeffs[0])

    def to_json(self) -> dict:
        return {"h": self.h.to_json(), "g": self.g.to_json()}

    @classmethod
    def from_json(cls, obj, location: str = "") -> HarmonicMapping:
        if not isinstance(obj, dict):
            raise SchemaError("mapping must be an object", location)
        for key in ("h", "g"):
            if key not in obj:
                raise SchemaError(f"missing {key!r}", location)
        h = AnalyticSeries.from_json(obj["h"], f"{location}/h")
        g = AnalyticSeries.from_json(obj["g"], f"{location}/g")
        try:
            return cls(h, g)
        except ValueError as exc:
            raise SchemaError(str(exc), f"{location}/g/coeffs/0") from None


def analytic(h: AnalyticSeries) -> HarmonicMapping:
    """The mapping ``f = h`` (``g = 0``)."""
    return HarmonicMapping(h, AnalyticSeries(np.zeros(2)))


class DilatationReport(NamedTuple):
    ok: bool
    worst_margin: float
    exact: Optional[bool] = None


def dilatation_check(
    m: HarmonicMapping, grid_radius: float = 0.99, grid_size: int = 128, tol: float = 1e-12
) -> DilatationReport:
    """Sample ``|g'(z)| - |h'(z)|`` on a polar grid of truncated series.

    ``worst_margin`` is the largest sampled value; ``ok`` iff it is <= ``tol``.
    This is a sampled certificate, not a proof.  For closed-form family
    members ``exact`` carries the analytic verdict.
    """
    if not 0.0 < grid_radius < 1.0:
        raise ValueError("grid_radius must lie in (0, 1)")
    dh, dg = m.h.derivative(), m.g.derivative()
    radii = grid_radius * np.arange(1, grid_size + 1) / grid_size
    margin = np.abs(dg.on_circles(radii, grid_size)) - np.abs(dh.on_circles(radii, grid_size))
    worst = float(margin.max())
    exact = None
    if m.family is not None:
        exact = m.family.dilatation_bounded()
    return DilatationReport(worst <= tol, worst, exact)


def area_series(m: HarmonicMapping, r: float) -> Enclosure:
    """Enclosure of ``S_r / pi = sum k (|a_k|^2 - |b_k|^2) r^(2k)``."""
    if not 0.0 <= r < 1.0:
        raise ValueError(f"radius must lie in [0, 1), got {r}")
    rho = float(r) * float(r)
    pos, tail_a = _area_part(m.h, rho)
    neg, tail_b = _area_part(m.g, rho)
    return enclose(pos - neg, pos + neg, tail_hi=tail_a, tail_lo=tail_b)


def _area_part(s: AnalyticSeries, rho: float) -> tuple[float, float]:
    k = np.arange(1, s.order + 1, dtype=float)
    total = math.fsum(k * s.abs_coeffs[1:] ** 2 * rho**k)
    M = s.tail_coeff_bound()
    return total, M * M * geometric_tail(rho, s.order + 1, weighted=True)


def area_quadrature(m: HarmonicMapping, r: float, resolution: int = 512) -> float:
    """``(1/pi) * integral of |h'|^2 - |g'|^2`` over ``|z| < r``, by quadrature.

    Gauss-Legendre nodes in the radius, equispaced midpoint nodes in the angle.
    Independent of the coefficient formula used by :func:`area_series`.
    """
    if not 0.0 < r < 1.0:
        raise ValueError(f"radius must lie in (0, 1), got {r}")
    nodes, weights = np.polynomial.legendre.leggauss(resolution)
    radii = 0.5 * r * (nodes + 1.0)
    weights = 0.5 * r * weights
    dh, dg = m.h.derivative(), m.g.derivative()
    offset = math.pi / resolution
    jac = np.abs(dh.on_circles(radii, resolution, offset)) ** 2
    jac -= np.abs(dg.on_circles(radii, resolution, offset)) ** 2
    ring = jac.mean(axis=1) * 2.0 * math.pi * radii
    return float(np.dot(weights, ring) / math.pi)


def schwarz_pick_point_bound(a0_mod: float, r: float) -> float:
    """Upper bound ``(r + |a_0|)/(1 + r |a_0|)`` for ``|h(z)|`` on ``|z| = r``."""
    if not 0.0 <= a0_mod <= 1.0:
        raise ValueError("|a_0| must lie in [0, 1]")
    if not 0.0 <= r < 1.0:
        raise ValueError("r must lie in [0, 1)")
    return (r + a0_mod) / (1.0 + r * a0_mod)


def schwarz_pick_displacement_bound(a0_mod: float, r: float) -> float:
    """Upper bound ``r (1 - |a_0|^2)/(1 - r |a_0|)`` for ``|h(z) - a_0|`` on ``|z| = r``.

    ``h(z)`` lies in the pseudo-hyperbolic disk around ``a_0``; this is the
    farthest point of that disk from ``a_0``.
    """
    return r * (1.0 - a0_mod * a0_mod) / (1.0 - r * a0_mod)
