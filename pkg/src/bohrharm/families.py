"""Closed-form extremal families and the seeded test corpus.

Two families are used throughout:

* ``mobius``: ``h(z) = (a + z)/(1 + conj(a) z)`` and ``g = lambda (h - a)``,
  so ``g' = lambda h'``.
* ``prop1``: the same ``h`` with ``g' = eta z h'`` (``eta = exp(i theta)``),
  which forces ``b_1 = 0`` and ``b_k = eta (k-1)/k a_{k-1}``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .harmonic import HarmonicMapping
from .series import AnalyticSeries, SchemaError, parse_complex, schur_synthesize

VARIANTS = ("mobius", "prop1")
DEFAULT_ORDER = 256
CORPUS_MAX_MODULUS = 0.95


@dataclass(frozen=True)
class ExtremalFamilyParams:
    variant: str
    a: complex
    lam: complex = 1.0
    theta: float = 0.0

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown family {self.variant!r}")
        if not abs(self.a) < 1.0:
            raise ValueError("family parameter a must satisfy |a| < 1")
        if self.variant == "mobius" and abs(self.lam) > 1.0 + 1e-15:
            raise ValueError("mobius family needs |lambda| <= 1")
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "lam", complex(self.lam))

    @property
    def eta(self) -> complex:
        return cmath.exp(1j * self.theta)

    def dilatation_bounded(self) -> bool:
        """Exact verdict on ``|g'| <= |h'|`` throughout the disk."""
        if self.variant == "mobius":
            return abs(self.lam) <= 1.0
        return True

    def expand(self, order: int = DEFAULT_ORDER) -> HarmonicMapping:
        if self.variant == "mobius":
            return expand_mobius(self, order)
        return expand_prop1(self, order)


def mobius_coeffs(a: complex, order: int) -> np.ndarray:
    """Taylor coefficients of ``(a + z)/(1 + conj(a) z)``: ``a`` then ``(1-|a|^2)(-conj a)^(k-1)``."""
    a = complex(a)
    c = np.empty(order + 1, dtype=complex)
    c[0] = a
    c[1:] = (1.0 - abs(a) ** 2) * (-a.conjugate()) ** np.arange(order)
    return c


def expand_mobius(p: ExtremalFamilyParams, order: int = DEFAULT_ORDER) -> HarmonicMapping:
    if p.variant != "mobius":
        raise ValueError("expand_mobius needs a mobius parameter set")
    c = mobius_coeffs(p.a, order)
    M = (1.0 - abs(p.a) ** 2) * abs(p.a) ** order
    h = AnalyticSeries(c, tail=M, bounded=True)
    b = p.lam * c
    b[0] = 0.0
    g = AnalyticSeries(b, tail=abs(p.lam) * M)
    return HarmonicMapping(h, g, family=p)


def expand_prop1(p: ExtremalFamilyParams, order: int = DEFAULT_ORDER) -> HarmonicMapping:
    if p.variant != "prop1":
        raise ValueError("expand_prop1 needs a prop1 parameter set")
    c = mobius_coeffs(p.a, order)
    M = (1.0 - abs(p.a) ** 2) * abs(p.a) ** order
    h = AnalyticSeries(c, tail=M, bounded=True)
    g = AnalyticSeries(prop1_cocoeffs(c, p.eta), tail=M / max(abs(p.a), 1e-300) if p.a else 0.0)
    return HarmonicMapping(h, g, family=p)


def prop1_cocoeffs(h_coeffs: np.ndarray, eta: complex) -> np.ndarray:
    """``b_k = eta (k-1)/k a_{k-1}`` (so ``b_0 = b_1 = 0``), same length as ``h_coeffs``."""
    N = h_coeffs.size - 1
    b = np.zeros(N + 1, dtype=complex)
    k = np.arange(2, N + 1)
    b[2:] = eta * (k - 1) / k * h_coeffs[1:N]
    return b


def mobius(a: complex, lam: complex = 1.0, order: int = DEFAULT_ORDER) -> HarmonicMapping:
    return expand_mobius(ExtremalFamilyParams("mobius", a, lam=lam), order)


def prop1(a: complex, theta: float = 0.0, order: int = DEFAULT_ORDER) -> HarmonicMapping:
    return expand_prop1(ExtremalFamilyParams("prop1", a, theta=theta), order)


# -- seeded corpus ----------------------------------------------------------

def cauchy_cotail(order: int) -> float:
    """Bound on ``|b_k|``, ``k > order``, for any ``g`` with ``|g'| <= |h'|`` and ``|h| <= 1``.

    Schwarz-Pick gives ``|g'(z)| <= 1/(1 - |z|^2)``; Cauchy's estimate on the
    circle ``|z|^2 = (k-1)/(k+1)`` then gives ``|b_k| <= e (k+1)/(2k)``.
    """
    return math.e * (order + 2) / (2.0 * (order + 1))


def from_schur(h_params, w_params, order: int = DEFAULT_ORDER) -> HarmonicMapping:
    """Mapping with ``h`` and dilatation ``w`` given by Schur parameters; ``g = int w h'``."""
    h = schur_synthesize(h_params, order)
    w = schur_synthesize(w_params, order)
    dh = h.derivative()
    gp = np.convolve(w.coeffs[:order], dh.coeffs[:order])[:order]
    b = np.zeros(order + 1, dtype=complex)
    b[1:] = gp / np.arange(1, order + 1)
    return HarmonicMapping(h, AnalyticSeries(b, tail=cauchy_cotail(order)))


def from_schur_prop1(h_params, theta: float, order: int = DEFAULT_ORDER) -> HarmonicMapping:
    """Mapping in the ``g' = eta z h'`` subclass built on a Schur-synthesized ``h``."""
    h = schur_synthesize(h_params, order)
    b = prop1_cocoeffs(h.coeffs, cmath.exp(1j * theta))
    return HarmonicMapping(h, AnalyticSeries(b, tail=h.tail_coeff_bound()))


def _draw_params(rng: np.random.Generator) -> np.ndarray:
    n = int(rng.integers(4, 9))
    modulus = CORPUS_MAX_MODULUS * np.sqrt(rng.random(n))
    phase = rng.uniform(0.0, 2.0 * math.pi, n)
    return modulus * np.exp(1j * phase)


def corpus_generate(
    seed: int, count: int, order: int = DEFAULT_ORDER, subclass: Optional[str] = None
) -> list[HarmonicMapping]:
    """Deterministic corpus of admissible mappings.

    Each member draws 4-8 Schur parameters for ``h`` and for the dilatation
    (moduli <= 0.95, area-uniform in the disk).  With ``subclass="prop1"``
    the same ``h`` is paired with ``g' = eta z h'`` for a drawn phase instead.
    The random stream does not depend on ``order``, so a larger order
    reproduces the same functions with longer truncations.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if subclass not in (None, "prop1"):
        raise ValueError(f"unknown subclass {subclass!r}")
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        hp = _draw_params(rng)
        wp = _draw_params(rng)
        theta = float(rng.uniform(0.0, 2.0 * math.pi))
        if subclass == "prop1":
            out.append(from_schur_prop1(hp, theta, order))
        else:
            out.append(from_schur(hp, wp, order))
    return out


# -- closed forms -----------------------------------------------------------

def mobius_majorant(a: float, r: float) -> float:
    """``sum_{k>=1} |a_k| r^k = (1-|a|^2) r/(1-|a| r)`` for the Mobius ``h``."""
    return (1.0 - a * a) * r / (1.0 - a * r)


def mobius_area(a: float, lam: float, r: float) -> float:
    """``S_r/pi = (1-|lambda|^2)(1-|a|^2)^2 r^2/(1-|a|^2 r^2)^2``."""
    return (1.0 - lam * lam) * (1.0 - a * a) ** 2 * r * r / (1.0 - a * a * r * r) ** 2


def mobius_square_sum(a: float, r: float) -> float:
    """``sum_{k>=1} |a_k|^2 r^k = (1-|a|^2)^2 r/(1-|a|^2 r)``."""
    return (1.0 - a * a) ** 2 * r / (1.0 - a * a * r)


def prop1_cosum(a: float, r: float) -> float:
    """``sum_{k>=2} |b_k| r^k`` for the prop1 family, ``|a| = a``.

    Equals ``(1-a^2)(r^2/(1-a r) + r/a + log(1-a r)/a^2)``; below ``a = 1e-3``
    the removable singularity is expanded as a series in ``a``.
    """
    if a < 1e-3:
        s, term, j = 0.0, r * r, 0
        while True:
            inc = term / (j + 2)
            s += inc
            if inc < 1e-18 * s:
                break
            term *= a * r
            j += 1
        return (1.0 - a * a) * (r * r / (1.0 - a * r) - s)
    return (1.0 - a * a) * (r * r / (1.0 - a * r) + r / a + math.log1p(-a * r) / (a * a))


def prop1_bohr_sum(a: float, r: float) -> float:
    """``|a_0| + sum (|a_k| + |b_k|) r^k`` for the prop1 family."""
    return a + mobius_majorant(a, r) + prop1_cosum(a, r)


# -- JSON -------------------------------------------------------------------

def mapping_from_json(obj, order: int = DEFAULT_ORDER, location: str = "") -> HarmonicMapping:
    """Accepts ``{"h": ..., "g": ...}`` or a family form
    ``{"family": "mobius"|"prop1", "a": [re, im], "lambda": [re, im]}``
    (``prop1`` also takes ``"theta"``; a unimodular ``lambda`` gives its phase)."""
    if not isinstance(obj, dict):
        raise SchemaError("mapping must be an object", location)
    if "family" not in obj:
        return HarmonicMapping.from_json(obj, location)
    variant = obj["family"]
    if variant not in VARIANTS:
        raise SchemaError(f"family must be one of {VARIANTS}", f"{location}/family")
    if "a" not in obj:
        raise SchemaError("missing 'a'", location)
    a = parse_complex(obj["a"], f"{location}/a")
    lam = parse_complex(obj.get("lambda", 1.0), f"{location}/lambda")
    theta = obj.get("theta")
    if theta is None:
        theta = cmath.phase(lam)
    elif not isinstance(theta, (int, float)) or isinstance(theta, bool):
        raise SchemaError("theta must be a number", f"{location}/theta")
    try:
        p = ExtremalFamilyParams(variant, a, lam=lam, theta=float(theta))
    except ValueError as exc:
        raise SchemaError(str(exc), location) from None
    return p.expand(order)
