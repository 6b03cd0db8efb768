"""Truncated Taylor series on the unit disk with certified tail bounds.

Every infinite sum is returned as an :class:`Enclosure`: the partial sum over
the stored coefficients plus a bound on the part that was cut off.  The bound
comes from the series' tail model:

``"none"``
    the stored polynomial is the whole function, tail 0;
``"bounded_by_one"``
    ``|c_k| <= 1 - |c_0|**2`` for ``k > N`` (the function has modulus <= 1);
a float ``M``
    ``|c_k| <= M`` for ``k > N``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

import numpy as np
from scipy import signal

EPS = np.finfo(float).eps

Tail = Union[str, float]
TAIL_KINDS = ("none", "bounded_by_one")
WEIGHTS = ("rk", "k_rk", "r2k", "k_r2k", "area_prop1")


class SchemaError(ValueError):
    """Malformed JSON input; ``location`` is a JSON-pointer-ish path."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location or '<root>'}: {message}")
        self.location = location


@dataclass(frozen=True)
class Enclosure:
    """Closed interval ``[lo, hi]`` certified to contain a real value."""

    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValueError(f"non-finite enclosure [{lo}, {hi}]")
        if lo > hi:
            raise ValueError(f"empty enclosure [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, x: float) -> Enclosure:
        return cls(x, x)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __add__(self, other) -> Enclosure:
        if isinstance(other, Enclosure):
            return Enclosure(self.lo + other.lo, self.hi + other.hi)
        return Enclosure(self.lo + other, self.hi + other)

    __radd__ = __add__

    def __mul__(self, c) -> Enclosure:
        c = float(c)
        if c >= 0:
            return Enclosure(c * self.lo, c * self.hi)
        return Enclosure(c * self.hi, c * self.lo)

    __rmul__ = __mul__

    def square(self) -> Enclosure:
        if self.lo >= 0:
            return Enclosure(self.lo * self.lo, self.hi * self.hi)
        if self.hi <= 0:
            return Enclosure(self.hi * self.hi, self.lo * self.lo)
        return Enclosure(0.0, max(self.lo * self.lo, self.hi * self.hi))

    def verdict(self, bound: float = 1.0) -> str:
        if self.hi <= bound:
            return "<=1" if bound == 1.0 else f"<={bound:g}"
        if self.lo > bound:
            return ">1" if bound == 1.0 else f">{bound:g}"
        return "inconclusive"

    def to_json(self) -> dict:
        return {"lo": self.lo, "hi": self.hi}


def enclose(total: float, abs_total: float, tail_hi: float = 0.0, tail_lo: float = 0.0) -> Enclosure:
    """Enclosure of ``total`` widened by the tail and a floating-point pad.

    ``abs_total`` is the sum of absolute values of the summed terms; each
    term carries a few ulps of error from the powers and products.
    """
    pad = 8.0 * EPS * abs_total
    return Enclosure(total - pad - tail_lo, total + pad + tail_hi)


def geometric_tail(rho: float, start: int, weighted: bool = False) -> float:
    """``sum_{k>=start} rho**k`` or, with ``weighted``, ``sum_{k>=start} k*rho**k``."""
    if rho == 0.0:
        return 0.0
    head = rho**start
    if not weighted:
        return head / (1.0 - rho)
    return head * (start - (start - 1) * rho) / (1.0 - rho) ** 2


class Evaluated(NamedTuple):
    value: complex
    tail: float


@dataclass(frozen=True, eq=False)
class AnalyticSeries:
    """Coefficients ``c_0..c_N`` of a function analytic in the unit disk.

    ``bounded`` records that the represented function is known to have
    modulus <= 1 on the disk (it is implied by ``tail="bounded_by_one"``);
    it unlocks Schwarz-Pick bounds in the functionals.
    """

    coeffs: np.ndarray
    tail: Tail = "none"
    bounded: bool = False

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size < 2:
            raise ValueError("order must be >= 1 (need at least two coefficients)")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        tail = self.tail
        if isinstance(tail, str):
            if tail not in TAIL_KINDS:
                raise ValueError(f"unknown tail kind {tail!r}")
        else:
            tail = float(tail)
            if not (tail >= 0 and math.isfinite(tail)):
                raise ValueError("custom tail bound must be a nonnegative finite number")
            object.__setattr__(self, "tail", tail)
        if tail == "bounded_by_one":
            if abs(c[0]) > 1.0 + 1e-15:
                raise ValueError("bounded_by_one requires |c_0| <= 1")
            object.__setattr__(self, "bounded", True)

    @classmethod
    def constant(cls, value: complex, order: int = 1, tail: Tail = "none", bounded: bool = False):
        c = np.zeros(order + 1, dtype=complex)
        c[0] = value
        return cls(c, tail=tail, bounded=bounded)

    @classmethod
    def identity(cls, order: int = 1) -> AnalyticSeries:
        c = np.zeros(order + 1, dtype=complex)
        c[1] = 1.0
        return cls(c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @property
    def abs_coeffs(self) -> np.ndarray:
        return np.abs(self.coeffs)

    def tail_coeff_bound(self) -> float:
        """``M`` with ``|c_k| <= M`` for every ``k > N``."""
        if self.tail == "none":
            return 0.0
        if self.tail == "bounded_by_one":
            return max(0.0, 1.0 - abs(self.coeffs[0]) ** 2)
        return float(self.tail)

    def __eq__(self, other):
        if not isinstance(other, AnalyticSeries):
            return NotImplemented
        return (
            np.array_equal(self.coeffs, other.coeffs)
            and self.tail == other.tail
            and self.bounded == other.bounded
        )

    __hash__ = None

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, z) -> Evaluated:
        """Partial sum at ``z`` (scalar or array) and the bound on the rest."""
        z = np.asarray(z, dtype=complex)
        rho = np.abs(z)
        if np.any(rho >= 1.0):
            raise ValueError("evaluation point must satisfy |z| < 1")
        value = np.polyval(self.coeffs[::-1], z)
        M = self.tail_coeff_bound()
        tail = M * rho ** (self.order + 1) / (1.0 - rho) if M else np.zeros_like(rho)
        if value.ndim == 0:
            return Evaluated(complex(value), float(tail))
        return Evaluated(value, tail)

    __call__ = evaluate

    def on_circle(self, rho: float, m: int, offset: float = 0.0) -> np.ndarray:
        """Partial-sum values at ``rho*exp(i*(2*pi*j/m + offset))``, ``j < m``.

        Uses an inverse FFT; coefficients are folded modulo ``m`` so any
        ``m`` is exact (no aliasing error).
        """
        return self.on_circles(np.array([rho]), m, offset)[0]

    def on_circles(self, radii, m: int, offset: float = 0.0) -> np.ndarray:
        """``on_circle`` for several radii at once; row ``i`` is circle ``radii[i]``."""
        radii = np.asarray(radii, dtype=float)
        if np.any((radii < 0.0) | (radii >= 1.0)):
            raise ValueError("circle radius must lie in [0, 1)")
        k = np.arange(self.order + 1)
        c = self.coeffs * np.exp(1j * k * offset) if offset else self.coeffs
        d = c[None, :] * _power_table(radii, self.order + 1)
        pad = -d.shape[1] % m
        if pad:
            d = np.concatenate((d, np.zeros((d.shape[0], pad), dtype=complex)), axis=1)
        folded = d.reshape(d.shape[0], -1, m).sum(axis=1)
        return m * np.fft.ifft(folded, axis=1)

    # -- arithmetic ---------------------------------------------------------

    def derivative(self) -> AnalyticSeries:
        """Termwise derivative, order ``N-1``.

        The tail model is dropped (``"none"``): ``k*|c_k|`` admits no uniform
        bound from boundedness alone, so derivatives are only summed where
        truncation is irrelevant.  An order-1 input is padded back to order 1.
        """
        k = np.arange(1, self.order + 1)
        d = self.coeffs[1:] * k
        if d.size < 2:
            d = np.append(d, 0.0)
        return AnalyticSeries(d)

    def integrate(self, constant: complex = 0.0) -> AnalyticSeries:
        """Termwise antiderivative vanishing at 0 (plus ``constant``), order ``N+1``."""
        c = np.empty(self.order + 2, dtype=complex)
        c[0] = constant
        c[1:] = self.coeffs / np.arange(1, self.order + 2)
        return AnalyticSeries(c)

    def truncate(self, order: int) -> AnalyticSeries:
        if order > self.order:
            c = np.zeros(order + 1, dtype=complex)
            c[: self.order + 1] = self.coeffs
        else:
            c = self.coeffs[: order + 1]
        return AnalyticSeries(c, tail=self.tail, bounded=self.bounded)

    def mul(self, other: AnalyticSeries) -> AnalyticSeries:
        """Cauchy product truncated to ``min`` of the two orders (tail dropped)."""
        n = min(self.order, other.order)
        c = np.convolve(self.coeffs[: n + 1], other.coeffs[: n + 1])[: n + 1]
        return AnalyticSeries(c)

    # -- majorant sums ------------------------------------------------------

    def majorant_sum(self, r: float, from_index: int = 0) -> Enclosure:
        """Enclosure of ``sum_{k >= from_index} |c_k| r**k``."""
        _check_radius(r)
        N = self.order
        if from_index > N:
            terms = np.zeros(0)
        else:
            k = np.arange(from_index, N + 1)
            terms = self.abs_coeffs[from_index:] * float(r) ** k
        total = math.fsum(terms)
        M = self.tail_coeff_bound()
        tail = M * geometric_tail(r, max(N + 1, from_index)) if M else 0.0
        return enclose(total, total, tail_hi=tail)

    def weighted_square_sum(self, r: float, weight: str = "rk") -> Enclosure:
        """Enclosure of ``sum_{k>=1} w_k |c_k|**2`` for the named weight.

        ``rk``: ``r**k``; ``k_rk``: ``k r**k``; ``r2k``: ``r**(2k)``;
        ``k_r2k``: ``k r**(2k)``; ``area_prop1``: ``k (1 - k r**2/(k+1)) r**(2k)``
        (the image-area weight for mappings with ``g' = eta z h'``).
        """
        _check_radius(r)
        if weight not in WEIGHTS:
            raise ValueError(f"unknown weight {weight!r}; expected one of {WEIGHTS}")
        r = float(r)
        N = self.order
        k = np.arange(1, N + 1, dtype=float)
        rho = r if weight in ("rk", "k_rk") else r * r
        w = rho**k
        if weight in ("k_rk", "k_r2k"):
            w = k * w
        elif weight == "area_prop1":
            w = k * (1.0 - k * r * r / (k + 1.0)) * w
        terms = self.abs_coeffs[1:] ** 2 * w
        total = math.fsum(terms)
        M = self.tail_coeff_bound()
        tail = 0.0
        if M:
            # area_prop1 weight is dominated by k*rho**k
            tail = M * M * geometric_tail(rho, N + 1, weighted=weight not in ("rk", "r2k"))
        return enclose(total, total, tail_hi=tail)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        out = {
            "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs],
            "tail": self.tail if isinstance(self.tail, str) else {"custom": self.tail},
        }
        if self.bounded and self.tail != "bounded_by_one":
            out["bounded"] = True
        return out

    @classmethod
    def from_json(cls, obj, location: str = "") -> AnalyticSeries:
        if not isinstance(obj, dict):
            raise SchemaError("series must be an object", location)
        if "coeffs" not in obj:
            raise SchemaError("missing 'coeffs'", location)
        raw = obj["coeffs"]
        if not isinstance(raw, list) or len(raw) < 2:
            raise SchemaError("'coeffs' must be a list of at least two [re, im] pairs", f"{location}/coeffs")
        coeffs = []
        for i, pair in enumerate(raw):
            coeffs.append(parse_complex(pair, f"{location}/coeffs/{i}"))
        tail = obj.get("tail", "none")
        if isinstance(tail, dict):
            if set(tail) != {"custom"} or not _is_number(tail["custom"]) or tail["custom"] < 0:
                raise SchemaError("custom tail must be {'custom': M} with M >= 0", f"{location}/tail")
            tail = float(tail["custom"])
        elif tail not in TAIL_KINDS:
            raise SchemaError(f"tail must be one of {TAIL_KINDS} or {{'custom': M}}", f"{location}/tail")
        bounded = obj.get("bounded", False)
        if not isinstance(bounded, bool):
            raise SchemaError("'bounded' must be a boolean", f"{location}/bounded")
        try:
            return cls(np.array(coeffs), tail=tail, bounded=bounded)
        except ValueError as exc:
            raise SchemaError(str(exc), location) from None


def _power_table(radii: np.ndarray, n: int) -> np.ndarray:
    """``radii[i] ** k`` for ``k < n`` as ``r^(qB) * r^j``; much cheaper than a full power table."""
    B = max(1, math.isqrt(n - 1) + 1)
    Q = -(-n // B)
    low = radii[:, None] ** np.arange(B)[None, :]
    high = radii[:, None] ** (B * np.arange(Q))[None, :]
    return (high[:, :, None] * low[:, None, :]).reshape(radii.size, -1)[:, :n]


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def parse_complex(pair, location: str = "") -> complex:
    if _is_number(pair):
        return complex(pair)
    if isinstance(pair, list) and len(pair) == 2 and all(_is_number(v) for v in pair):
        return complex(pair[0], pair[1])
    raise SchemaError("expected a number or an [re, im] pair", location)


def _check_radius(r: float) -> None:
    if not 0.0 <= r < 1.0:
        raise ValueError(f"radius must lie in [0, 1), got {r}")


def schur_synthesize(params: Sequence[complex], order: int = 256) -> AnalyticSeries:
    """Degree-``order`` truncation of the function with Schur parameters ``params``.

    The function is built from the inside out by
    ``f_j = (g_j + z f_{j+1}) / (1 + conj(g_j) z f_{j+1})`` with ``f_n = g_n``.
    It is carried as a ratio of polynomials ``P/Q`` with ``Q(0) = 1``, and its
    Taylor coefficients come from the linear recurrence ``Q * f = P``.  A
    unimodular parameter ends the recursion (``f_j`` is then constant).
    """
    gammas = [complex(g) for g in params]
    if not gammas:
        raise ValueError("need at least one Schur parameter")
    for j, g in enumerate(gammas):
        if abs(g) > 1.0 + 1e-15:
            raise ValueError(f"Schur parameter {j} has modulus {abs(g)} > 1")
    for j, g in enumerate(gammas):
        if abs(g) >= 1.0:
            gammas = gammas[: j + 1]
            break
    if order < 1:
        raise ValueError("order must be >= 1")
    P = np.array([gammas[-1]], dtype=complex)
    Q = np.array([1.0], dtype=complex)
    for g in reversed(gammas[:-1]):
        zP = np.concatenate(([0.0], P))
        Qp = np.concatenate((Q, np.zeros(zP.size - Q.size)))
        P, Q = g * Qp + zP, Qp + np.conj(g) * zP
    impulse = np.zeros(order + 1, dtype=complex)
    impulse[0] = 1.0
    coeffs = signal.lfilter(P, Q, impulse)
    return AnalyticSeries(coeffs, tail="bounded_by_one")
