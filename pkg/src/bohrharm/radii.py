"""Sharp radii, the constant K, and empirical Bohr radii over extremal families."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .families import DEFAULT_ORDER, ExtremalFamilyParams
from .functionals import FunctionalId, evaluate

R0_THM4_CLOSED = math.sqrt(5.0 / (9.0 + 4.0 * math.sqrt(5.0)))


@dataclass(frozen=True)
class RadiusResult:
    value: float
    residual: float
    bracket: tuple[float, float]
    iterations: int

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "residual": self.residual,
            "bracket": list(self.bracket),
            "iterations": self.iterations,
        }


def bisect(f: Callable[[float], float], lo: float, hi: float, xtol: float = 1e-14, maxiter: int = 200) -> RadiusResult:
    """Plain bisection on a sign-changing bracket."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return RadiusResult(lo, 0.0, (lo, lo), 0)
    if fhi == 0.0:
        return RadiusResult(hi, 0.0, (hi, hi), 0)
    if (flo > 0) == (fhi > 0):
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    it = 0
    while hi - lo > xtol and it < maxiter:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        fm = f(mid)
        it += 1
        if fm == 0.0:
            lo = hi = mid
            break
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    return RadiusResult(x, f(x), (lo, hi), it)


def thm4_equation(r: float) -> float:
    """``(10 + 6r^2)^(3/2) + 144 r^2 - 80``."""
    y2 = 10.0 + 6.0 * r * r
    return y2**1.5 + 144.0 * r * r - 80.0


def thm4_minimum_value(r: float) -> float:
    """``-(1/54) [(10 + 6r^2)^(3/2) + 24 (10 + 6r^2) - 320]``, the value at the critical point."""
    y2 = 10.0 + 6.0 * r * r
    return -(y2**1.5 + 24.0 * y2 - 320.0) / 54.0


def solve_radius_thm4() -> RadiusResult:
    return bisect(thm4_equation, 0.0, 1.0 / math.sqrt(2.0))


def prop1_equation(x: float) -> float:
    """``5x + 2(1-x) log(1-x) - 1``."""
    return 5.0 * x + 2.0 * (1.0 - x) * math.log1p(-x) - 1.0


@lru_cache(maxsize=None)
def solve_radius_prop1() -> RadiusResult:
    return bisect(prop1_equation, 0.0, 0.5)


def k_bracket(r: float) -> float:
    """``2r^2/(1-r^2) + log(1-r^2)``."""
    r2 = r * r
    return 2.0 * r2 / (1.0 - r2) + math.log1p(-r2)


@lru_cache(maxsize=None)
def compute_K() -> float:
    """``K = 1/(8 [2 r0^2/(1-r0^2) + log(1 - r0^2)])`` at the subclass radius ``r0``."""
    return 1.0 / (8.0 * k_bracket(solve_radius_prop1().value))


# -- empirical radii ---------------------------------------------------------

ANALYTIC_TAGS = ("bohr", "B1_analytic", "B2_analytic", "ThmB1", "ThmB2", "ThmB3")
PROP1_TAGS = ("P1", "P2")


def default_a_values(steps: int = 20) -> list[float]:
    return [1.0 - 2.0**-j for j in range(1, steps + 1)]


def lambda_grid(phases: int = 16, moduli: Sequence[float] = (0.9, 0.99, 0.999, 1.0)) -> list[complex]:
    out = []
    for mod in moduli:
        for p in range(phases):
            out.append(mod * np.exp(2j * math.pi * p / phases))
    return out


def parse_lambda_grid(text: str) -> tuple[int, list[float]]:
    """``"phases=16;moduli=0.9,0.99,0.999,1"`` -> ``(16, [0.9, 0.99, 0.999, 1.0])``."""
    phases, moduli = 16, [0.9, 0.99, 0.999, 1.0]
    for part in filter(None, (p.strip() for p in text.split(";"))):
        key, _, val = part.partition("=")
        key = key.strip()
        if key == "phases":
            phases = int(val)
            if phases < 1:
                raise ValueError("phases must be >= 1")
        elif key == "moduli":
            moduli = [float(v) for v in val.split(",") if v.strip()]
            if not moduli or any(not 0.0 <= v <= 1.0 for v in moduli):
                raise ValueError("moduli must be a nonempty list in [0, 1]")
        else:
            raise ValueError(f"unknown lambda-grid key {key!r}")
    return phases, moduli


def family_for(tag: str) -> str:
    return "prop1" if tag in PROP1_TAGS else "mobius"


def scan_members(
    tag: str, a_values: Iterable[float], lambdas: Iterable[complex]
) -> list[ExtremalFamilyParams]:
    """Family parameters scanned for ``tag``.

    Prop1 members take the phase of each lambda as ``theta``; analytic
    baselines ignore ``g``, so a single lambda suffices for them.
    """
    lambdas = list(lambdas)
    if tag in ANALYTIC_TAGS:
        lambdas = lambdas[:1] or [1.0]
    out = []
    for a in a_values:
        for lam in lambdas:
            if family_for(tag) == "prop1":
                out.append(ExtremalFamilyParams("prop1", a, theta=float(np.angle(lam))))
            else:
                out.append(ExtremalFamilyParams("mobius", a, lam=lam))
    return out


@dataclass
class EmpiricalRadius:
    value: float
    inconclusive: bool
    bracket: tuple[float, float]
    iterations: int
    members: int
    scan: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "inconclusive": self.inconclusive,
            "bracket": list(self.bracket),
            "iterations": self.iterations,
            "members": self.members,
            "scan": self.scan,
        }


def empirical_radius(
    functional: FunctionalId | str,
    a_values: Optional[Sequence[float]] = None,
    lambdas: Optional[Sequence[complex]] = None,
    r_tolerance: float = 1e-6,
    order: int = DEFAULT_ORDER,
    r_max: float = 0.95,
) -> EmpiricalRadius:
    """Largest ``r`` with ``sup over the scanned family of hi <= 1``, by bisection in ``r``.

    Every functional here is nondecreasing in ``r`` for each member, so the
    predicate is monotone.  A step where some member straddles 1 while none
    exceeds it is treated as a failure and flagged ``inconclusive``.
    """
    if isinstance(functional, str):
        functional = FunctionalId(functional)
    a_values = default_a_values() if a_values is None else list(a_values)
    lambdas = lambda_grid() if lambdas is None else list(lambdas)
    params = scan_members(functional.tag, a_values, lambdas)
    if not params:
        raise ValueError("empty family scan")
    maps = [p.expand(order) for p in params]
    straddled = False

    def holds(r: float) -> bool:
        nonlocal straddled
        worst = "<=1"
        for m in maps:
            v = evaluate(functional, m, r).verdict()
            if v == ">1":
                return False
            if v == "inconclusive":
                worst = v
        if worst == "inconclusive":
            straddled = True
            return False
        return True

    lo, hi = 0.0, r_max
    if not holds(lo):
        raise ValueError("functional exceeds 1 already at r = 0 on this scan")
    if holds(hi):
        return EmpiricalRadius(hi, straddled, (hi, hi), 0, len(maps), _scan_meta(a_values, lambdas, order))
    it = 0
    while hi - lo > r_tolerance:
        mid = 0.5 * (lo + hi)
        if holds(mid):
            lo = mid
        else:
            hi = mid
        it += 1
    return EmpiricalRadius(lo, straddled, (lo, hi), it, len(maps), _scan_meta(a_values, lambdas, order))


def _scan_meta(a_values, lambdas, order) -> dict:
    return {
        "a": [float(a) for a in a_values],
        "lambda": [[float(np.real(z)), float(np.imag(z))] for z in lambdas],
        "order": order,
    }
