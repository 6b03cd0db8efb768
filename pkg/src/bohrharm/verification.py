"""Claim suites over the seeded corpus and the extremal families.

Each suite returns a list of JSON-ready rows; a row always has ``tag``,
``claim`` and ``ok``.  Inequality rows also carry the enclosure of the
left-hand side and the bound; ``status`` is ``pass``, ``fail`` or
``inconclusive`` (the enclosure straddles the bound).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Iterable, Optional

import numpy as np

from . import functionals as fn
from .families import ExtremalFamilyParams, corpus_generate
from .harmonic import HarmonicMapping, area_series, dilatation_check, schwarz_pick_point_bound
from .proof_checks import run_proof_suite
from .radii import compute_K, lambda_grid
from .series import Enclosure, geometric_tail

SUITES = ("lemmas", "theorems", "proofs", "all")
FAMILY_A = (0.0, 0.3, 0.6, 0.9, 0.99)
CORPUS_SIZE = 64

# radii at which the theorems are checked
T4_RADIUS = 0.527864
PROP1_RADIUS = 0.2998


@dataclass
class RunConfig:
    truncation_order: int = 256
    tolerance: float = 1e-12
    seed: int = 0
    output_format: str = "json"
    output_path: Optional[str] = None

    def __post_init__(self):
        if self.truncation_order < 16:
            raise ValueError("truncation_order must be >= 16")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.output_format not in ("json", "csv"):
            raise ValueError("output_format must be 'json' or 'csv'")

    def to_json(self) -> dict:
        return asdict(self)


def order_for_radius(r: float, base: int, coeff_bound: float = 2.0, target: float = 1e-14) -> int:
    """Smallest order >= ``base`` whose squared geometric tail at ``r`` is below ``target``."""
    n = base
    while coeff_bound**2 * geometric_tail(r, n + 1) > target:
        n *= 2
    return n


def _subjects(config: RunConfig, order: Optional[int] = None, lambdas=None) -> list[tuple[str, HarmonicMapping]]:
    order = config.truncation_order if order is None else order
    out = [(f"corpus[{i}]", m) for i, m in enumerate(corpus_generate(config.seed, CORPUS_SIZE, order))]
    for a in FAMILY_A:
        for lam in lambda_grid() if lambdas is None else lambdas:
            p = ExtremalFamilyParams("mobius", a, lam=lam)
            out.append((_family_name(p), p.expand(order)))
    return out


def _prop1_subjects(config: RunConfig, order: Optional[int] = None) -> list[tuple[str, HarmonicMapping]]:
    order = config.truncation_order if order is None else order
    members = corpus_generate(config.seed, CORPUS_SIZE, order, subclass="prop1")
    out = [(f"prop1_corpus[{i}]", m) for i, m in enumerate(members)]
    for a in FAMILY_A:
        for p in range(16):
            params = ExtremalFamilyParams("prop1", a, theta=2 * math.pi * p / 16)
            out.append((_family_name(params), params.expand(order)))
    return out


def _family_name(p: ExtremalFamilyParams) -> str:
    if p.variant == "mobius":
        lam = p.lam
        return f"mobius(a={p.a.real:g},|lambda|={abs(lam):g},arg={math.degrees(np.angle(lam)):g})"
    return f"prop1(a={p.a.real:g},theta={math.degrees(p.theta):g})"


def inequality_row(suite, tag, subject, r, enc: Enclosure, bound: float, tol: float, **extra) -> dict:
    if enc.hi <= bound + tol:
        status = "pass"
    elif enc.lo > bound + tol:
        status = "fail"
    else:
        status = "inconclusive"
    row = {
        "suite": suite,
        "tag": tag,
        "claim": "<=bound",
        "subject": subject,
        "r": float(r),
        "lo": enc.lo,
        "hi": enc.hi,
        "bound": float(bound),
        "status": status,
        "ok": status == "pass",
    }
    row.update(extra)
    return row


def verdict_row(suite, tag, subject, r, enc: Enclosure) -> dict:
    v = enc.verdict()
    row = fn.functional_result(tag, float(r), enc)
    row.update({"suite": suite, "tag": tag, "claim": "<=1", "subject": subject, "ok": v == "<=1",
                "status": {"<=1": "pass", ">1": "fail"}.get(v, "inconclusive")})
    return row


# -- lemmas --------------------------------------------------------------------

LEMMA1_RADII = (0.1, 0.2, 1 / 3, 0.5, 0.75)
LEMMA2_RADII = (0.25, 0.5, 0.75, 0.99)
LEMMA3_RADII = (0.1, 0.3, 0.5)
HALF_DISK_RADII = (0.1, 0.2, 1 / 3, 0.5)
SP_RADII = (0.1, 0.3, 0.5, 0.7, 0.9)
DILATATION_RADIUS = 0.99
EQUALITY_TOL = 1e-10
PROP2_AREA_RADII = (0.1, 0.2, PROP1_RADIUS, 0.5, 0.75)


def run_lemma_suite(config: RunConfig) -> list[dict]:
    tol = config.tolerance
    rows = []
    subjects = _subjects(config)
    S = "lemmas"
    # sampling |g'| - |h'| near the boundary needs a converged truncation
    long_order = order_for_radius(DILATATION_RADIUS, config.truncation_order)
    long_subjects = subjects if long_order == config.truncation_order else _subjects(config, long_order)
    for name, m in long_subjects:
        rep = dilatation_check(m, grid_radius=DILATATION_RADIUS, grid_size=64)
        rows.append({"suite": S, "tag": "hypothesis", "claim": "|g'|<=|h'|", "subject": name,
                     "worst_margin": rep.worst_margin, "exact": rep.exact, "ok": rep.ok,
                     "order": long_order, "status": "pass" if rep.ok else "fail"})
    for name, m in subjects:
        x = abs(m.a0)
        for r in LEMMA1_RADII:
            enc = m.h.majorant_sum(r, 1)
            rows.append(inequality_row(S, "lemma1_AB", name, r, enc, fn.coefficient_sum_bound(x, r), tol))
        for r in LEMMA3_RADII:
            enc = m.h.weighted_square_sum(r, "k_rk")
            bound = fn.weighted_square_bound(x, r)
            rows.append(inequality_row(S, "lemma3", name, r, enc, bound, tol))
            if name.startswith("mobius"):
                gap = max(abs(enc.lo - bound), abs(enc.hi - bound))
                if gap <= EQUALITY_TOL:
                    status = "pass"
                elif enc.lo - EQUALITY_TOL <= bound <= enc.hi + EQUALITY_TOL:
                    status = "inconclusive"
                else:
                    status = "fail"
                rows.append({"suite": S, "tag": "lemma3_equality", "claim": "=bound", "subject": name,
                             "r": r, "deviation": gap, "ok": status == "pass", "status": status})
        for r in HALF_DISK_RADII:
            rows.append(inequality_row(S, "square_sum", name, r, m.h.weighted_square_sum(r, "rk"),
                                       fn.square_sum_bound(x, r), tol))
            rows.append(inequality_row(S, "bound_C", name, r, m.g.majorant_sum(r, 1),
                                       fn.bound_curves(x, r, "C"), tol))
            rows.append(inequality_row(S, "area_bound", name, r, area_series(m, r), fn.area_bound(x, r), tol))
        for r in SP_RADII:
            vals, tail = m.h.on_circle(r, 1024), m.h.evaluate(r).tail
            sampled = Enclosure(max(float(np.abs(vals).max()) - tail, 0.0), float(np.abs(vals).max()) + tail)
            rows.append(inequality_row(S, "schwarz_pick", name, r, Enclosure(sampled.lo, sampled.lo),
                                       schwarz_pick_point_bound(min(x, 1.0), r), tol, sampled_hi=sampled.hi))

    # the square-sum comparison needs longer truncations as r -> 1
    for r in LEMMA2_RADII:
        order = order_for_radius(r, config.truncation_order)
        if order == config.truncation_order:
            batch = subjects
        elif order == long_order:
            batch = long_subjects
        else:
            batch = _subjects(config, order)
        for name, m in batch:
            a_sum = m.h.weighted_square_sum(r, "rk")
            b_sum = m.g.weighted_square_sum(r, "rk")
            row = inequality_row(S, "lemma2", name, r, b_sum, a_sum.lo, tol, order=order, rhs_hi=a_sum.hi)
            rows.append(row)

    for name, m in _prop1_subjects(config):
        x = abs(m.a0)
        for r in PROP2_AREA_RADII:
            area = area_series(m, r)
            rows.append(inequality_row(S, "prop2_area", name, r, area, fn.prop1_area_bound(x, r), tol))
            alt = m.h.weighted_square_sum(r, "area_prop1")
            dev = abs(alt.mid - area.mid)
            ok = dev <= 1e-12 + alt.width + area.width
            rows.append({"suite": S, "tag": "prop1_area_identity", "claim": "=", "subject": name, "r": r,
                         "deviation": dev, "ok": ok, "status": "pass" if ok else "fail"})

    for r, const in ((0.2, 25 / 24**2), (1 / 3, 9 / 64)):
        ok = abs(fn.area_bound(0.0, r) - const) <= 1e-15
        rows.append({"suite": S, "tag": "area_constant", "claim": f"={const!r}", "r": r, "ok": ok,
                     "status": "pass" if ok else "fail"})
    return rows


# -- theorems --------------------------------------------------------------------

THEOREM_CHECKS = (("H1", 1 / 5), ("H2", 1 / 3), ("L", 1 / 5), ("N", 1 / 5), ("T4", T4_RADIUS))
BASELINE_CHECKS = (
    ("bohr", 1 / 3), ("B1_analytic", 1 / 3), ("B2_analytic", 1 / 2),
    ("ThmB1", 1 / 3), ("ThmB2", 1 / 3), ("ThmB3", math.sqrt(11 / 27)),
)


def run_theorem_suite(config: RunConfig, include_baselines: bool = True) -> list[dict]:
    S = "theorems"
    rows = []
    subjects = _subjects(config)
    for name, m in subjects:
        for tag, r in THEOREM_CHECKS:
            rows.append(verdict_row(S, tag, name, r, fn.evaluate(tag, m, r)))
    K = compute_K()
    for name, m in _prop1_subjects(config):
        rows.append(verdict_row(S, "P1", name, PROP1_RADIUS, fn.eval_P1(m, PROP1_RADIUS)))
        rows.append(verdict_row(S, "P2", name, PROP1_RADIUS, fn.eval_P2(m, PROP1_RADIUS, K)))
    if include_baselines:
        seen = set()
        for name, m in subjects:
            key = name.split(",|lambda|")[0]
            if key in seen:
                continue
            seen.add(key)
            for tag, r in BASELINE_CHECKS:
                rows.append(verdict_row(S, tag, key, r, fn.evaluate(tag, m, r)))
    return rows


def run_suite(name: str, config: RunConfig) -> list[dict]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {SUITES}")
    rows = []
    if name in ("lemmas", "all"):
        rows += run_lemma_suite(config)
    if name in ("theorems", "all"):
        rows += run_theorem_suite(config)
    if name in ("proofs", "all"):
        for row in run_proof_suite():
            row.setdefault("suite", "proofs")
            row.setdefault("status", "pass" if row["ok"] else "fail")
            rows.append(row)
    return rows


def summarize(name: str, config: RunConfig, rows: Iterable[dict]) -> dict:
    rows = list(rows)
    failed = sum(1 for r in rows if r.get("status") == "fail")
    inconclusive = sum(1 for r in rows if r.get("status") == "inconclusive")
    return {
        "suite": name,
        "config": config.to_json(),
        "passed": all(r["ok"] for r in rows),
        "counts": {"total": len(rows), "failed": failed, "inconclusive": inconclusive},
        "claims": rows,
    }
