"""Acceptance criteria 1-10, each printing one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
"""

import math

import mpmath as mp
import numpy as np

from bohrharm import functionals as fn
from bohrharm.families import corpus_generate, mobius
from bohrharm.harmonic import area_quadrature, area_series
from bohrharm.proof_checks import (
    ENDPOINT_ZEROS,
    eval_aux,
    verify_sign,
    verify_xplus_minimum,
    x_plus,
)
from bohrharm.radii import (
    R0_THM4_CLOSED,
    compute_K,
    empirical_radius,
    solve_radius_prop1,
    solve_radius_thm4,
    thm4_equation,
    thm4_minimum_value,
)
from bohrharm.verification import RunConfig, run_lemma_suite, run_theorem_suite

_printer = print


def report(n: int, ok: bool, detail: str, capsys=None) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {n:2d}: {detail}"
    if capsys is not None:
        with capsys.disabled():
            _printer("\n" + line)
    else:
        _printer(line)
    assert ok, line


def test_criterion_01_sharp_radius_t4(capsys):
    res = solve_radius_thm4()
    closed = math.sqrt(5 / (9 + 4 * math.sqrt(5)))
    forms = abs(thm4_minimum_value(res.value)) <= 1e-12 and abs(thm4_equation(res.value)) <= 1e-12
    ok = abs(res.value - 0.527864) <= 1e-5 and abs(res.value - closed) <= 1e-10 and forms
    report(1, ok, f"r0 = {res.value:.12f}, |r0 - closed form| = {abs(res.value - closed):.1e}", capsys)


def test_criterion_02_sharp_radius_prop1(capsys):
    res = solve_radius_prop1()
    ok = abs(res.value - 0.299824) <= 1e-5 and abs(res.residual) <= 1e-12
    report(2, ok, f"r0 = {res.value:.12f}, residual = {res.residual:.1e}", capsys)


def test_criterion_03_constant_k(capsys):
    K = compute_K()
    ok = abs(K - 1.209452) <= 1e-5
    report(3, ok, f"K = {K:.10f} (|K - 1.209452| = {abs(K - 1.209452):.1e})", capsys)


def test_criterion_04_theorem_verdicts(capsys):
    rows = run_theorem_suite(RunConfig(), include_baselines=False)
    wanted = {"H1", "H2", "L", "N", "T4", "P1", "P2"}
    rows = [r for r in rows if r["tag"] in wanted]
    fails = sum(r["status"] == "fail" for r in rows)
    inconclusive = sum(r["status"] == "inconclusive" for r in rows)
    ok = {r["tag"] for r in rows} == wanted and fails == 0 and inconclusive == 0
    report(4, ok, f"{len(rows)} verdicts, {fails} failed, {inconclusive} inconclusive", capsys)


def _gaps(tag: str, r: float) -> list[float]:
    out = []
    for a in (0.9, 0.99, 0.999):
        vals = [fn.evaluate(tag, mobius(a, lam), r) for lam in (1.0, -1.0, 1j, np.exp(0.5j))]
        assert all(v.hi <= 1.0 for v in vals)
        out.append(1.0 - max(v.hi for v in vals))
    return out


def test_criterion_05_tightness(capsys):
    h1, l, n = _gaps("H1", 0.2), _gaps("L", 0.2), _gaps("N", 0.2)

    def decays(g):
        return all(x > 0 for x in g) and g[0] > g[1] > g[2]

    ok = h1[1] <= 1e-4 and decays(h1) and decays(l) and decays(n)
    detail = "1-H1: " + ", ".join(f"{g:.2e}" for g in h1) + "; 1-L: " + ", ".join(f"{g:.2e}" for g in l)
    detail += "; 1-N: " + ", ".join(f"{g:.2e}" for g in n)
    report(5, ok, detail, capsys)


def test_criterion_06_sharpness_violations(capsys):
    a = 0.99
    L = fn.evaluate(fn.FunctionalId("L", 0.4), mobius(a, 1.0), 0.2)
    mp.mp.dps = 50
    A = mp.mpf(a)
    closed = A + 2 * (1 - A**2) / (5 - A) + mp.mpf("0.4") * 2 * (1 - A**2) ** 2 / (5 - A**2)
    closed_ok = abs(float(closed) - L.mid) <= 1e-9 and closed > 1
    N = fn.eval_N(mobius(a, 1.0), 0.25)
    r = 0.55
    T = fn.eval_T4(mobius(x_plus(None, r), 1.0), r)
    ok = L.lo > 1 and closed_ok and N.lo > 1 and T.lo > 1
    detail = f"L_0.4(1/5) - 1 = {float(closed - 1):.3e}, N(0.25) - 1 = {N.lo - 1:.3e}, T4(0.55) - 1 = {T.lo - 1:.3e}"
    report(6, ok, detail, capsys)


def test_criterion_07_area_oracles(capsys):
    worst = 0.0
    for m in corpus_generate(0, 20):
        for r in (0.1, 0.3, 0.5):
            enc = area_series(m, r)
            worst = max(worst, abs(area_quadrature(m, r) - enc.mid) / abs(enc.mid))
    zero = max(max(abs(area_series(mobius(a, lam), r).lo), abs(area_series(mobius(a, lam), r).hi))
               for a in (0.0, 0.3, 0.9, 0.99) for lam in (1.0, 1j, -1.0) for r in (0.1, 0.5, 0.9))
    ok = worst <= 1e-6 and zero <= 1e-10
    report(7, ok, f"max relative series/quadrature gap {worst:.1e}; |area| at |lambda|=1 <= {zero:.1e}", capsys)


LEMMA_TAGS = ("lemma1_AB", "lemma2", "lemma3", "lemma3_equality", "bound_C", "schwarz_pick", "square_sum")


def test_criterion_08_lemma_suite(capsys):
    rows = [r for r in run_lemma_suite(RunConfig()) if r["tag"] in LEMMA_TAGS]
    bad = [r for r in rows if r["status"] != "pass"]
    ok = not bad and {r["tag"] for r in rows} == set(LEMMA_TAGS)
    report(8, ok, f"{len(rows)} lemma rows over corpus and families, {len(bad)} not passing", capsys)


def test_criterion_09_proof_checks(capsys):
    zeros = max(abs(eval_aux(tag, x)) for tag, x in ENDPOINT_ZEROS)
    psi2 = verify_sign("Psi2", "lower_bound:2.39", (1 / 3, 1.0))
    phi = verify_sign("phi_small", "nonneg", (1 / 3, 1.0))
    signs = [verify_xplus_minimum(r) for r in (0.3, R0_THM4_CLOSED, 0.6)]
    ok = (
        zeros <= 1e-10
        and psi2.ok
        and abs(phi.min_value + 16.6085) <= 1e-3
        and all(s.ok for s in signs)
        and [s.sign for s in signs] == [1, 0, -1]
    )
    detail = f"endpoint zeros <= {zeros:.1e}, min Psi2 = {psi2.min_value:.5f}, min phi = {phi.min_value:.4f}, "
    detail += "x_plus signs " + str([s.sign for s in signs])
    report(9, ok, detail, capsys)


def test_criterion_10_empirical_radii(capsys):
    bohr = empirical_radius("bohr").value
    h1 = empirical_radius("H1").value
    p1 = empirical_radius("P1").value
    ok = abs(bohr - 1 / 3) <= 1e-3 and abs(h1 - 0.2) <= 1e-3 and abs(p1 - 0.2998) <= 1e-3
    report(10, ok, f"bohr {bohr:.6f}, H1 {h1:.6f}, P1 {p1:.6f}", capsys)


if __name__ == "__main__":
    import sys

    failed = 0
    for name, func in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                func(None)
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
