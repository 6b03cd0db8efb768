import math

import numpy as np
import pytest

from bohrharm.proof_checks import (
    AUX,
    CHAINS,
    ENDPOINT_ZEROS,
    PHI_SMALL_MIN,
    SIGN_CLAIMS,
    SMALL_A0_CASES,
    check_chain,
    check_derivative_identities,
    check_small_a0_case,
    eval_aux,
    phi_t1,
    phi_xr_t4,
    run_proof_suite,
    verify_sign,
    verify_xplus_minimum,
    x_plus,
)
from bohrharm.radii import R0_THM4_CLOSED


@pytest.mark.parametrize("tag, x", ENDPOINT_ZEROS)
def test_endpoint_zeros(tag, x):
    assert abs(eval_aux(tag, x)) <= 1e-10


def test_phi_xr_at_origin():
    for r in (0.1, 0.4, 0.7):
        assert eval_aux("Phi_xr_T4", 0.0, r) == pytest.approx(1 - 3 * r * r, abs=1e-15)


def test_phi_xr_origin_value_positive_only_below_inverse_sqrt3():
    assert eval_aux("Phi_xr_T4", 0.0, R0_THM4_CLOSED) > 0
    assert eval_aux("Phi_xr_T4", 0.0, 1 / math.sqrt(2)) < 0


def test_domain_checks():
    with pytest.raises(ValueError):
        eval_aux("Phi2", 0.2)
    with pytest.raises(ValueError):
        eval_aux("Phi_xr_T4", 0.5)
    with pytest.raises(ValueError):
        eval_aux("nope", 0.5)


def test_phi_t1_uses_three_sixteenths():
    x = 0.4
    s = math.sqrt(5 - x * x)
    want = 4 * (2 - x) * s - (1 + x) * (5 - x) - 2 * (3 / 16) * (1 + x) * (1 - x * x) * (5 - x) * s
    assert phi_t1(x) == pytest.approx(want, rel=1e-15)


@pytest.mark.parametrize("tag, claim, domain", SIGN_CLAIMS)
def test_sign_claims(tag, claim, domain):
    rep = verify_sign(tag, claim, domain, 4096)
    assert rep.ok, rep


def test_psi2_minimum():
    rep = verify_sign("Psi2", "lower_bound:2.39", (1 / 3, 1.0))
    assert rep.min_value >= 2.39


def test_phi_small_minimum():
    rep = verify_sign("phi_small", "nonneg", (1 / 3, 1.0))
    assert not rep.ok
    assert rep.min_value == pytest.approx(-16.6085, abs=1e-3)
    assert rep.argmin == pytest.approx(math.sqrt(31 / 48), abs=1e-6)
    assert PHI_SMALL_MIN == pytest.approx(16 * (31 / 48) ** 1.5 - 31 * math.sqrt(31 / 48))


def test_phi_t1_decreasing_by_finite_differences():
    xs = np.linspace(0.0, 1.0 - 1e-6, 4096)
    d = (phi_t1(xs + 1e-6) - phi_t1(xs - 1e-6)) / 2e-6
    assert d.max() <= 1e-8


def test_failed_claim_is_a_report():
    rep = verify_sign("Phi_T1", "increasing")
    assert not rep.ok and rep.min_value < 0


def test_verify_sign_rejects_small_grid():
    with pytest.raises(ValueError):
        verify_sign("Phi2", "nonneg", grid=100)


def test_verify_sign_unknown_claim():
    with pytest.raises(ValueError):
        verify_sign("Phi2", "wiggly")


@pytest.mark.parametrize("r, sign", [(0.3, 1), (R0_THM4_CLOSED, 0), (0.6, -1)])
def test_xplus_minimum(r, sign):
    rep = verify_xplus_minimum(r)
    assert rep.ok and rep.sign == sign


def test_xplus_zero_at_sharp_radius():
    assert abs(verify_xplus_minimum(R0_THM4_CLOSED).phi_at_xplus) <= 1e-8
    assert x_plus(None, R0_THM4_CLOSED) == pytest.approx(1 / math.sqrt(5), abs=1e-12)


def test_xplus_is_grid_minimum():
    r = 0.45
    xs = np.linspace(0, 1, 20001)
    j = int(np.argmin(phi_xr_t4(xs, r)))
    assert xs[j] == pytest.approx(x_plus(None, r), abs=1e-4)


def test_xplus_rejects_radius():
    with pytest.raises(ValueError):
        verify_xplus_minimum(0.8)


@pytest.mark.parametrize("name", list(CHAINS))
def test_chain_identities(name):
    assert check_chain(name)["ok"]


@pytest.mark.parametrize("name", list(SMALL_A0_CASES))
def test_small_a0_cases(name):
    assert check_small_a0_case(name)["ok"]


def test_derivative_identities():
    assert all(row["ok"] for row in check_derivative_identities())


def test_every_tag_has_one_formula():
    assert set(AUX) == {"Phi_T1", "Psi_T1", "Phi2", "Psi2", "Phi3", "Phi_T2", "Psi1_T2", "Psi2_T2",
                        "Phi_T3", "Phi_xr_T4", "x_plus", "phi_small"}


def test_proof_suite_rows():
    rows = run_proof_suite(1024)
    assert all(row["ok"] for row in rows)
    for row in rows:
        assert {"tag", "claim", "domain", "ok", "min_value", "argmin"} <= set(row)
