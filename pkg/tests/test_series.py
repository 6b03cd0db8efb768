import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bohrharm.series import (
    AnalyticSeries,
    Enclosure,
    SchemaError,
    geometric_tail,
    schur_synthesize,
)


def mobius_series(a: complex, order: int) -> AnalyticSeries:
    # (a + z) * sum (-conj(a) z)^n, built by convolution
    geo = (-np.conj(a)) ** np.arange(order + 1)
    c = np.convolve([a, 1.0], geo)[: order + 1]
    return AnalyticSeries(c, tail="bounded_by_one")


# -- enclosure --------------------------------------------------------------

def test_enclosure_rejects_inverted_bounds():
    with pytest.raises(ValueError):
        Enclosure(1.0, 0.0)


def test_enclosure_verdicts():
    assert Enclosure(0.2, 0.9).verdict() == "<=1"
    assert Enclosure(1.1, 1.2).verdict() == ">1"
    assert Enclosure(0.9, 1.1).verdict() == "inconclusive"


def test_enclosure_arithmetic():
    e = Enclosure(1.0, 2.0) + Enclosure(0.5, 0.5) + 1.0
    assert (e.lo, e.hi) == (2.5, 3.5)
    assert (e * 2).hi == 7.0
    assert Enclosure(-1.0, 2.0).square().lo == 0.0


# -- evaluation ----------------------------------------------------------------

def test_eval_identity():
    v = AnalyticSeries.identity().evaluate(0.3)
    assert v.value == pytest.approx(0.3, abs=0)
    assert v.tail == 0.0


def test_eval_mobius_matches_closed_form():
    s = mobius_series(0.5, 64)
    v = s.evaluate(0.2)
    exact = (0.5 + 0.2) / (1 + 0.1)
    assert abs(v.value - exact) <= v.tail + 1e-15
    assert exact == pytest.approx(0.6363636363636364)


def test_eval_bounded_tail_formula():
    c = np.zeros(21)
    c[1] = 0.5
    s = AnalyticSeries(c, tail="bounded_by_one")
    assert s.evaluate(0.5).tail == pytest.approx(0.5**20, rel=1e-14)


def test_eval_rejects_outside_disk():
    with pytest.raises(ValueError):
        AnalyticSeries.identity().evaluate(1.0)


def test_on_circle_agrees_with_polyval():
    s = mobius_series(0.3 + 0.4j, 40)
    m = 16
    z = 0.7 * np.exp(2j * np.pi * np.arange(m) / m)
    assert np.allclose(s.on_circle(0.7, m), s.evaluate(z).value, atol=1e-14)


# -- derivative ---------------------------------------------------------------

def test_derivative_of_z_is_one():
    d = AnalyticSeries([0, 1]).derivative()
    assert d.coeffs[0] == 1 and np.all(d.coeffs[1:] == 0)


def test_derivative_of_z_squared():
    d = AnalyticSeries([0, 0, 1]).derivative()
    assert list(d.coeffs) == [0, 2]


def test_derivative_mobius_at_zero():
    d = mobius_series(0.5, 32).derivative()
    assert d.evaluate(0.0).value == pytest.approx(0.75)
    assert d.tail == "none"


# -- majorant sums -------------------------------------------------------------

def test_majorant_identity():
    e = AnalyticSeries.identity().majorant_sum(1 / 3)
    assert e.lo == pytest.approx(1 / 3) and e.hi == pytest.approx(1 / 3)


def test_majorant_mobius_from_one():
    e = mobius_series(0.5, 256).majorant_sum(0.2, 1)
    assert 0.75 * 0.2 / 0.9 in e
    assert e.mid == pytest.approx(1 / 6, rel=1e-14)


def test_majorant_constant_from_one_is_zero():
    e = AnalyticSeries.constant(1.0).majorant_sum(0.9, 1)
    assert e.lo == 0.0 and e.hi == 0.0


def test_majorant_rejects_r_one():
    with pytest.raises(ValueError):
        AnalyticSeries.identity().majorant_sum(1.0)


def test_majorant_width_bounded_tail():
    s = schur_synthesize([0.3, 0.5j, -0.2], 128)
    assert s.majorant_sum(0.2).width < 1e-12


# -- weighted square sums ---------------------------------------------------------

def test_square_sum_identity_r2k():
    assert AnalyticSeries.identity().weighted_square_sum(0.5, "r2k").mid == pytest.approx(0.25)


def test_square_sum_lemma_weight_mobius_equality():
    e = mobius_series(0.5, 256).weighted_square_sum(0.5, "k_rk")
    exact = 0.5 * 0.5625 / 0.765625
    assert exact == pytest.approx(0.3673469387755102)
    assert abs(e.mid - exact) <= e.width + 1e-15


@pytest.mark.parametrize("weight", ["rk", "k_rk", "r2k", "k_r2k", "area_prop1"])
def test_square_sum_at_zero(weight):
    e = mobius_series(0.5, 32).weighted_square_sum(0.0, weight)
    assert e.lo == 0.0 and e.hi == 0.0


def test_geometric_tail_closed_forms():
    rho, s = 0.4, 5
    brute = sum(rho**k for k in range(s, 400))
    wbrute = sum(k * rho**k for k in range(s, 400))
    assert geometric_tail(rho, s) == pytest.approx(brute, rel=1e-13)
    assert geometric_tail(rho, s, weighted=True) == pytest.approx(wbrute, rel=1e-13)


# -- Schur synthesis -----------------------------------------------------------

def test_schur_single_parameter_is_constant():
    s = schur_synthesize([0.4 - 0.1j], 8)
    assert s.coeffs[0] == 0.4 - 0.1j and np.all(s.coeffs[1:] == 0)
    assert s.tail == "bounded_by_one"


def test_schur_unimodular_tail_gives_mobius():
    a = 0.3 - 0.5j
    s = schur_synthesize([a, 1.0], 30)
    assert np.allclose(s.coeffs, mobius_series(a, 30).coeffs, atol=1e-15)
    # the moduli agree with the conjugate-sign form (|a|^2 - 1) conj(a)^(k-1)
    k = np.arange(1, 31)
    alt = (abs(a) ** 2 - 1) * np.conj(a) ** (k - 1)
    assert np.allclose(np.abs(s.coeffs[1:]), np.abs(alt), atol=1e-15)


def test_schur_zero_params():
    assert np.all(schur_synthesize([0, 0, 0], 10).coeffs == 0)


def test_schur_rejects_large_parameter():
    with pytest.raises(ValueError):
        schur_synthesize([0.5, 1.2])


def test_schur_matches_direct_recursion():
    # evaluate the recursion pointwise and compare with the synthesized series
    params = [0.2 + 0.1j, -0.5j, 0.7, 0.1 - 0.3j]
    s = schur_synthesize(params, 200)
    z = 0.6 * np.exp(1j * np.linspace(0, 2 * np.pi, 17))
    f = np.full_like(z, params[-1])
    for g in reversed(params[:-1]):
        f = (g + z * f) / (1 + np.conj(g) * z * f)
    assert np.allclose(s.evaluate(z).value, f, atol=1e-13)


complex_param = st.builds(
    lambda r, t: r * complex(math.cos(t), math.sin(t)),
    st.floats(0.0, 0.95),
    st.floats(0.0, 2 * math.pi),
)


@settings(max_examples=40, deadline=None)
@given(st.lists(complex_param, min_size=1, max_size=8))
def test_schur_bounded_on_grid(params):
    s = schur_synthesize(params, 256)
    for rho in (0.3, 0.7, 0.95):
        vals = s.on_circle(rho, 64)
        tail = s.evaluate(rho).tail
        assert np.all(np.abs(vals) <= 1 + tail + 1e-12)


@settings(max_examples=40, deadline=None)
@given(st.lists(complex_param, min_size=1, max_size=6), st.floats(0.01, 0.9), st.floats(0.01, 0.09))
def test_majorant_monotone_in_r(params, r, dr):
    s = schur_synthesize(params, 128)
    assert s.majorant_sum(r).lo <= s.majorant_sum(min(r + dr, 0.99)).hi


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.floats(-2, 2), st.floats(-2, 2)), min_size=2, max_size=20))
def test_derivative_inverts_integration(pairs):
    s = AnalyticSeries([complex(a, b) for a, b in pairs])
    back = s.integrate().derivative()
    assert np.allclose(back.coeffs, s.coeffs, rtol=1e-15, atol=0)


@settings(max_examples=30, deadline=None)
@given(st.lists(complex_param, min_size=1, max_size=6), st.floats(0.0, 0.9))
def test_enclosure_contains_long_truncation(params, r):
    short = schur_synthesize(params, 24)
    long = schur_synthesize(params, 1024)
    assert long.majorant_sum(r).mid <= short.majorant_sum(r).hi + 1e-12
    assert long.majorant_sum(r).mid >= short.majorant_sum(r).lo - 1e-12


# -- JSON ----------------------------------------------------------------------

def test_json_round_trip(validate):
    for tail in ("none", "bounded_by_one", 0.25):
        s = AnalyticSeries([0.1, 0.2 - 0.3j, 0.0], tail=tail)
        obj = json.loads(json.dumps(s.to_json()))
        validate(obj, "series.schema.json")
        assert AnalyticSeries.from_json(obj) == s


@pytest.mark.parametrize(
    "obj, location",
    [
        ({"coeffs": [[0, 0]]}, "/coeffs"),
        ({"coeffs": [[0, 0], [1, "x"]]}, "/coeffs/1"),
        ({"coeffs": [[0, 0], [1, 0]], "tail": "huge"}, "/tail"),
        ({"coeffs": [[0, 0], [1, 0]], "tail": {"custom": -1}}, "/tail"),
        ({"tail": "none"}, ""),
    ],
)
def test_json_schema_errors_carry_location(obj, location):
    with pytest.raises(SchemaError) as info:
        AnalyticSeries.from_json(obj)
    assert info.value.location == location


def test_bounded_by_one_requires_small_constant():
    with pytest.raises(ValueError):
        AnalyticSeries([1.5, 0.0], tail="bounded_by_one")
