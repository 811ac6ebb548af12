import math

import numpy as np
import pytest
import scipy.special
from hypothesis import given, settings
from hypothesis import strategies as st

from cardinterp import specfun
from cardinterp.errors import AccuracyError, DomainError, InvalidSpecError


def k_half_closed(r):
    # K_{1/2}(r) = sqrt(pi/(2r)) e^{-r}
    return math.sqrt(math.pi / (2.0 * r)) * math.exp(-r)


def k_defining_integral(beta, r, t_max=25.0, n=2000):
    """Independent oracle: trapezoid of (1/2) int_{-T}^{T} e^{-r cosh t} e^{beta t} dt."""
    t = np.linspace(-t_max, t_max, n + 1)
    g = np.exp(-r * np.cosh(t) + beta * t)
    return 0.5 * np.trapezoid(g, t)


def test_half_order_closed_form():
    for r in (0.1, 0.5, 1.0, 2.0, 10.0, 100.0):
        assert specfun.bessel_k(0.5, r) == pytest.approx(k_half_closed(r), rel=1e-10)


def test_example_value_against_both_oracles():
    got = specfun.bessel_k(0.5, 1.0)
    assert got == pytest.approx(0.46106850444789454, rel=1e-10)
    assert got == pytest.approx(k_defining_integral(0.5, 1.0), rel=1e-8)


def test_order_symmetry_is_exact():
    for beta, r in [(0.5, 1.0), (2.5, 0.3), (7.5, 4.0)]:
        assert specfun.bessel_k(-beta, r) == specfun.bessel_k(beta, r)


def test_scaled_closed_forms():
    assert specfun.bessel_k_scaled(0.5, 1.0) == pytest.approx(math.sqrt(math.pi / 2), rel=1e-10)
    big = specfun.bessel_k_scaled(0.5, 1e4)
    assert math.isfinite(big) and big > 0
    assert big == pytest.approx(math.sqrt(math.pi / 2e4), rel=1e-10)


def test_three_term_recurrence():
    # K_{b+1}(r) = K_{b-1}(r) + (2b/r) K_b(r), assembled from scaled values
    for beta in (0.5, 1.5, 2.5, 3.5):
        for r in (0.5, 1.0, 2.0, 4.0):
            km = specfun.bessel_k_scaled(beta - 1.0, r)
            k0 = specfun.bessel_k_scaled(beta, r)
            kp = specfun.bessel_k_scaled(beta + 1.0, r)
            assert kp == pytest.approx(km + (2.0 * beta / r) * k0, rel=1e-8)


def test_scaled_consistent_with_unscaled():
    for beta, r in [(0.5, 1.0), (2.5, 2.0), (1.0, 10.0)]:
        assert specfun.bessel_k_scaled(beta, r) * math.exp(-r) == pytest.approx(
            specfun.bessel_k(beta, r), rel=1e-12
        )


def test_derivative_identity_central_difference():
    # d/dz [z^b K_b(z)] = -z^b K_{b-1}(z)
    h = 1e-4
    for beta in (0.5, 1.5, 3.0):
        for z in (0.5, 1.0, 2.0):
            f = lambda t: t**beta * specfun.bessel_k(beta, t)
            lhs = (f(z + h) - f(z - h)) / (2.0 * h)
            rhs = -(z**beta) * specfun.bessel_k(beta - 1.0, z)
            assert lhs == pytest.approx(rhs, rel=1e-6)


def test_decreasing_in_argument():
    rs = np.geomspace(1e-2, 1e2, 25)
    for beta in (0.5, 1.5, 4.0):
        vals = [specfun.bessel_k(beta, float(r)) for r in rs]
        assert all(a > b for a, b in zip(vals, vals[1:]))


def test_small_argument_growth_exponent():
    # log K_b(r) / log(1/r) -> |b| as r -> 0
    rs = np.geomspace(1e-6, 1e-3, 12)
    for beta in (0.5, 1.5, 2.5):
        logs = np.array([math.log(specfun.bessel_k(beta, float(r))) for r in rs])
        slope = np.polyfit(np.log(1.0 / rs), logs, 1)[0]
        assert slope == pytest.approx(beta, rel=0.02)


def test_printed_bounds_lower_holds_upper_reported():
    rs = np.geomspace(1e-2, 1e2, 17)
    records = specfun.check_printed_bounds([0.5, 1.5, 2.5], rs)
    assert all(rec["lower_ok"] for rec in records)
    # the printed upper bound fails where beta^2/(2r) is sizable
    assert any(not rec["upper_ok"] for rec in records)


def test_example_within_lower_bound_and_upper_reported():
    value = specfun.bessel_k(1.5, 2.0)
    lo, hi = specfun.printed_bounds(1.5, 2.0)
    assert lo <= value
    # as printed, the upper bound is smaller than the true value here
    assert value > hi


def test_scipy_cross_check():
    for beta in (0.0, 0.5, 1.0, 2.5, 7.5, 16.0):
        for r in (1e-3, 0.1, 1.0, 10.0, 100.0):
            assert specfun.bessel_k_scaled(beta, r) == pytest.approx(
                float(scipy.special.kve(beta, r)), rel=1e-9
            )


def test_domain_errors():
    with pytest.raises(DomainError):
        specfun.bessel_k(0.5, 0.0)
    with pytest.raises(DomainError):
        specfun.bessel_k(0.5, -1.0)
    with pytest.raises(DomainError):
        specfun.bessel_k(65.0, 1.0)


def test_accuracy_error_reports_achieved():
    cfg = specfun.BesselEvalConfig(rel_tol=1e-12, max_nodes=64)
    with pytest.raises(AccuracyError) as err:
        specfun.bessel_k(8.0, 1e-2, cfg)
    assert "64 nodes" in str(err.value)


def test_config_validation():
    with pytest.raises(InvalidSpecError):
        specfun.BesselEvalConfig(rel_tol=1e-3)
    with pytest.raises(InvalidSpecError):
        specfun.BesselEvalConfig(max_nodes=32)
    with pytest.raises(InvalidSpecError):
        specfun.BesselEvalConfig(t_cutoff=-1.0)


def test_unscaled_overflow_guard():
    with pytest.raises(AccuracyError):
        specfun.bessel_k(0.5, 1e4)


@settings(max_examples=60, deadline=None)
@given(
    beta=st.floats(min_value=-8.0, max_value=8.0),
    r=st.floats(min_value=1e-3, max_value=50.0),
)
def test_positivity_and_symmetry_property(beta, r):
    val = specfun.bessel_k(beta, r)
    assert val > 0.0
    assert val == specfun.bessel_k(-beta, r)
    assert val > specfun.bessel_k(beta, r * 1.5)
