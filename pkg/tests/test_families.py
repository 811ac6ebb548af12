import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cardinterp import families, specfun
from cardinterp.errors import DomainError, InvalidSpecError, TruncationError

PI = math.pi


def poly(k=1, dim=1, **kw):
    return families.FamilySpec(families.POLYHARMONIC, dim=dim, k=k, **kw)


def gauss(alpha=1.0, dim=1, **kw):
    return families.FamilySpec(families.GAUSSIAN, dim=dim, alpha=alpha, **kw)


def mq_alpha(alpha=0.5, c=1.0, dim=1):
    return families.FamilySpec(families.MULTIQUADRIC_ALPHA, dim=dim, alpha=alpha, c=c)


def mq_c(c=1.0, alpha=0.5, dim=1):
    return families.FamilySpec(families.MULTIQUADRIC_C, dim=dim, alpha=alpha, c=c)


# --------------------------------------------------------------- validation


@pytest.mark.parametrize(
    "bad",
    [
        dict(kind=families.POLYHARMONIC, dim=1, k=0),
        dict(kind=families.POLYHARMONIC, dim=2, k=2),          # needs k >= dim+1
        dict(kind=families.GAUSSIAN, dim=1, alpha=0.5),        # needs alpha >= 1
        dict(kind=families.MULTIQUADRIC_ALPHA, dim=1, alpha=2.0),   # integer alpha
        dict(kind=families.MULTIQUADRIC_ALPHA, dim=1, alpha=0.4),
        dict(kind=families.MULTIQUADRIC_C, dim=1, alpha=0.5, c=0.5),  # c >= 1
        dict(kind=families.MULTIQUADRIC_C, dim=1, alpha=-1.0, c=1.0),
        dict(kind=families.MULTIQUADRIC_C, dim=2, alpha=-1.5, c=1.0),  # needs <= -5/2
        dict(kind="triweight", dim=1),
    ],
)
def test_invalid_specs_rejected(bad):
    with pytest.raises(InvalidSpecError):
        families.FamilySpec(**bad)


def test_boundary_specs_accepted():
    poly(k=1, dim=1)
    poly(k=3, dim=2)
    gauss(alpha=1.0)
    mq_alpha(alpha=0.5)
    mq_c(c=1.0, alpha=-1.5)        # dim-1 lower branch
    families.FamilySpec(families.MULTIQUADRIC_C, dim=2, alpha=-2.5, c=1.0)


# --------------------------------------------------------------- transforms


def test_phi_hat_point_examples():
    assert families.phi_hat(poly(k=1), PI) == pytest.approx(PI**-2, rel=1e-14)
    assert families.phi_hat(gauss(1.0), 0.0) == 1.0
    k1 = specfun.bessel_k(1.0, 1.0)
    assert families.phi_hat(mq_alpha(0.5, c=1.0), 1.0) == pytest.approx(k1, rel=1e-10)
    assert k1 == pytest.approx(0.6019072301972346, rel=1e-10)


def test_log_phi_hat_closed_forms():
    assert families.log_phi_hat(gauss(16.0), 3.0 * PI) == pytest.approx(
        -16.0 * 9.0 * PI**2, rel=1e-14
    )
    assert families.log_phi_hat(poly(k=3), 2.0 * PI) == pytest.approx(
        -6.0 * math.log(2.0 * PI), rel=1e-14
    )
    val = families.log_phi_hat(mq_alpha(0.5, c=50.0), PI)
    expect = -math.log(PI / 50.0) + math.log(specfun.bessel_k_scaled(1.0, 50.0 * PI)) - 50.0 * PI
    assert math.isfinite(val)
    assert val == pytest.approx(expect, rel=1e-12)


def test_singular_at_origin_raises():
    with pytest.raises(DomainError):
        families.phi_hat(poly(k=1), 0.0)
    with pytest.raises(DomainError):
        families.log_phi_hat(mq_c(c=2.0), 0.0)
    assert families.phi_hat(gauss(2.0), 0.0) == 1.0


def test_evenness():
    for spec in (poly(k=2), gauss(3.0), mq_alpha(1.5), mq_c(c=4.0)):
        for xi in (0.3, 1.2, 3.0):
            assert families.phi_hat(spec, xi) == families.phi_hat(spec, -xi)


# ------------------------------------------------------------ periodization


def test_periodization_polyharmonic_closed_form():
    # sum_j (xi - 2 pi j)^{-2} = 1/(4 sin^2(xi/2)); subtract the j=0 term
    xi = PI / 2.0
    res = families.periodization(poly(k=1), xi, trunc_j=16)
    expect = 0.5 - 4.0 / PI**2
    assert res.u_total == pytest.approx(expect, rel=1e-12)
    assert res.tail_value > 0.0
    # the correction is exact here, so the residual bound sits far below it
    assert res.tail_bound < 1e-10 * res.tail_value


def test_periodization_gaussian_direct_oracle():
    res = families.periodization(gauss(1.0), 0.0, trunc_j=4)
    oracle = 2.0 * sum(math.exp(-((2.0 * PI * j) ** 2)) for j in range(1, 5))
    assert res.u_value == pytest.approx(oracle, rel=1e-15)
    assert res.u_value == pytest.approx(2.0 * math.exp(-4.0 * PI**2), rel=1e-6)


def test_periodization_even_in_xi():
    for spec in (poly(k=2), gauss(2.0), mq_c(c=2.0)):
        a = families.periodization(spec, 1.1, trunc_j=8).u_total
        b = families.periodization(spec, -1.1, trunc_j=8).u_total
        assert a == pytest.approx(b, rel=1e-14)


def test_periodization_increment_below_tail_bound():
    # growing the truncation moves the corrected sum by less than the bound
    for spec in (poly(k=1), poly(k=3, dim=2), gauss(1.0), mq_c(c=1.0)):
        xi = np.full(spec.dim, 0.7)
        r8 = families.periodization(spec, xi, trunc_j=8)
        r9 = families.periodization(spec, xi, trunc_j=9)
        assert abs(r9.u_total - r8.u_total) <= r8.tail_bound * (1.0 + 1e-9) + 1e-300


def test_truncation_error_names_required_j():
    with pytest.raises(TruncationError) as err:
        families.periodization(poly(k=3, dim=2), np.array([0.5, 0.5]), trunc_j=1)
    assert err.value.required_j and err.value.required_j > 1


# ----------------------------------------------------------------- M-ratio


def test_m_ratio_polyharmonic_example():
    got = families.m_ratio(poly(k=2), 1, 0.3 * PI)
    assert got == pytest.approx((0.3 / 2.3) ** 4, rel=1e-13)


def test_m_ratio_gaussian_example():
    assert families.m_ratio(gauss(1.0), 1, 0.0) == pytest.approx(
        math.exp(-4.0 * PI**2), rel=1e-12
    )


def test_m_ratio_polyharmonic_bound_exact():
    # strict inequality on the offset scan grid, no tolerance
    for k in (1, 2, 3):
        spec = poly(k=k)
        grid = families.base_cell_grid(spec, 101)
        for j in range(1, 11):
            bound = float(2 * j - 1) ** (-2.0 * k)
            for xi in grid:
                assert families.m_ratio(spec, j, float(xi)) <= bound


def test_m_ratio_rejects_zero_shift():
    with pytest.raises(DomainError):
        families.m_ratio(poly(k=1), 0, 0.5)


def test_ratio_consistent_with_direct_quotient():
    # log-space assembly against the direct quotient where representable
    cases = [(poly(k=3), 1), (gauss(2.0), 1), (mq_c(c=2.0, alpha=1.5), 1)]
    for spec, j in cases:
        for xi in (-2.5, -0.4, 0.9, 3.0):
            direct = families.phi_hat(spec, xi + 2.0 * PI * j) / families.phi_hat(spec, xi)
            assert families.m_ratio(spec, j, xi) == pytest.approx(direct, rel=1e-10)


# -------------------------------------------------------------- regularity


def test_report_polyharmonic_shift_maxima():
    specs = [poly(k=k) for k in (2, 3, 4)]
    rep = families.regularity_report(specs, j_max=4)
    maxima = rep.per_shift_max[1]
    for k, got in zip((2, 3, 4), maxima):
        assert got == pytest.approx((1.0 / 3.0) ** (2 * k), rel=1e-12)
    assert rep.r1_decreasing
    assert rep.r2_summable
    assert rep.h2_delta > 0.0


def test_report_gaussian_shift_maxima():
    specs = [gauss(a) for a in (1.0, 2.0, 4.0)]
    rep = families.regularity_report(specs, j_max=3)
    for a, got in zip((1.0, 2.0, 4.0), rep.per_shift_max[1]):
        assert got == pytest.approx(math.exp(-4.0 * PI**2 * a), rel=1e-10)
    assert rep.r1_decreasing


def test_report_mq_c_envelope_bound():
    specs = [mq_c(c=c, alpha=0.5) for c in (1.0, 2.0, 4.0)]
    rep = families.regularity_report(specs, j_max=6)
    for j, env in rep.r2_dominator.items():
        paper_style = (2 * j - 1) ** (-1.5) * math.exp(-2.0 * PI * (j - 1))
        assert env <= paper_style * (1.0 + 1e-9)
    assert rep.r1_decreasing and rep.r2_summable


def test_report_mq_alpha_excludes_smallest_from_tail():
    specs = [mq_alpha(a) for a in (0.5, 1.5, 3.5)]
    rep = families.regularity_report(specs, j_max=4)
    assert rep.r2_summable
    assert rep.notes  # smallest alpha excluded from the dominator tail


def test_violation_detection_flags_not_throws():
    flags = families.detect_ratio_violations({1: [0.5, 0.6, 0.4], 2: [0.1, 0.05]})
    assert len(flags) == 1 and "j=1" in flags[0]
    assert families.detect_ratio_violations({1: [0.5, 0.4]}) == []


def test_report_rejects_bad_sweeps():
    with pytest.raises(InvalidSpecError):
        families.regularity_report([poly(k=2), poly(k=2)])
    with pytest.raises(InvalidSpecError):
        families.regularity_report([poly(k=2), gauss(1.0)])


def test_h2_floor_gaussian_corner_value():
    # minimum of exp(-alpha xi^2) over the scan grid sits at the corners
    for a in (1.0, 3.0):
        assert families.h2_floor(gauss(a)) == pytest.approx(math.exp(-a * PI**2), rel=1e-12)
    assert families.h2_floor(gauss(2.0, dim=2)) == pytest.approx(
        math.exp(-2.0 * 2.0 * PI**2), rel=1e-12
    )


def test_decay_fit_slopes():
    assert families.decay_fit(poly(k=1)) == pytest.approx(-2.0, abs=1e-9)
    assert families.decay_fit(poly(k=4)) == pytest.approx(-8.0, abs=1e-9)
    assert families.decay_fit(gauss(1.0)) < -100.0
    assert families.decay_fit(mq_c(c=1.0)) < -10.0


def test_scan_grid_avoids_origin_for_singular_families():
    grid = families.base_cell_grid(poly(k=1), 101)
    assert np.all(grid != 0.0)
    assert np.max(np.abs(grid)) < PI
    full = families.base_cell_grid(gauss(1.0), 101)
    assert full[0] == -PI and full[-1] == PI


def test_default_trunc_j():
    assert families.default_trunc_j(poly(k=1)) == 16
    assert families.default_trunc_j(gauss(4.0)) == 4
    assert families.default_trunc_j(mq_alpha(7.5)) == math.ceil((7.5 + 40.0) / (2 * PI))


@settings(max_examples=40, deadline=None)
@given(
    k=st.integers(min_value=1, max_value=6),
    xi=st.floats(min_value=-PI, max_value=PI),
    j=st.integers(min_value=1, max_value=8),
)
def test_m_ratio_bound_property(k, xi, j):
    ratio = families.m_ratio(poly(k=k), j, xi)
    assert 0.0 <= ratio <= float(2 * j - 1) ** (-2.0 * k) * (1.0 + 1e-12)
