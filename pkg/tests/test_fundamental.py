import math
from dataclasses import replace

import numpy as np
import pytest

from cardinterp import families, fundamental
from cardinterp.errors import DomainError, GridError

PI = math.pi


def poly(k=1, dim=1, **kw):
    return families.FamilySpec(families.POLYHARMONIC, dim=dim, k=k, **kw)


def gauss(alpha=1.0, dim=1):
    return families.FamilySpec(families.GAUSSIAN, dim=dim, alpha=alpha)


def mq_c(c=1.0, alpha=0.5):
    return families.FamilySpec(families.MULTIQUADRIC_C, alpha=alpha, c=c)


@pytest.fixture(scope="module")
def hat_kernel():
    return fundamental.build_lhat(poly(k=1))


# ------------------------------------------------------------------- grids


def test_grid_validation():
    with pytest.raises(GridError):
        fundamental.FrequencyGrid(1, 8, 255)     # odd points per cell
    with pytest.raises(GridError):
        fundamental.FrequencyGrid(1, 0, 256)
    with pytest.raises(GridError):
        fundamental.FrequencyGrid(3, 2, 16)
    with pytest.raises(GridError):
        fundamental.FrequencyGrid(1, 8, 256, offset=False)


def test_grid_geometry():
    g = fundamental.FrequencyGrid(1, 8, 256)
    ax = g.axis()
    assert ax.size == 17 * 256
    assert np.all(ax != 0.0)
    np.testing.assert_allclose(ax + ax[::-1], 0.0, atol=1e-12)  # symmetric nodes
    base = g.base_axis()
    assert base.size == 256
    assert np.max(np.abs(base)) < PI
    # index shift by one cell is an exact 2 pi translation
    np.testing.assert_allclose(ax[g.base_slice()][0] + 2 * PI,
                               ax[(g.cells_j + 1) * 256], rtol=0, atol=1e-12)


def test_grid_dim_mismatch():
    with pytest.raises(GridError):
        fundamental.build_lhat(poly(k=3, dim=2), fundamental.FrequencyGrid(1, 8, 256))


# ------------------------------------------------------------------- build


def test_polyharmonic_k1_transform_closed_form(hat_kernel):
    # ell(xi) = 4 sin^2(xi/2) / xi^2 everywhere (order-2 spline transform)
    ax = hat_kernel.grid.axis()
    expect = 4.0 * np.sin(ax / 2.0) ** 2 / ax**2
    np.testing.assert_allclose(hat_kernel.lhat_normalized, expect, rtol=1e-10)


def test_transparent_bound_all_families():
    for spec in (poly(k=1), poly(k=4), gauss(4.0), mq_c(c=2.0),
                 mq_c(c=1.0, alpha=-1.5), poly(k=3, dim=2)):
        fund = fundamental.build_lhat(spec)
        ell = fund.lhat_normalized
        assert np.all(ell >= 0.0)
        assert np.all(ell <= 1.0 + 1e-12)
        assert np.all((2.0 * PI) ** (fund.grid.dim / 2.0) * fund.lhat_values <= 1.0 + 1e-12)


def test_transform_even_under_reflection(hat_kernel):
    ell = hat_kernel.lhat_normalized
    np.testing.assert_allclose(ell, ell[::-1], rtol=0, atol=1e-15)


def test_gaussian_transform_at_pi_half():
    # at xi = pi the nearest shifted copy equals the center: ell <= 1/2
    fund = fundamental.build_lhat(gauss(1.0))
    ax = fund.grid.axis()
    i = int(np.argmin(np.abs(ax - PI)))
    for idx in (i - 1, i):  # straddle pi on the offset grid
        xi = ax[idx]
        terms = np.exp(-((xi - 2.0 * PI * np.arange(-12, 13)) ** 2))
        expect = math.exp(-xi * xi) / np.sum(terms)
        assert fund.lhat_normalized[idx] == pytest.approx(expect, rel=1e-12)
    assert fund.lhat_normalized[i] <= 0.5 + 1e-12


def test_partition_identity(hat_kernel):
    assert fundamental.partition_defect(hat_kernel) <= 1e-12
    for spec in (gauss(2.0), mq_c(c=1.0)):
        fund = fundamental.build_lhat(spec)
        assert fundamental.partition_defect(fund) <= max(1e-12, 10 * fund.tail_bound)


def test_shifted_cell_domination():
    for spec in (poly(k=2), gauss(1.0), mq_c(c=1.0)):
        fund = fundamental.build_lhat(spec)
        assert fundamental.shifted_domination_margin(fund) >= -1e-12


def test_scale_invariance():
    base = fundamental.build_lhat(poly(k=2))
    scaled = fundamental.build_lhat(replace(poly(k=2), scale=7.25))
    np.testing.assert_allclose(
        scaled.lhat_normalized, base.lhat_normalized, rtol=1e-12
    )
    xs = np.linspace(-3, 3, 41)
    np.testing.assert_allclose(
        fundamental.eval_L_batch(scaled, xs),
        fundamental.eval_L_batch(base, xs),
        rtol=1e-12, atol=1e-15,
    )


# ---------------------------------------------------------------- eval / L


def test_hat_function_recovery(hat_kernel):
    xs = np.linspace(-3.0, 3.0, 601)
    vals = fundamental.eval_L_batch(hat_kernel, xs)
    hat = np.maximum(0.0, 1.0 - np.abs(xs))
    assert np.max(np.abs(vals - hat)) <= 1e-6


def test_eval_even(hat_kernel):
    for fund in (hat_kernel, fundamental.build_lhat(gauss(2.0))):
        for x in (0.3, 1.7, 2.5):
            assert fundamental.eval_L(fund, x) == pytest.approx(
                fundamental.eval_L(fund, -x), rel=0, abs=1e-14
            )


def test_eval_domain_guard(hat_kernel):
    with pytest.raises(DomainError):
        fundamental.eval_L(hat_kernel, hat_kernel.eval_max + 1.0)


def test_cardinality_examples():
    assert fundamental.cardinality_check(fundamental.build_lhat(poly(k=1)), 5) <= 1e-6
    assert fundamental.cardinality_check(fundamental.build_lhat(gauss(4.0)), 5) <= 1e-6


def test_quadrature_self_consistency():
    # doubling the per-cell resolution barely moves values; growing the
    # window moves them less than the reported tail bound
    probes = np.linspace(-4.0, 4.0, 33)
    for spec in (poly(k=2), gauss(1.0)):
        f1 = fundamental.build_lhat(spec, fundamental.FrequencyGrid(1, 8, 256))
        f2 = fundamental.build_lhat(spec, fundamental.FrequencyGrid(1, 8, 512))
        d_res = np.max(np.abs(fundamental.eval_L_batch(f1, probes)
                              - fundamental.eval_L_batch(f2, probes)))
        assert d_res <= 1e-6
        f3 = fundamental.build_lhat(spec, fundamental.FrequencyGrid(1, 10, 256))
        d_win = np.max(np.abs(fundamental.eval_L_batch(f1, probes)
                              - fundamental.eval_L_batch(f3, probes)))
        assert d_win <= max(f1.tail_bound * 10.0, 1e-9)


def test_decay_check_polyharmonic(hat_kernel):
    xs = np.linspace(-8.0, 8.0, 801)
    sup = fundamental.decay_check(hat_kernel, xs)
    assert sup == pytest.approx(1.0, abs=1e-9)  # hat: attained at x = 0
    assert fundamental.decay_check(hat_kernel, np.array([0.0])) == pytest.approx(1.0, abs=1e-9)


def test_char_distance_decreases_along_sweeps():
    for specs in ([gauss(a) for a in (1.0, 2.0, 4.0, 8.0, 16.0)],
                  [poly(k=k) for k in (2, 4, 8)]):
        vals = [fundamental.lhat_sup_distance_to_char(fundamental.build_lhat(s))
                for s in specs]
        assert all(a > b for a, b in zip(vals, vals[1:]))


def test_char_distance_matches_denominator_ratio():
    # at any interior grid point, 1 - ell = u/(phihat + u)
    fund = fundamental.build_lhat(gauss(1.0))
    grid = fund.grid
    ell_base = fund.lhat_normalized[grid.base_slice()]
    xi = grid.base_axis()
    u = np.array([families.periodization(gauss(1.0), x, 8).u_total for x in xi[:8]])
    phi = np.exp([families.log_phi_hat_radial(gauss(1.0), abs(x)) for x in xi[:8]])
    np.testing.assert_allclose(1.0 - ell_base[:8], u / (phi + u), rtol=1e-10)


def test_fold_tail_nonnegative(hat_kernel):
    assert np.all(hat_kernel.fold_tail_over_den >= 0.0)
    assert hat_kernel.tail_bound < 1e-8


def test_derivative_probe_finite(hat_kernel):
    assert math.isfinite(fundamental.derivative_probe(hat_kernel, 1))
    assert math.isfinite(fundamental.derivative_probe(hat_kernel, 2))
    with pytest.raises(DomainError):
        fundamental.derivative_probe(hat_kernel, 3)


# -------------------------------------------------------------------- dim 2


def test_dim2_build_and_cardinality_smoke():
    fund = fundamental.build_lhat(poly(k=3, dim=2))
    ell = fund.lhat_normalized
    assert ell.shape == (9 * 64, 9 * 64)
    assert np.all(ell >= 0.0) and np.all(ell <= 1.0 + 1e-12)
    assert fundamental.cardinality_check(fund, 2) <= 1e-4
    assert fundamental.partition_defect(fund) <= 1e-6


def test_dim2_eval_symmetry():
    fund = fundamental.build_lhat(gauss(2.0, dim=2))
    a = fundamental.eval_L(fund, np.array([0.5, 1.25]))
    b = fundamental.eval_L(fund, np.array([-0.5, 1.25]))
    c = fundamental.eval_L(fund, np.array([1.25, 0.5]))
    assert a == pytest.approx(b, abs=1e-14)
    assert a == pytest.approx(c, abs=1e-12)
