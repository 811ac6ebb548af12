"""Fundamental functions of cardinal interpolation.

The frequency-side object is

    ell(xi) = phihat(xi) / (phihat(xi) + u(xi)),   u(xi) = sum_{j!=0} phihat(xi - 2 pi j),

i.e. (2 pi)^{n/2} times the transform of the fundamental function. ell is
computed in the ratio form 1/(1 + u/phihat) on the base cell (finite even
where phihat blows up) and extended 2 pi periodically through the shared
reciprocal denominator P = 1/(phihat + u). The spatial function

    L(x) = (2 pi)^{-n} dxi^n sum_grid ell(xi) cos(x . xi)

is a cosine quadrature over a symmetric half-step offset grid, plus the
analytic window tail from cardinterp._tails where the family's transform
decays only algebraically. L satisfies L(k) = delta_{0,k} on the integer
lattice and |(1 + ||x||^{n+1}) L(x)| bounded.
"""

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import families, specfun
from ._backend import kernels
from ._tails import SNAP_EPS, polyharmonic_window_tail
from .errors import DomainError, GridError

_EVAL_MARGIN = 8  # eval domain stops this many dual periods short of aliasing


@dataclass(frozen=True)
class FrequencyGrid:
    """Uniform tensor grid over [-(2J+1) pi, (2J+1) pi]^dim.

    points_per_cell (even) fixes the step dxi = 2 pi / M, so shifted
    cells align with the base cell exactly by index arithmetic. The
    half-step offset keeps the node set symmetric and free of xi = 0.
    """

    dim: int
    cells_j: int
    points_per_cell: int
    offset: bool = True

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise GridError("frequency grids support dim 1 and 2")
        if self.cells_j < 1:
            raise GridError("cells_j must be >= 1")
        m = self.points_per_cell
        if m < 2 or m % 2 != 0:
            raise GridError("points_per_cell must be even and >= 2")
        if not self.offset:
            raise GridError(
                "only the half-step offset grid is supported; it avoids xi=0 "
                "and keeps the node set symmetric"
            )

    @property
    def dxi(self):
        return 2.0 * math.pi / self.points_per_cell

    @property
    def points_per_axis(self):
        return (2 * self.cells_j + 1) * self.points_per_cell

    def axis(self):
        n = self.points_per_axis
        return self.dxi * (np.arange(n) + 0.5 - n / 2.0)

    def base_slice(self):
        lo = self.cells_j * self.points_per_cell
        return slice(lo, lo + self.points_per_cell)

    def base_axis(self):
        return self.axis()[self.base_slice()]

    def base_points(self):
        """Base-cell mesh as an (M^dim, dim) array."""
        ax = self.base_axis()
        if self.dim == 1:
            return ax.reshape(-1, 1)
        return np.array(list(product(ax, repeat=self.dim)))


def default_grid(dim):
    """J=8, M=256 for dim 1; J=4, M=64 for dim 2 (cost grows like (JM)^n)."""
    if dim == 1:
        return FrequencyGrid(1, 8, 256)
    return FrequencyGrid(2, 4, 64)


@dataclass
class FundamentalFunction:
    """Sampled transform of one fundamental function plus its denominator.

    lhat_normalized holds ell = (2 pi)^{n/2} Lhat on the full grid;
    log_denominator and fold_tail_over_den live on the base mesh. The
    fold tail is sum_{window < ||m||_inf} phihat(xi + 2 pi m) / (phihat + u),
    the quantity that re-enters the quadrature at integer targets.
    """

    grid: FrequencyGrid
    family: families.FamilySpec
    lhat_normalized: np.ndarray
    log_denominator: np.ndarray
    fold_tail_over_den: np.ndarray
    tail_bound: float
    trunc_j: int

    _axis: np.ndarray = field(repr=False, default=None)

    def __post_init__(self):
        self._axis = self.grid.axis()

    @property
    def lhat_values(self):
        """Samples of Lhat itself (carrying the (2 pi)^{-n/2} factor)."""
        return self.lhat_normalized * (2.0 * math.pi) ** (-self.grid.dim / 2.0)

    @property
    def base_denominator(self):
        """Samples of P(xi) = 1/(phihat(xi) + u(xi)) on the base mesh."""
        return np.exp(-self.log_denominator)

    @property
    def eval_max(self):
        """Per-axis accuracy domain; beyond it dual-lattice aliasing kicks in."""
        return self.grid.points_per_cell / 2.0 - _EVAL_MARGIN


def _log_phi_on_radii(spec, radii, bessel_cfg):
    flat = np.asarray(radii, dtype=np.float64).ravel()
    with np.errstate(divide="ignore"):
        vals = families.log_phi_hat_radial(spec, flat, bessel_cfg)
    return np.asarray(vals).reshape(np.shape(radii))


def build_lhat(spec, grid=None, trunc_j=None, bessel_cfg=specfun.DEFAULT_CONFIG):
    """Construct the sampled transform for one family member.

    The base-cell ratio u/phihat is assembled shift-by-shift in log
    space (robust when phihat under- or overflows), the denominator's
    lattice sum is truncated at trunc_j (at least the window size, so
    the stored shifted cells exactly exhaust its terms) and completed
    with the analytic tail where the family decays algebraically.
    """
    if grid is None:
        grid = default_grid(spec.dim)
    if grid.dim != spec.dim:
        raise GridError(f"grid dim {grid.dim} != family dim {spec.dim}")
    if trunc_j is None:
        trunc_j = families.default_trunc_j(spec)
    trunc_j = max(trunc_j, grid.cells_j)

    base = grid.base_points()
    base_r = np.sqrt(np.sum(base**2, axis=-1))
    log_phi_base = _log_phi_on_radii(spec, base_r, bessel_cfg)

    shifts = families._shift_vectors(spec.dim, trunc_j)
    in_window = np.max(np.abs(shifts), axis=1) <= grid.cells_j
    diff = base[:, None, :] - 2.0 * math.pi * shifts[None, :, :]
    radii = np.sqrt(np.sum(diff * diff, axis=-1))
    log_phi_shift = _log_phi_on_radii(spec, radii, bessel_cfg)

    with np.errstate(over="ignore"):
        ratios = np.exp(log_phi_shift - log_phi_base[:, None])
    q_all = np.sum(ratios, axis=1)
    q_win = np.sum(np.where(in_window[None, :], ratios, 0.0), axis=1)

    tail_val = families.tail_value(spec, base, trunc_j)
    tail_bnd = families.tail_bound(spec, trunc_j, bessel_cfg)
    with np.errstate(over="ignore", invalid="ignore"):
        q_tail_val = np.where(tail_val > 0.0, tail_val * np.exp(-log_phi_base), 0.0)
    q_total = q_all + q_tail_val

    # log(phihat + u) = log phihat + log(1 + u/phihat)
    log_den = log_phi_base + np.log1p(q_total)
    ell_base = 1.0 / (1.0 + q_total)

    # beyond-window part of u over the denominator: feeds integer targets
    fold = (q_all - q_win + q_tail_val) / (1.0 + q_total)

    axis = grid.axis()
    if spec.dim == 1:
        log_phi_full = _log_phi_on_radii(spec, np.abs(axis), bessel_cfg)
        ell = np.exp(log_phi_full - np.tile(log_den, 2 * grid.cells_j + 1))
        ell[grid.base_slice()] = ell_base
    else:
        r_full = np.sqrt(axis[:, None] ** 2 + axis[None, :] ** 2)
        log_phi_full = _log_phi_on_radii(spec, r_full, bessel_cfg)
        m = grid.points_per_cell
        reps = 2 * grid.cells_j + 1
        log_den_2d = np.tile(log_den.reshape(m, m), (reps, reps))
        ell = np.exp(log_phi_full - log_den_2d)
        b = grid.base_slice()
        ell[b, b] = ell_base.reshape(m, m)

    # residual quadrature-tail estimate at non-integer targets
    den_inv = np.exp(-np.clip(log_den, -700.0, 700.0))
    cellw = (grid.dxi / (2.0 * math.pi)) ** spec.dim
    if spec.kind == families.POLYHARMONIC and spec.dim == 1:
        # corrected analytically; what is left is the accelerated-sum floor
        b0 = grid.cells_j + 1 + 3000
        s = 2.0 * spec.k
        resid = cellw * float(np.sum(den_inv)) * 2.0 * (2.0 * math.pi) ** (-s) \
            * b0 ** (1.0 - s) / (s - 1.0)
    else:
        resid = cellw * float(np.sum(fold) + tail_bnd * np.sum(den_inv))

    return FundamentalFunction(
        grid=grid,
        family=spec,
        lhat_normalized=ell,
        log_denominator=log_den,
        fold_tail_over_den=fold,
        tail_bound=float(resid),
        trunc_j=trunc_j,
    )


# ---------------------------------------------------------------------------
# evaluation


def _as_points(fund, xs):
    xs = np.asarray(xs, dtype=np.float64)
    n = fund.grid.dim
    if n == 1:
        return xs.reshape(-1)
    if xs.ndim == 1 and xs.shape[0] == n:
        return xs.reshape(1, n)
    return xs.reshape(-1, n)


def eval_L_batch(fund, xs):
    """L at a batch of targets (shape (npts,) for dim 1, (npts, dim) else)."""
    pts = _as_points(fund, xs)
    lim = fund.eval_max
    if np.any(np.abs(pts) > lim):
        raise DomainError(
            f"target beyond accuracy domain |x| <= {lim}; rebuild with more "
            f"points per cell to move the aliasing boundary out"
        )
    grid, spec = fund.grid, fund.family
    axis = fund._axis
    w = (grid.dxi / (2.0 * math.pi)) ** grid.dim
    base_ax = grid.base_axis()
    if grid.dim == 1:
        out = w * kernels.cos_transform(fund.lhat_normalized, axis, np.ascontiguousarray(pts))
        if spec.kind == families.POLYHARMONIC:
            out = out + polyharmonic_window_tail(
                pts, base_ax, np.exp(-fund.log_denominator),
                2 * spec.k, grid.cells_j, grid.dxi,
            )
        else:
            near = np.abs(pts - np.rint(pts)) <= SNAP_EPS
            if np.any(near):
                corr = w * kernels.cos_transform(
                    np.ascontiguousarray(fund.fold_tail_over_den),
                    base_ax, np.ascontiguousarray(pts[near]),
                )
                out[near] += corr
        return out

    m = grid.points_per_cell
    x1 = np.ascontiguousarray(pts[:, 0])
    x2 = np.ascontiguousarray(pts[:, 1])
    out = w * kernels.cos_bilinear_form(fund.lhat_normalized, axis, axis, x1, x2)
    near = np.all(np.abs(pts - np.rint(pts)) <= SNAP_EPS, axis=1)
    if np.any(near):
        fold2 = np.ascontiguousarray(fund.fold_tail_over_den.reshape(m, m))
        corr = w * kernels.cos_bilinear_form(
            fold2, base_ax, base_ax,
            np.ascontiguousarray(x1[near]), np.ascontiguousarray(x2[near]),
        )
        out[near] += corr
    return out


def eval_L(fund, x):
    """L at a single point."""
    return float(eval_L_batch(fund, np.atleast_1d(np.asarray(x, dtype=np.float64)))[0])


def integer_window(dim, radius):
    """All k in Z^dim with ||k||_inf <= radius, as an (count, dim) array."""
    rng = range(-radius, radius + 1)
    return np.array(list(product(rng, repeat=dim)), dtype=np.float64)


def cardinality_check(fund, window_radius):
    """max over ||k||_inf <= radius of |L(k) - delta_{0,k}|."""
    pts = integer_window(fund.grid.dim, window_radius)
    vals = eval_L_batch(fund, pts if fund.grid.dim > 1 else pts[:, 0])
    target = np.where(np.all(pts == 0.0, axis=1), 1.0, 0.0)
    return float(np.max(np.abs(vals - target)))


def decay_check(fund, sample_points):
    """sup over samples of (1 + ||x||^{n+1}) |L(x)|."""
    pts = _as_points(fund, sample_points)
    vals = eval_L_batch(fund, sample_points)
    norms = np.abs(pts) if fund.grid.dim == 1 else np.sqrt(np.sum(pts**2, axis=-1))
    weight = 1.0 + norms ** (fund.grid.dim + 1.0)
    return float(np.max(weight * np.abs(vals)))


def lhat_sup_distance_to_char(fund):
    """max |ell - chi_base| over grid points off the base-cell boundary ring.

    Points within one grid step of the boundary of [-pi, pi]^n are
    excluded: the limit object jumps there and the convergence is only
    almost-everywhere.
    """
    grid = fund.grid
    axis = fund._axis
    keep = np.abs(np.abs(axis) - math.pi) > grid.dxi
    if grid.dim == 1:
        chi = (np.abs(axis) < math.pi).astype(np.float64)
        return float(np.max(np.abs(fund.lhat_normalized - chi)[keep]))
    chi = ((np.abs(axis)[:, None] < math.pi) & (np.abs(axis)[None, :] < math.pi)).astype(np.float64)
    mask = keep[:, None] & keep[None, :]
    return float(np.max(np.abs(fund.lhat_normalized - chi)[mask]))


def shifted_mass(fund):
    """Mean over the base cell of sum_{0<||m||_inf<=J} ell(xi + 2 pi m)."""
    grid = fund.grid
    reps = 2 * grid.cells_j + 1
    m = grid.points_per_cell
    if grid.dim == 1:
        folded = fund.lhat_normalized.reshape(reps, m).sum(axis=0)
        base = fund.lhat_normalized[grid.base_slice()]
    else:
        folded = fund.lhat_normalized.reshape(reps, m, reps, m).sum(axis=(0, 2))
        b = grid.base_slice()
        base = fund.lhat_normalized[b, b]
    return float(np.mean(folded - base))


def shifted_domination_margin(fund):
    """min over stored shifted cells of M_m(xi) - ell(xi + 2 pi m).

    Nonnegative (up to roundoff) by construction: ell(xi + 2 pi m) =
    M_m(xi) * ell(xi) and ell <= 1 on the base cell.
    """
    grid, spec = fund.grid, fund.family
    axis = fund._axis
    reps = 2 * grid.cells_j + 1
    m = grid.points_per_cell
    base_r = np.sqrt(np.sum(grid.base_points() ** 2, axis=-1))
    log_base = _log_phi_on_radii(spec, base_r, specfun.DEFAULT_CONFIG)
    worst = math.inf
    if grid.dim == 1:
        ell = fund.lhat_normalized.reshape(reps, m)
        for cell in range(reps):
            if cell == grid.cells_j:
                continue
            ratio = np.exp(
                _log_phi_on_radii(spec, np.abs(axis.reshape(reps, m)[cell]), specfun.DEFAULT_CONFIG)
                - log_base
            )
            worst = min(worst, float(np.min(ratio - ell[cell])))
        return worst
    ell = fund.lhat_normalized.reshape(reps, m, reps, m)
    ax2 = axis.reshape(reps, m)
    logb = log_base.reshape(m, m)
    for c1 in range(reps):
        for c2 in range(reps):
            if c1 == grid.cells_j and c2 == grid.cells_j:
                continue
            rr = np.sqrt(ax2[c1][:, None] ** 2 + ax2[c2][None, :] ** 2)
            ratio = np.exp(_log_phi_on_radii(spec, rr, specfun.DEFAULT_CONFIG) - logb)
            worst = min(worst, float(np.min(ratio - ell[c1, :, c2, :])))
    return worst


def partition_defect(fund):
    """max over the base cell of |sum_{||m||_inf<=J} ell(xi+2 pi m) + fold - 1|."""
    grid = fund.grid
    reps = 2 * grid.cells_j + 1
    m = grid.points_per_cell
    if grid.dim == 1:
        folded = fund.lhat_normalized.reshape(reps, m).sum(axis=0)
    else:
        folded = fund.lhat_normalized.reshape(reps, m, reps, m).sum(axis=(0, 2)).ravel()
    return float(np.max(np.abs(folded + fund.fold_tail_over_den - 1.0)))


def derivative_probe(fund, order=2):
    """Crude finite-difference bound check on D^beta ell along each axis.

    Smoke-level only (order <= 2): returns the max absolute divided
    difference; useful to spot denominators losing smoothness.
    """
    if order not in (1, 2):
        raise DomainError("derivative probe supports order 1 and 2")
    grid = fund.grid
    h = grid.dxi
    ell = fund.lhat_normalized
    worst = 0.0
    for ax in range(grid.dim):
        d = np.diff(ell, n=order, axis=ax if grid.dim > 1 else 0) / h**order
        worst = max(worst, float(np.max(np.abs(d))))
    return worst
