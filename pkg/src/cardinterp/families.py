"""Interpolator families and their frequency-side machinery.

Each family is defined through a positive radial transform phihat, kept
only up to positive constant factors (those cancel in the fundamental
function, which is invariant under phihat -> lambda*phihat):

    polyharmonic       ||xi||^{-2k}
    gaussian           exp(-alpha ||xi||^2)
    multiquadric       (||xi||/c)^{-alpha-n/2} K_{n/2+alpha}(c ||xi||)

The module evaluates phihat and log phihat, the shifted-lattice sum
u(xi) = sum_{j != 0} phihat(xi - 2 pi j) with an analytic tail, the
ratios M_j(xi) = phihat(xi + 2 pi j)/phihat(xi), and regularity reports
(positivity floor, decay fit, per-shift ratio maxima and a summable
dominator) for parameter sweeps.
"""

import math
from dataclasses import dataclass, replace
from itertools import product

import numpy as np
from scipy.special import zeta as hurwitz_zeta

from . import specfun
from .errors import DomainError, InvalidSpecError, TruncationError

POLYHARMONIC = "polyharmonic"
GAUSSIAN = "gaussian"
MULTIQUADRIC_ALPHA = "multiquadric-alpha"  # alpha sweeps, c fixed
MULTIQUADRIC_C = "multiquadric-c"          # c sweeps, alpha fixed

KINDS = (POLYHARMONIC, GAUSSIAN, MULTIQUADRIC_ALPHA, MULTIQUADRIC_C)

# Parameter caps keep every intermediate representable in float64.
_MAX_K = 20
_MAX_MQ_ALPHA = 30.0
_MAX_C = 200.0
_MAX_GAUSS_ALPHA = 1e6


def _is_positive_integer(x, tol=1e-9):
    return x > 0.5 and abs(x - round(x)) < tol


@dataclass(frozen=True)
class FamilySpec:
    """One interpolator: family kind, dimension and parameters.

    decay_exponent is the algebraic decay order n+eps used by generic
    tail bounds; it defaults to 2k for the polyharmonic family and to
    n+1 (a conservative floor) for the exponentially decaying ones.
    scale multiplies phihat by a positive constant; it exists to make
    the normalization invariance testable and defaults to 1.
    """

    kind: str
    dim: int = 1
    k: int = 0
    alpha: float = 0.0
    c: float = 1.0
    decay_exponent: float = 0.0
    scale: float = 1.0

    def __post_init__(self):
        n = self.dim
        if self.kind not in KINDS:
            raise InvalidSpecError(f"unknown family kind {self.kind!r}")
        if not (isinstance(n, (int, np.integer)) and 1 <= n <= 3):
            raise InvalidSpecError(f"dim must be an integer in [1, 3], got {n}")
        if self.scale <= 0 or not math.isfinite(self.scale):
            raise InvalidSpecError("scale must be a positive finite number")
        if self.kind == POLYHARMONIC:
            if not isinstance(self.k, (int, np.integer)) or self.k < 1:
                raise InvalidSpecError("polyharmonic order k must be a positive integer")
            if n > 1 and self.k < n + 1:
                raise InvalidSpecError(f"polyharmonic with dim={n} requires k >= {n + 1}")
            if self.k > _MAX_K:
                raise InvalidSpecError(f"polyharmonic k > {_MAX_K} unsupported")
        elif self.kind == GAUSSIAN:
            if not (1.0 <= self.alpha <= _MAX_GAUSS_ALPHA):
                raise InvalidSpecError("gaussian requires alpha >= 1")
        elif self.kind == MULTIQUADRIC_ALPHA:
            if not (0.5 <= self.alpha <= _MAX_MQ_ALPHA):
                raise InvalidSpecError(
                    f"multiquadric-alpha requires alpha in [1/2, {_MAX_MQ_ALPHA}]"
                )
            if _is_positive_integer(self.alpha):
                raise InvalidSpecError("multiquadric alpha must keep distance from 1,2,3,...")
            if not (0.0 < self.c <= _MAX_C):
                raise InvalidSpecError("multiquadric-alpha requires a fixed c > 0")
        elif self.kind == MULTIQUADRIC_C:
            if not (1.0 <= self.c <= _MAX_C):
                raise InvalidSpecError("multiquadric-c requires c >= 1")
            a = self.alpha
            lower_set = a <= -(2 * n + 1) / 2.0
            upper_set = a >= 0.5 and not _is_positive_integer(a)
            if not (lower_set or upper_set):
                raise InvalidSpecError(
                    f"multiquadric-c with dim={n} requires alpha <= -{(2 * n + 1)}/2 "
                    f"or alpha >= 1/2 excluding positive integers"
                )
            if abs(a) > _MAX_MQ_ALPHA:
                raise InvalidSpecError(f"|alpha| > {_MAX_MQ_ALPHA} unsupported")
        if self.decay_exponent == 0.0:
            object.__setattr__(self, "decay_exponent", self._default_decay())
        if self.decay_exponent <= self.dim:
            raise InvalidSpecError("decay_exponent must exceed dim")

    def _default_decay(self):
        if self.kind == POLYHARMONIC:
            return 2.0 * self.k
        return self.dim + 1.0

    @property
    def singular_at_origin(self):
        """True when phihat(0) is undefined (blows up or needs a limit)."""
        return self.kind != GAUSSIAN

    @property
    def bessel_order(self):
        return self.dim / 2.0 + self.alpha

    def parameter(self):
        """The value that grows along this family's sweep axis."""
        if self.kind == POLYHARMONIC:
            return float(self.k)
        if self.kind in (GAUSSIAN, MULTIQUADRIC_ALPHA):
            return float(self.alpha)
        return float(self.c)

    def with_parameter(self, value):
        if self.kind == POLYHARMONIC:
            return replace(self, k=int(round(value)))
        if self.kind in (GAUSSIAN, MULTIQUADRIC_ALPHA):
            return replace(self, alpha=float(value))
        return replace(self, c=float(value))


def default_trunc_j(spec):
    """Shifted-lattice truncation radius for the periodization."""
    if spec.kind == POLYHARMONIC:
        return 16
    if spec.kind == GAUSSIAN:
        return 4
    j = math.ceil((abs(spec.alpha) * spec.dim + 40.0) / (2.0 * math.pi))
    return max(4, j)


# ---------------------------------------------------------------------------
# transforms


def _points(spec, xi):
    xi = np.asarray(xi, dtype=np.float64)
    if xi.ndim == 0:
        xi = xi.reshape(1)
    if spec.dim == 1 and (xi.ndim == 1 or xi.shape[-1] != 1):
        xi = xi.reshape(-1, 1)
    if xi.shape[-1] != spec.dim:
        raise DomainError(f"point has dim {xi.shape[-1]}, family has dim {spec.dim}")
    return xi.reshape(-1, spec.dim)


def _radii(spec, xi):
    pts = _points(spec, xi)
    return np.sqrt(np.sum(pts * pts, axis=-1))


def log_phi_hat_radial(spec, r, bessel_cfg=specfun.DEFAULT_CONFIG):
    """log phihat at radius r >= 0 (vectorized); -inf/+inf at r=0 as a limit."""
    r = np.asarray(r, dtype=np.float64)
    scalar = r.ndim == 0
    r = np.atleast_1d(r)
    out = np.empty(r.shape)
    if spec.kind == GAUSSIAN:
        out = -spec.alpha * r * r
    elif spec.kind == POLYHARMONIC:
        with np.errstate(divide="ignore"):
            out = -2.0 * spec.k * np.log(r)
    else:
        power = -spec.alpha - spec.dim / 2.0
        out = np.full(r.shape, np.inf if power < 0 else -np.inf)
        pos = r > 0.0
        if np.any(pos):
            rp = r[pos]
            logk = specfun.log_bessel_k_batch(spec.bessel_order, spec.c * rp, bessel_cfg)
            out[pos] = power * (np.log(rp) - math.log(spec.c)) + logk
    out = out + math.log(spec.scale)
    return float(out[0]) if scalar else out


def phi_hat_radial(spec, r, bessel_cfg=specfun.DEFAULT_CONFIG):
    return np.exp(log_phi_hat_radial(spec, r, bessel_cfg))


def phi_hat(spec, xi):
    """The constant-normalized transform at a frequency point.

    Strictly positive; raises DomainError at the origin for the
    families whose transform is singular there.
    """
    r = _radii(spec, xi)
    if spec.singular_at_origin and np.any(r == 0.0):
        raise DomainError(f"{spec.kind} transform undefined at xi = 0")
    val = phi_hat_radial(spec, r)
    return float(val[0]) if val.size == 1 else val


def log_phi_hat(spec, xi):
    """log phi_hat, assembled without underflow (scaled Bessel route)."""
    r = _radii(spec, xi)
    if spec.singular_at_origin and np.any(r == 0.0):
        raise DomainError(f"{spec.kind} transform undefined at xi = 0")
    val = np.atleast_1d(log_phi_hat_radial(spec, r))
    return float(val[0]) if val.size == 1 else val


def m_ratio(spec, j, xi):
    """M_j(xi) = phihat(xi + 2 pi j)/phihat(xi), assembled in log space."""
    j = np.atleast_1d(np.asarray(j, dtype=np.float64))
    if spec.dim == 1 and j.shape == (1,):
        j = j.reshape(1)
    if not np.any(j):
        raise DomainError("m_ratio requires a nonzero lattice vector")
    xi = np.atleast_1d(np.asarray(xi, dtype=np.float64))
    shifted = xi + 2.0 * math.pi * j
    num = log_phi_hat_radial(spec, float(np.sqrt(np.sum(shifted**2))))
    den = log_phi_hat_radial(spec, float(np.sqrt(np.sum(xi**2))))
    if num == den:
        return 1.0
    return float(np.exp(num - den))


# ---------------------------------------------------------------------------
# lattice periodization


def _shift_vectors(dim, trunc_j):
    """All j in Z^dim with 0 < ||j||_inf <= trunc_j."""
    rng = range(-trunc_j, trunc_j + 1)
    return np.array([j for j in product(rng, repeat=dim) if any(j)], dtype=np.float64)


def lattice_sum_batch(spec, points, trunc_j, bessel_cfg=specfun.DEFAULT_CONFIG):
    """u(xi) = sum over 0 < ||j||_inf <= trunc_j of phihat(xi - 2 pi j).

    points: array (npts, dim) in the closed base cell. Individual terms
    that underflow to zero are harmless; they are covered by the bound.
    """
    pts = np.asarray(points, dtype=np.float64).reshape(-1, spec.dim)
    shifts = _shift_vectors(spec.dim, trunc_j)
    diff = pts[:, None, :] - 2.0 * math.pi * shifts[None, :, :]
    radii = np.sqrt(np.sum(diff * diff, axis=-1))
    vals = phi_hat_radial(spec, radii.ravel(), bessel_cfg).reshape(radii.shape)
    return np.sum(vals, axis=1)


def _poly_tail_1d(spec, xi, trunc_j):
    """Exact sum_{|j| > J} |xi - 2 pi j|^{-2k} via Hurwitz zeta (dim 1)."""
    q = np.asarray(xi, dtype=np.float64).reshape(-1) / (2.0 * math.pi)
    s = 2.0 * spec.k
    tail = (2.0 * math.pi) ** (-s) * (
        hurwitz_zeta(s, trunc_j + 1.0 + q) + hurwitz_zeta(s, trunc_j + 1.0 - q)
    )
    return spec.scale * tail


def _ring_min_radius(dim, ell):
    # any ||j||_inf = ell shift keeps ||xi - 2 pi j|| >= 2 pi ell - pi sqrt(dim)
    return 2.0 * math.pi * ell - math.pi * math.sqrt(dim)


def _ring_count(dim, ell):
    return (2 * ell + 1) ** dim - (2 * ell - 1) ** dim


_ZETA_REL = 1e-13  # relative accuracy credited to scipy's Hurwitz zeta


def _poly_ring_bound(spec, trunc_j):
    """Closed-form bound on the discarded polyharmonic shifted-lattice sum.

    Every shift on ring ell sits at radius >= 2 pi (ell - sqrt(n)/2)
    from any base-cell point; ring counts are expanded in powers of
    (ell - a) so the sum collapses to Hurwitz zetas.
    """
    n, s = spec.dim, 2.0 * spec.k
    a = math.sqrt(n) / 2.0
    q = trunc_j + 1.0 - a
    zs = lambda shift: float(hurwitz_zeta(s - shift, q))
    if n == 1:
        total = 2.0 * zs(0)
    elif n == 2:
        total = 8.0 * (zs(1) + a * zs(0))
    else:
        total = 24.0 * (zs(2) + 2.0 * a * zs(1) + a * a * zs(0)) + 2.0 * zs(0)
    return spec.scale * (2.0 * math.pi) ** (-s) * total


def tail_bound(spec, trunc_j, bessel_cfg=specfun.DEFAULT_CONFIG):
    """Rigorous overestimate of the discarded tail net of tail_value.

    Families whose tail_value is exact (1-D polyharmonic) are charged
    only the accuracy of the zeta evaluation; everywhere else this
    bounds the full discarded sum_{||j||_inf > J} phihat via ring
    envelopes (phihat is radially decreasing for every supported spec).
    """
    n = spec.dim
    if spec.kind == POLYHARMONIC:
        bound = _poly_ring_bound(spec, trunc_j)
        if n == 1:
            return _ZETA_REL * bound + 5e-324
        return bound
    if spec.kind == GAUSSIAN:
        t1 = _ring_count(n, trunc_j + 1) * math.exp(
            -spec.alpha * _ring_min_radius(n, trunc_j + 1) ** 2
        )
        return spec.scale * 2.0 * t1  # ratio between rings far below 1/2
    # multiquadric: exponential Bessel decay, measured ring ratio with margin
    terms = []
    for ell in range(trunc_j + 1, trunc_j + 4):
        r = _ring_min_radius(n, ell)
        val = math.exp(log_phi_hat_radial(spec, r, bessel_cfg))
        terms.append(_ring_count(n, ell) * val)
    ratio = terms[-1] / terms[-2] if terms[-2] > 0 else 0.0
    if ratio >= 0.5:
        raise TruncationError(
            f"ring decay too slow at trunc_j={trunc_j} for {spec.kind}",
            required_j=2 * trunc_j,
        )
    return terms[0] + terms[1] + terms[2] / (1.0 - ratio)


def tail_value(spec, xi, trunc_j):
    """Analytic value of the discarded tail (exact for dim-1 polyharmonic).

    Families with exponential decay return 0; their tail_bound is far
    below every tolerance used downstream.
    """
    pts = np.asarray(xi, dtype=np.float64).reshape(-1, spec.dim)
    if spec.kind == POLYHARMONIC and spec.dim == 1:
        return _poly_tail_1d(spec, pts[:, 0], trunc_j)
    return np.zeros(pts.shape[0])


@dataclass(frozen=True)
class PeriodizationResult:
    u_value: float        # partial sum over 0 < ||j||_inf <= trunc_j
    tail_value: float     # analytic correction for the discarded shifts
    tail_bound: float     # bound on the discarded sum net of tail_value

    @property
    def u_total(self):
        return self.u_value + self.tail_value


def periodization(spec, xi, trunc_j, rel_tol=1e-6):
    """Shifted-lattice sum at one base-cell point with tail control.

    Raises TruncationError when the post-correction bound exceeds
    rel_tol relative to phihat(xi) + u(xi).
    """
    if trunc_j < 1:
        raise TruncationError("trunc_j must be >= 1", required_j=1)
    pts = np.asarray(xi, dtype=np.float64).reshape(1, spec.dim)
    if np.any(np.abs(pts) > math.pi * (1.0 + 1e-12)):
        raise DomainError("xi must lie in the closed base cell [-pi, pi]^n")
    u = float(lattice_sum_batch(spec, pts, trunc_j)[0])
    tval = float(tail_value(spec, pts, trunc_j)[0])
    tbound = float(tail_bound(spec, trunc_j))
    phival = phi_hat_radial(spec, float(np.sqrt(np.sum(pts**2))))
    denom = float(phival) + u + tval
    if math.isfinite(denom) and tbound > rel_tol * denom:
        need = trunc_j
        while need < 4096:
            need *= 2
            if float(tail_bound(spec, need)) <= rel_tol * denom:
                break
        raise TruncationError(
            f"trunc_j={trunc_j} leaves relative tail {tbound / denom:.2e} > {rel_tol:g}; "
            f"need trunc_j >= {need}",
            required_j=need,
        )
    return PeriodizationResult(u, tval, tbound)


# ---------------------------------------------------------------------------
# regularity reports


def base_cell_grid(spec, n_points=101, offset=None):
    """1-D base-cell scan points; singular families get an offset grid.

    Half a step for even counts, a quarter step for odd ones: either
    way the grid contains neither the origin nor the cell corners.
    """
    if offset is None:
        offset = spec.singular_at_origin
    if offset:
        h = 2.0 * math.pi / n_points
        shift = 0.5 if n_points % 2 == 0 else 0.25
        return -math.pi + h * (np.arange(n_points) + shift)
    return np.linspace(-math.pi, math.pi, n_points)


def h2_floor(spec, n_points=101):
    """Observed minimum of phihat over a base-cell grid (the (H2) delta)."""
    if spec.dim == 1:
        grid = base_cell_grid(spec, n_points).reshape(-1, 1)
    else:
        ax = base_cell_grid(spec, n_points=33, offset=spec.singular_at_origin)
        grid = np.array(list(product(ax, repeat=spec.dim)))
    radii = np.sqrt(np.sum(grid * grid, axis=-1))
    return float(np.min(phi_hat_radial(spec, radii)))


def decay_fit(spec, lo=10 * math.pi, hi=100 * math.pi, n_points=64):
    """Slope of log phihat against log ||xi|| along a ray in [lo, hi]."""
    r = np.geomspace(lo, hi, n_points)
    y = log_phi_hat_radial(spec, r)
    slope = np.polyfit(np.log(r), y, 1)[0]
    return float(slope)


def _envelope_tail(specs, j_max):
    """Analytic bound on sum_{j > j_max} of the parameter-uniform ratio envelope."""
    kind = specs[0].kind
    if kind == POLYHARMONIC:
        s = 2.0 * min(sp.k for sp in specs)
        return float(2.0**-s * hurwitz_zeta(s, j_max + 0.5)), None
    if kind == GAUSSIAN:
        t = math.exp(-4.0 * math.pi**2 * (j_max + 1) * j_max)
        return 2.0 * t, None
    if kind == MULTIQUADRIC_C:
        a = specs[0].alpha
        t = (2 * (j_max + 1) - 1) ** (-(a + 1.0)) * math.exp(-2.0 * math.pi * j_max)
        return t / (1.0 - math.exp(-2.0 * math.pi)), None
    # alpha sweep: the envelope (2j-1)^{-(alpha+1/2)} is summable only for
    # alpha > 1/2, so the smallest parameter may be excluded (large-alpha
    # domination suffices for the limit statements).
    alphas = sorted(sp.alpha for sp in specs)
    usable = [a for a in alphas if a + 0.5 > 1.0 + 1e-9]
    if not usable:
        return math.inf, "no parameter with alpha + 1/2 > 1; dominator not summable"
    s = usable[0] + 0.5
    note = None
    if usable[0] != alphas[0]:
        note = f"dominator tail uses alpha >= {usable[0]} (smallest alpha excluded)"
    return float(2.0**-s * hurwitz_zeta(s, j_max + 0.5)), note


def detect_ratio_violations(per_shift_max):
    """Flag shifts whose ratio maxima fail to decrease along the sweep."""
    violations = []
    for j, series in per_shift_max.items():
        for a, b in zip(series, series[1:]):
            if b > a * (1.0 + 1e-12):
                violations.append(f"ratio max for j={j} increased along the sweep")
                break
    return violations


@dataclass
class RegularityReport:
    kind: str
    dim: int
    family_params: list
    h2_delta: float
    h2_delta_per_param: list
    h4_fit: list
    r1_max_ratio: list
    per_shift_max: dict        # j -> list of maxima along the sweep
    r1_decreasing: bool
    r1_violations: list
    r2_dominator: dict         # j -> parameter-uniform envelope
    r2_partial_sum: float
    r2_tail_bound: float
    r2_summable: bool
    notes: list

    def to_dict(self):
        return {
            "kind": self.kind,
            "dim": self.dim,
            "family_params": list(self.family_params),
            "h2_delta": self.h2_delta,
            "h2_delta_per_param": list(self.h2_delta_per_param),
            "h4_fit": list(self.h4_fit),
            "r1_max_ratio": list(self.r1_max_ratio),
            "per_shift_max": {str(j): v for j, v in self.per_shift_max.items()},
            "r1_decreasing": self.r1_decreasing,
            "r1_violations": self.r1_violations,
            "r2_dominator": {str(j): v for j, v in self.r2_dominator.items()},
            "r2_partial_sum": self.r2_partial_sum,
            "r2_tail_bound": self.r2_tail_bound,
            "r2_summable": self.r2_summable,
            "notes": self.notes,
        }


def regularity_report(specs, xi_grid=None, j_max=10):
    """Scan a parameter sweep for the regular-family conditions.

    specs must share kind and dim with strictly increasing parameters.
    The scan runs over the nonnegative half-cell [0, pi] (for dim 1)
    with positive shifts; by radial symmetry (j, xi) ~ (-j, -xi) this
    covers both signs while excluding the corner xi = -pi where the
    j=1 ratio equals its bound identically in the parameter.
    """
    if len(specs) < 1:
        raise InvalidSpecError("need at least one spec")
    kind, dim = specs[0].kind, specs[0].dim
    if any(sp.kind != kind or sp.dim != dim for sp in specs):
        raise InvalidSpecError("all specs must share kind and dim")
    params = [sp.parameter() for sp in specs]
    if any(b <= a for a, b in zip(params, params[1:])):
        raise InvalidSpecError("family parameters must be strictly increasing")
    if dim > 2:
        raise InvalidSpecError("regularity reports support dim <= 2")

    if xi_grid is None:
        if dim == 1:
            xi_grid = np.linspace(0.0, math.pi, 65).reshape(-1, 1)
        else:
            ax = np.linspace(0.0, math.pi, 9)
            xi_grid = np.array(list(product(ax, repeat=dim)))
    else:
        xi_grid = np.asarray(xi_grid, dtype=np.float64).reshape(-1, dim)

    if dim == 1:
        shifts = [(j,) for j in range(1, j_max + 1)]
    else:
        shifts = [j for j in product(range(-j_max, j_max + 1), repeat=dim)
                  if any(j) and max(abs(c) for c in j) <= j_max and j >= tuple(-x for x in j)]

    base_r = np.sqrt(np.sum(xi_grid**2, axis=-1))
    per_shift = {}
    sum_max = []
    for sp in specs:
        with np.errstate(divide="ignore"):
            logden = log_phi_hat_radial(sp, base_r)
        total = np.zeros(xi_grid.shape[0])
        for j in shifts:
            shifted = xi_grid + 2.0 * math.pi * np.asarray(j, dtype=np.float64)
            lognum = log_phi_hat_radial(sp, np.sqrt(np.sum(shifted**2, axis=-1)))
            ratios = np.where(lognum == logden, 1.0, np.exp(lognum - logden))
            # mirrored shift (covers negative j for the ratio sum)
            mirrored = xi_grid - 2.0 * math.pi * np.asarray(j, dtype=np.float64)
            logm = log_phi_hat_radial(sp, np.sqrt(np.sum(mirrored**2, axis=-1)))
            total += ratios + np.where(logm == logden, 1.0, np.exp(logm - logden))
            per_shift.setdefault(j if dim > 1 else j[0], []).append(float(np.max(ratios)))
        sum_max.append(float(np.max(total)))

    violations = detect_ratio_violations(per_shift)

    dominator = {j: max(series) for j, series in per_shift.items()}
    partial = float(sum(dominator.values()))
    tail, note = _envelope_tail(specs, j_max)
    notes = [note] if note else []

    return RegularityReport(
        kind=kind,
        dim=dim,
        family_params=params,
        h2_delta=float(min(h2_floor(sp) for sp in specs)),
        h2_delta_per_param=[h2_floor(sp) for sp in specs],
        h4_fit=[decay_fit(sp) for sp in specs],
        r1_max_ratio=sum_max,
        per_shift_max=per_shift,
        r1_decreasing=not violations,
        r1_violations=violations,
        r2_dominator=dominator,
        r2_partial_sum=partial,
        r2_tail_bound=float(tail),
        r2_summable=math.isfinite(tail),
        notes=notes,
    )
