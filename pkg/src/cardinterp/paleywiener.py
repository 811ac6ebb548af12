"""Closed-form band-limited test functions with exact norms.

All three kinds have spectrum inside [-pi, pi]^n by construction, exact
pointwise evaluation, and exact lattice data, so recovery experiments
measure interpolation error only, never synthesis error.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InvalidSpecError
from .interpolation import LatticeData

TENSOR_SINC = "sinc"
FEJER_TRIANGLE = "fejer"
FINITE_SINC_COMBO = "combo"

KINDS = (TENSOR_SINC, FEJER_TRIANGLE, FINITE_SINC_COMBO)

# l2 norm of the Fejer-kernel sample sequence {f(j)}: f(0)=1 and
# f(j) = 4/(pi j)^2 at odd j, so the squared norm is
# 1 + 32/pi^4 * sum_{odd j>0} j^-4 = 1 + 32/pi^4 * pi^4/96 = 4/3.
# Frozen here; the quadrature oracle in the tests re-derives it.
FEJER_SAMPLE_L2 = 2.0 / math.sqrt(3.0)


@dataclass(frozen=True)
class BandlimitedFunction:
    """A Paley-Wiener test function.

    combo_coeffs lists (lattice point, coefficient) pairs for the
    finite sinc combination sum_m c_m sinc(x - j_m). The Fejer kernel
    is normalized so f(0) = 1, i.e. f(x) = (sin(pi x/2)/(pi x/2))^2.
    """

    kind: str
    dim: int = 1
    combo_coeffs: tuple = field(default=())

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidSpecError(f"unknown test-function kind {self.kind!r}")
        if self.dim < 1:
            raise InvalidSpecError("dim must be positive")
        if self.kind == FEJER_TRIANGLE and self.dim != 1:
            raise InvalidSpecError("the Fejer kernel test function is 1-D")
        if self.kind == FINITE_SINC_COMBO:
            if not self.combo_coeffs:
                raise InvalidSpecError("combo needs at least one (point, coeff) pair")
            coeffs = []
            for j, c in self.combo_coeffs:
                j = (int(j),) if np.isscalar(j) else tuple(int(v) for v in j)
                if len(j) != self.dim:
                    raise InvalidSpecError("combo point dim mismatch")
                coeffs.append((j, float(c)))
            object.__setattr__(self, "combo_coeffs", tuple(coeffs))


def eval_f(f, x):
    """Evaluate at a point or batch (last axis = dim for dim > 1)."""
    x = np.asarray(x, dtype=np.float64)
    if f.dim == 1:
        x = x.reshape(-1)
        if f.kind == TENSOR_SINC:
            return np.sinc(x)
        if f.kind == FEJER_TRIANGLE:
            return np.sinc(x / 2.0) ** 2
        out = np.zeros_like(x)
        for (j,), c in f.combo_coeffs:
            out += c * np.sinc(x - j)
        return out
    pts = x.reshape(-1, f.dim)
    if f.kind == TENSOR_SINC:
        return np.prod(np.sinc(pts), axis=-1)
    out = np.zeros(pts.shape[0])
    for j, c in f.combo_coeffs:
        out += c * np.prod(np.sinc(pts - np.asarray(j, dtype=np.float64)), axis=-1)
    return out


def declared_norms(f):
    """Exact norms of the full lattice sequence {f(j)}, where known.

    sinc samples are a Kronecker delta; combo samples are the bare
    coefficients (sinc orthonormality); the Fejer value is the frozen
    closed form above.
    """
    if f.kind == TENSOR_SINC:
        return {"l1": 1.0, "l2": 1.0, "linf": 1.0}
    if f.kind == FINITE_SINC_COMBO:
        cs = np.array([c for _, c in f.combo_coeffs])
        return {
            "l1": float(np.sum(np.abs(cs))),
            "l2": float(np.sqrt(np.sum(cs**2))),
            "linf": float(np.max(np.abs(cs))),
        }
    return {"l2": FEJER_SAMPLE_L2}


def sample_lattice(f, window_radius):
    """Exact samples on ||j||_inf <= window_radius as LatticeData."""
    if window_radius < 1:
        raise DomainError("window_radius must be >= 1")
    side = np.arange(-window_radius, window_radius + 1, dtype=np.float64)
    if f.dim == 1:
        values = eval_f(f, side)
    else:
        mesh = np.stack(np.meshgrid(*([side] * f.dim), indexing="ij"), axis=-1)
        values = eval_f(f, mesh).reshape((2 * window_radius + 1,) * f.dim)
    return LatticeData(
        dim=f.dim,
        window_radius=window_radius,
        values=values,
        declared_norms=declared_norms(f),
    )


def l2_distance(f, interpolant_values, x_grid, step):
    """Quadrature proxy of the L2 error against f on a uniform grid.

    interpolant_values must be sampled on x_grid; step is the grid
    spacing h (the weight is h^dim).
    """
    x_grid = np.asarray(x_grid, dtype=np.float64)
    interpolant_values = np.asarray(interpolant_values, dtype=np.float64)
    npts = x_grid.shape[0] if x_grid.ndim > 0 else 1
    if interpolant_values.shape[0] != npts:
        raise DomainError("interpolant and grid lengths differ")
    diff = interpolant_values - eval_f(f, x_grid)
    return float(np.sqrt(np.sum(diff**2) * step**f.dim))
