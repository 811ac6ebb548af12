"""Tail sums of the discretized inverse transform beyond the stored window.

For a window covering ||xi||_inf <= (2J+1) pi the missing quadrature mass
folds through the 2 pi periodic reciprocal denominator:

    T(x) = dxi/(2 pi) * sum_{|m|>J} sum_base P(xi) phihat(xi + 2 pi m)
           * cos(x (xi + 2 pi m)).

Only the polyharmonic family phihat = |.|^{-2k} leaves a tail above
1e-20, and for it the cell sums reduce, via the binomial expansion of
(xi + 2 pi m)^{-2k} in xi/(2 pi m), to power sums

    G_s(z) = sum_{m > J} z^m m^{-s},   z = e^{2 pi i x},

evaluated by direct summation plus Abel summation-by-parts acceleration.
Integer x (z = 1) is the Hurwitz zeta; x within ~1e-3 of an integer gets
an extended direct sum because each summation-by-parts level costs a
factor 1/|1-z|. Worst-case absolute error in that band is ~1e-7, well
below the band's own distance-to-integer times the tail's slope.
"""

import math

import numpy as np
from scipy.special import zeta as hurwitz_zeta

SNAP_EPS = 1e-9          # |x - round(x)| below this is treated as integer
_DIRECT_TERMS = 3000
_GAP_DIRECT_TERMS = 400_000
_SBP_LEVELS = 8
_GAP_WIDTH = 1e-3        # |1-z| below this switches to the extended sum
_CHUNK = 16384


def _sbp_remainder(s, z, start):
    """sum_{m >= start} z^m m^{-s} by summation by parts, levels capped.

    Each level trades a forward difference of m^{-s} for a factor
    z/(1-z); levels are applied only while they shrink the term. When
    even the first level would grow (z too close to 1), the remainder
    is dropped; it is then bounded by zeta(s, start) ~ start^{1-s}.

    The forward differences are taken in midpoint-derivative form
    (-1)^l (s)_l (start + l/2)^{-s-l}: a numerical difference table of
    nearly equal m^{-s} values cancels catastrophically and, scaled by
    w^l, would dominate the result near z = 1.
    """
    w = z / (1.0 - z)
    acc = np.zeros_like(z)
    live = np.abs(w) * s / start < 0.9
    poch = 1.0
    for level in range(_SBP_LEVELS):
        diff = (-1.0) ** level * poch * (start + level / 2.0) ** (-float(s) - level)
        acc = np.where(live, acc + (w**level) * diff, acc)
        poch *= s + level
        live = live & (np.abs(w) * (s + level + 1.0) / start < 0.9)
    return z ** float(start) / (1.0 - z) * acc


def _power_block(z, lo, count):
    """z^m for m = lo..lo+count-1 via cumulative products (one pow per z)."""
    block = np.empty((z.shape[0], count), dtype=np.complex128)
    block[:, 0] = 1.0
    block[:, 1:] = z[:, None]
    np.cumprod(block, axis=1, out=block)
    block *= (z ** float(lo))[:, None]
    return block


def power_tails(s_values, z, start):
    """G_s(z) = sum_{m > start} z^m m^{-s} for every s in s_values at once.

    The z^m blocks are shared across all s; z is unimodular.
    """
    z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    s_values = list(s_values)
    out = {s: np.empty(z.shape, dtype=np.complex128) for s in s_values}
    d = np.abs(1.0 - z)
    exact = d < 2.0 * math.pi * SNAP_EPS
    gap = (~exact) & (d < _GAP_WIDTH)
    good = ~(exact | gap)
    if np.any(exact):
        for s in s_values:
            out[s][exact] = hurwitz_zeta(s, start + 1.0)
    for mask, n_direct in ((good, _DIRECT_TERMS), (gap, _GAP_DIRECT_TERMS)):
        if not np.any(mask):
            continue
        zz = z[mask]
        acc = {s: np.zeros(zz.shape, dtype=np.complex128) for s in s_values}
        for lo in range(start + 1, start + 1 + n_direct, _CHUNK):
            hi = min(lo + _CHUNK, start + 1 + n_direct)
            m = np.arange(lo, hi, dtype=np.float64)
            block = _power_block(zz, lo, hi - lo)
            logm = np.log(m)
            for s in s_values:
                acc[s] += block @ np.exp(-float(s) * logm)
        b = start + 1 + n_direct
        for s in s_values:
            out[s][mask] = acc[s] + _sbp_remainder(s, zz, b)
    return out


def binomial_coefficients(two_k, terms):
    """c_p = binom(-2k, p) for the expansion (1+t)^{-2k} = sum c_p t^p."""
    return np.array(
        [(-1) ** p * math.comb(two_k + p - 1, p) for p in range(terms)],
        dtype=np.float64,
    )


def expansion_terms(two_k, window_j, tol=1e-18):
    """Number of binomial terms so the truncated expansion error is below tol."""
    ratio = 0.5 / (window_j + 1)  # |xi|/(2 pi m) <= pi / (2 pi (J+1))
    p, term = 0, 1.0
    while term > tol and p < 64:
        p += 1
        term = math.comb(two_k + p - 1, p) * ratio**p
    return p + 1


def polyharmonic_window_tail(xs, base_nodes, inv_denominator, two_k, window_j, dxi):
    """Tail of the inverse-transform quadrature at arbitrary 1-D targets.

    xs: target points; base_nodes: base-cell frequency nodes (symmetric);
    inv_denominator: P(xi) = 1/(phihat+u) on those nodes; two_k: 2k.
    """
    xs = np.atleast_1d(np.asarray(xs, dtype=np.float64))
    frac = xs - np.rint(xs)
    snapped = np.where(np.abs(frac) <= SNAP_EPS, 0.0, frac)
    # group targets sharing a phase factor (the sums are 1-periodic in x)
    keys, inverse = np.unique(np.round(snapped, 12), return_inverse=True)
    z = np.exp(2j * math.pi * keys)

    n_terms = expansion_terms(two_k, window_j)
    coeffs = binomial_coefficients(two_k, n_terms)
    s_values = [two_k + p for p in range(n_terms)]
    tails = power_tails(s_values, z, window_j)

    out = np.zeros(xs.shape)
    phase = np.exp(1j * np.outer(xs, base_nodes))
    weighted = phase * inv_denominator[None, :]
    for p in range(n_terms):
        s = two_k + p
        beta = weighted @ (base_nodes**p)
        g = tails[s][inverse]
        scale = coeffs[p] * (2.0 * math.pi) ** (-float(s))
        if p % 2 == 0:
            out += 2.0 * scale * beta.real * g.real
        else:
            out -= 2.0 * scale * beta.imag * g.imag
    return out * dxi / (2.0 * math.pi)
