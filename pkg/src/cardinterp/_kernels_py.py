"""NumPy implementations of the numerical hot loops.

These are the reference kernels; ``cardinterp._kernels`` provides compiled
equivalents with identical signatures. Both are deterministic, but they may
differ from each other in the last bits (different summation orders).
"""

import numpy as np

_CHUNK = 512  # bounds the (targets x nodes) temporaries to a few MB


def cos_transform(coeffs, nodes, targets):
    """out[i] = sum_k coeffs[k] * cos(targets[i] * nodes[k])."""
    coeffs = np.ascontiguousarray(coeffs, dtype=np.float64)
    nodes = np.ascontiguousarray(nodes, dtype=np.float64)
    targets = np.ascontiguousarray(targets, dtype=np.float64)
    out = np.empty(targets.shape[0])
    for lo in range(0, targets.shape[0], _CHUNK):
        hi = min(lo + _CHUNK, targets.shape[0])
        out[lo:hi] = np.cos(np.outer(targets[lo:hi], nodes)) @ coeffs
    return out


def cos_bilinear_form(values, nodes1, nodes2, x1, x2):
    """out[i] = c1(x1[i])^T values c2(x2[i]) with c(x)_k = cos(x*node_k)."""
    values = np.ascontiguousarray(values, dtype=np.float64)
    x1 = np.asarray(x1, dtype=np.float64)
    x2 = np.asarray(x2, dtype=np.float64)
    out = np.empty(x1.shape[0])
    for lo in range(0, x1.shape[0], _CHUNK):
        hi = min(lo + _CHUNK, x1.shape[0])
        c1 = np.cos(np.outer(x1[lo:hi], nodes1))
        c2 = np.cos(np.outer(x2[lo:hi], nodes2))
        out[lo:hi] = np.einsum("ij,jk,ik->i", c1, values, c2, optimize=True)
    return out


def bessel_kernel_sums(rs, beta, t_max, n_nodes):
    """Composite trapezoid of exp(-r(cosh t - 1)) cosh(beta t) on [0, t_max].

    Returns one value per entry of ``rs``; n_nodes counts subintervals.
    """
    rs = np.ascontiguousarray(rs, dtype=np.float64)
    t = np.linspace(0.0, float(t_max), int(n_nodes) + 1)
    w = np.full(t.shape, 1.0)
    w[0] = w[-1] = 0.5
    growth = np.cosh(beta * t) * w
    out = np.empty(rs.shape[0])
    for lo in range(0, rs.shape[0], _CHUNK):
        hi = min(lo + _CHUNK, rs.shape[0])
        g = np.exp(-np.outer(rs[lo:hi], np.cosh(t) - 1.0))
        out[lo:hi] = g @ growth
    return out * (float(t_max) / int(n_nodes))
