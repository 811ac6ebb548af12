# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled numerical hot loops (see _kernels_py for the reference versions)."""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, cosh, exp

cnp.import_array()


def cos_transform(double[::1] coeffs, double[::1] nodes, double[::1] targets):
    """out[i] = sum_k coeffs[k] * cos(targets[i] * nodes[k])."""
    cdef Py_ssize_t n = nodes.shape[0]
    cdef Py_ssize_t m = targets.shape[0]
    out = np.empty(m)
    cdef double[::1] o = out
    cdef Py_ssize_t i, k
    cdef double acc, x
    for i in range(m):
        x = targets[i]
        acc = 0.0
        for k in range(n):
            acc += coeffs[k] * cos(x * nodes[k])
        o[i] = acc
    return out


def cos_bilinear_form(double[:, ::1] values, double[::1] nodes1,
                      double[::1] nodes2, double[::1] x1, double[::1] x2):
    """out[i] = c1(x1[i])^T values c2(x2[i]) with c(x)_k = cos(x*node_k)."""
    cdef Py_ssize_t n1 = nodes1.shape[0]
    cdef Py_ssize_t n2 = nodes2.shape[0]
    cdef Py_ssize_t m = x1.shape[0]
    out = np.empty(m)
    c2buf = np.empty(n2)
    cdef double[::1] o = out
    cdef double[::1] c2 = c2buf
    cdef Py_ssize_t i, j, k
    cdef double acc, row, a, b
    for i in range(m):
        a = x1[i]
        b = x2[i]
        for k in range(n2):
            c2[k] = cos(b * nodes2[k])
        acc = 0.0
        for j in range(n1):
            row = 0.0
            for k in range(n2):
                row += values[j, k] * c2[k]
            acc += cos(a * nodes1[j]) * row
        o[i] = acc
    return out


def bessel_kernel_sums(double[::1] rs, double beta, double t_max, int n_nodes):
    """Composite trapezoid of exp(-r(cosh t - 1)) cosh(beta t) on [0, t_max]."""
    cdef Py_ssize_t m = rs.shape[0]
    cdef double dt = t_max / n_nodes
    out = np.empty(m)
    coshbuf = np.empty(n_nodes + 1)
    growbuf = np.empty(n_nodes + 1)
    cdef double[::1] o = out
    cdef double[::1] ch = coshbuf
    cdef double[::1] gr = growbuf
    cdef Py_ssize_t i, k
    cdef double t, acc, w
    for k in range(n_nodes + 1):
        t = dt * k
        ch[k] = cosh(t) - 1.0
        w = 0.5 if (k == 0 or k == n_nodes) else 1.0
        gr[k] = cosh(beta * t) * w
    for i in range(m):
        acc = 0.0
        for k in range(n_nodes + 1):
            acc += exp(-rs[i] * ch[k]) * gr[k]
        o[i] = acc * dt
    return out
