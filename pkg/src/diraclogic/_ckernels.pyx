# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of :mod:`diraclogic._kernels_py` (same signatures)."""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp, cos, sin

cnp.import_array()


cdef inline double complex _point(double x, const double complex[:] A, const double complex[:] B,
                                  const double complex[:, :] P, double eps) nogil:
    cdef Py_ssize_t t, d
    cdef Py_ssize_t nt = A.shape[0]
    cdef Py_ssize_t nd = P.shape[1]
    cdef double x2 = x * x
    cdef double complex acc, z, total = 0
    cdef double re, im
    for t in range(nt):
        acc = P[t, nd - 1]
        for d in range(nd - 2, -1, -1):
            acc = acc * x + P[t, d]
        z = A[t] * x2 + B[t] * x
        # exp(i z - eps x^2)
        re = -z.imag - eps * x2
        im = z.real
        total = total + acc * exp(re) * (cos(im) + 1j * sin(im))
    return total


def sample_sum(x, A, B, P, double eps=0.0):
    xa = np.ascontiguousarray(x, dtype=np.float64)
    flat = xa.ravel()
    cdef const double[:] xv = flat
    cdef const double complex[:] Av = np.ascontiguousarray(A, dtype=np.complex128)
    cdef const double complex[:] Bv = np.ascontiguousarray(B, dtype=np.complex128)
    cdef const double complex[:, :] Pv = np.ascontiguousarray(P, dtype=np.complex128)
    out = np.empty(flat.shape[0], dtype=np.complex128)
    cdef double complex[:] ov = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(xv.shape[0]):
            ov[i] = _point(xv[i], Av, Bv, Pv, eps)
    return out.reshape(xa.shape)


def panel_integrals(lo, hi, nodes, weights, A, B, P, double eps=0.0):
    cdef const double[:] lov = np.ascontiguousarray(lo, dtype=np.float64)
    cdef const double[:] hiv = np.ascontiguousarray(hi, dtype=np.float64)
    cdef const double[:] nv = np.ascontiguousarray(nodes, dtype=np.float64)
    cdef const double[:] wv = np.ascontiguousarray(weights, dtype=np.float64)
    cdef const double complex[:] Av = np.ascontiguousarray(A, dtype=np.complex128)
    cdef const double complex[:] Bv = np.ascontiguousarray(B, dtype=np.complex128)
    cdef const double complex[:, :] Pv = np.ascontiguousarray(P, dtype=np.complex128)
    out = np.empty(lov.shape[0], dtype=np.complex128)
    cdef double complex[:] ov = out
    cdef Py_ssize_t i, q
    cdef double half, mid
    cdef double complex acc
    with nogil:
        for i in range(lov.shape[0]):
            half = 0.5 * (hiv[i] - lov[i])
            mid = 0.5 * (hiv[i] + lov[i])
            acc = 0
            for q in range(nv.shape[0]):
                acc = acc + wv[q] * _point(mid + half * nv[q], Av, Bv, Pv, eps)
            ov[i] = half * acc
    return out
