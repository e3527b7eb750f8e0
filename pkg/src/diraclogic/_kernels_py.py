"""Pure-numpy implementation of the quadratic-phase sampling kernels.

Both functions evaluate sums of univariate terms

    sum_t poly_t(x) * exp(i * (A[t] x^2 + B[t] x)) * exp(-eps x^2)

where ``P[t]`` holds the ascending coefficients of ``poly_t`` (coefficient
and constant phase already folded in).
"""
import numpy as np


def sample_sum(x, A, B, P, eps=0.0):
    x = np.asarray(x, dtype=np.float64)
    out = np.zeros(x.shape, dtype=np.complex128)
    x2 = x * x
    for t in range(A.shape[0]):
        acc = np.full(x.shape, P[t, -1], dtype=np.complex128)
        for d in range(P.shape[1] - 2, -1, -1):
            acc = acc * x + P[t, d]
        out += acc * np.exp(1j * (A[t] * x2 + B[t] * x) - eps * x2)
    return out


def panel_integrals(lo, hi, nodes, weights, A, B, P, eps=0.0):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    pts = mid[:, None] + half[:, None] * nodes[None, :]
    return half * (sample_sum(pts, A, B, P, eps) @ weights)
