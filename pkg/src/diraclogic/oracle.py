"""Numerical cross-check of symbolic integrals.

The integral over the real line is taken literally as the limit of integrals
over nested intervals ``[-L_k, L_k]``. Conditionally convergent (Fresnel)
integrands are damped by ``exp(-eps x^2)`` and the damping is then
extrapolated away.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .algebra import DEFAULT_CONFIG, Amplitude, DeltaNormalized, Finite, State
from .config import EvalConfig
from .errors import IncomparableDelta, InsufficientPoints, NoConvergence, UnsupportedArity

DEFAULT_EPS_SWEEP = (1e-2, 1e-3, 1e-4)
PANEL_TOL = 1e-12
CONVERGENCE_TOL = 1e-10
_CHUNK = 200_000
_MAX_SPLITS = 40
# panels per side over all shells; past this the integral is treated as not converging.
# Decaying integrands stop at their support radius, so they get the larger cap.
_PANEL_BUDGET = 3_000_000
_PANEL_BUDGET_DECAYING = 60_000_000

_LO_NODES, _LO_WEIGHTS = np.polynomial.legendre.leggauss(4)
_HI_NODES, _HI_WEIGHTS = np.polynomial.legendre.leggauss(8)


@dataclass(frozen=True)
class Integrand:
    """Flat arrays describing a univariate, delta-free state for the kernels."""

    A: np.ndarray
    B: np.ndarray
    P: np.ndarray

    @classmethod
    def from_state(cls, s: State) -> "Integrand":
        if s.arity != 1:
            raise UnsupportedArity(f"oracle integrates arity-1 states, got arity {s.arity}")
        if any(t.deltas for t in s.terms):
            raise UnsupportedArity("oracle cannot integrate delta-bearing terms")
        deg = max((t.poly.degree() for t in s.terms), default=0)
        n = len(s.terms)
        A = np.zeros(n, dtype=complex)
        B = np.zeros(n, dtype=complex)
        P = np.zeros((n, deg + 1), dtype=complex)
        for i, t in enumerate(s.terms):
            A[i] = t.exponent.A[0, 0]
            B[i] = t.exponent.b[0]
            coeffs = t.poly.univariate_coeffs() * t.coeff * np.exp(1j * t.exponent.c)
            P[i, :coeffs.size] = coeffs
        return cls(A, B, P)

    def __call__(self, x, eps=0.0):
        return kernels.sample_sum(x, self.A, self.B, self.P, eps)

    def frequency_profile(self):
        """``(slope, offset)`` bounding the local angular frequency by ``slope |x| + offset``."""
        if not self.A.size:
            return 0.0, 0.0
        return float(np.max(2 * np.abs(self.A.real))), float(np.max(np.abs(self.B.real)))

    def support_radius(self, eps, floor=1e-22):
        """Half-width beyond which every term's envelope stays below ``floor``."""
        radius = 0.0
        for t in range(self.A.size):
            decay = self.A[t].imag + eps
            if decay <= 0:
                return math.inf
            mag = float(np.sum(np.abs(self.P[t])))
            if mag == 0:
                continue
            deg = self.P.shape[1] - 1
            grow = abs(self.B[t].imag)

            def log_env(x):
                return math.log(mag) + deg * math.log(max(1.0, x)) - decay * x * x + grow * x

            lo = grow / (2 * decay) + math.sqrt(deg / (2 * decay)) + 1.0
            hi = 2 * lo
            while log_env(hi) > math.log(floor):
                hi *= 2
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                if log_env(mid) > math.log(floor):
                    lo = mid
                else:
                    hi = mid
            radius = max(radius, hi)
        return radius

    def max_panel(self, eps):
        decay = float(np.max(self.A.imag, initial=0.0)) + eps
        if decay <= 0:
            return 1e3
        return float(np.clip(1.0 / math.sqrt(decay), 1e-3, 1e3))


def _panel_edges(a: float, b: float, slope: float, offset: float, hmax: float) -> np.ndarray:
    """Edges on ``[a, b]`` (0 <= a < b) with width <= pi / (4 * local frequency)."""
    # panel count N(x) = (4/pi) * (slope x^2 + offset x) + x / hmax; the doubled
    # quadratic term bounds each width by the frequency at its outer edge
    qa = 4.0 * slope / math.pi
    qb = 4.0 * offset / math.pi + 1.0 / hmax

    def count(x):
        return qa * x * x + qb * x

    j = np.arange(math.floor(count(a)) + 1, math.ceil(count(b)))
    # root of qa x^2 + qb x = j, in the form without cancellation (valid for qa = 0)
    xs = 2 * j / (qb + np.sqrt(qb * qb + 4 * qa * j))
    return np.concatenate(([a], xs[(xs > a) & (xs < b)], [b]))


def _integrate_panels(f: Integrand, edges: np.ndarray, eps: float) -> complex:
    total = 0j
    for start in range(0, edges.size - 1, _CHUNK):
        lo = edges[start:start + _CHUNK]
        hi = edges[start + 1:start + 1 + _CHUNK]
        lo = lo[:hi.size]
        for _ in range(_MAX_SPLITS):
            coarse = kernels.panel_integrals(lo, hi, _LO_NODES, _LO_WEIGHTS, f.A, f.B, f.P, eps)
            fine = kernels.panel_integrals(lo, hi, _HI_NODES, _HI_WEIGHTS, f.A, f.B, f.P, eps)
            bad = np.abs(fine - coarse) > PANEL_TOL * np.maximum(1.0, np.abs(fine))
            total += fine[~bad].sum()
            if not bad.any():
                break
            lo, hi = lo[bad], hi[bad]
            mid = 0.5 * (lo + hi)
            lo, hi = np.concatenate((lo, mid)), np.concatenate((mid, hi))
        else:
            total += fine[bad].sum()
    return complex(total)


def _shell(f: Integrand, a: float, b: float, eps: float):
    """Integral over ``[-b, -a] U [a, b]`` (or ``[-b, b]`` when a == 0), and the panel count."""
    slope, offset = f.frequency_profile()
    edges = _panel_edges(a, b, slope, offset, f.max_panel(eps))
    right = _integrate_panels(f, edges, eps)
    left = _integrate_panels(f, -edges[::-1], eps)
    return right + left, edges.size - 1


def _panel_estimate(f: Integrand, b: float, eps: float) -> float:
    slope, offset = f.frequency_profile()
    return 4.0 * slope / math.pi * b * b + (4.0 * offset / math.pi + 1.0 / f.max_panel(eps)) * b


def numeric_integrate(s: State, cfg: EvalConfig = DEFAULT_CONFIG, eps: float = 0.0,
                      return_history: bool = False):
    """``(value, error_estimate)`` of the integral of ``s`` over the real line.

    Nested half-widths come from ``cfg.interval_schedule``; iteration stops when
    an increment falls below 1e-10.
    """
    if eps < 0:
        raise ValueError("eps must be non-negative")
    f = Integrand.from_state(s)
    if not s.terms:
        return (0j, 0.0, []) if return_history else (0j, 0.0)
    value = 0j
    prev = 0.0
    history = []
    radius = f.support_radius(eps)
    budget = _PANEL_BUDGET if math.isinf(radius) else _PANEL_BUDGET_DECAYING
    for width in cfg.interval_schedule:
        upper = min(width, radius)
        if prev < radius and _panel_estimate(f, upper, eps) > budget:
            raise NoConvergence(f"no convergence by half-width {prev:g} within the panel budget (eps={eps:g})")
        # beyond the support radius the integrand is below 1e-22 everywhere
        inc = _shell(f, prev, upper, eps)[0] if prev < radius else 0j
        value += inc
        history.append((width, value, abs(inc)))
        if prev > 0 and abs(inc) < CONVERGENCE_TOL:
            return (value, abs(inc), history) if return_history else (value, abs(inc))
        prev = width
    raise NoConvergence(f"increment {history[-1][2]:.3g} after half-width {prev:g} (eps={eps:g})")


def eps_extrapolate(values: Sequence) -> complex:
    """Interpolating polynomial in eps through ``(eps, value)`` points, evaluated at 0."""
    pts = [(float(e), complex(v)) for e, v in values]
    if len(pts) < 3:
        raise InsufficientPoints("need at least three (eps, value) points")
    if any(b[0] >= a[0] for a, b in zip(pts, pts[1:])):
        raise ValueError("eps values must be strictly decreasing")
    # Neville's scheme at x = 0
    xs = [e for e, _ in pts]
    p = [v for _, v in pts]
    n = len(p)
    for level in range(1, n):
        for i in range(n - level):
            j = i + level
            p[i] = ((0 - xs[j]) * p[i] + (xs[i] - 0) * p[i + 1]) / (xs[i] - xs[j])
    return p[0]


def extrapolated_integral(s: State, cfg: EvalConfig = DEFAULT_CONFIG,
                          eps_sweep: Sequence[float] = DEFAULT_EPS_SWEEP) -> complex:
    sweep = sorted(eps_sweep, reverse=True)
    return eps_extrapolate([(e, numeric_integrate(s, cfg, e)[0]) for e in sweep])


def is_oscillatory(s: State, tol: float = 1e-12) -> bool:
    """True when some term does not decay (needs eps damping to converge)."""
    return any(t.exponent.A[0, 0].imag <= tol for t in s.terms)


@dataclass(frozen=True)
class Comparison:
    passed: bool
    symbolic: complex
    numeric: complex
    abs_dev: float
    rel_dev: float
    tol: float


def compare_amplitude(symbolic: Amplitude, numeric: complex, tol: float) -> Comparison:
    """Pass when the deviation is within ``tol`` absolutely or relatively."""
    if isinstance(symbolic, DeltaNormalized):
        raise IncomparableDelta("a delta-normalized amplitude has no finite numeric counterpart")
    if not isinstance(symbolic, Finite):
        raise TypeError(f"expected an Amplitude, got {symbolic!r}")
    sym = complex(symbolic.value)
    num = complex(numeric)
    dev = abs(sym - num)
    rel = dev / abs(sym) if sym != 0 else (0.0 if dev == 0 else math.inf)
    return Comparison(dev <= tol or rel <= tol, sym, num, dev, rel, tol)
