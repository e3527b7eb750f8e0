"""State constructors, linear operators, time evolution and Born probabilities.

Conventions: ``P = -i*hbar*d/dx``; ``Translate(a)`` realizes ``exp(i a P / hbar)``,
i.e. ``psi(x) -> psi(x + a)``; ``Modulate(b)`` realizes ``exp(i b Q)``.
Kernels act as ``(K psi)(x) = integral alpha(y, x) psi(y) dy``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .algebra import (DEFAULT_CONFIG, DeltaFactor, Finite, GaussTerm, LinearForm, QuadExponent,
                      State, embed, linear_combination, make_state, multiply_pointwise, scale,
                      substitute_affine)
from .config import EvalConfig
from .errors import (ArityMismatch, DeltaDerivativeUnsupported, NonpositiveWidth, NotFinite,
                     ProbabilityOutOfRange, UnsupportedArity)
from .poly import Poly
from .quantifier import inner_product, integrate_var

INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def momentum_state(p: float, cfg: EvalConfig = DEFAULT_CONFIG) -> State:
    """Plane wave ``exp(i p x) / sqrt(2 pi)``."""
    return make_state(1, [GaussTerm.simple(1, INV_SQRT_2PI, b=[float(p)])], cfg)


def position_state(x0: float, cfg: EvalConfig = DEFAULT_CONFIG) -> State:
    """``delta(x - x0)``."""
    delta = DeltaFactor(LinearForm(((0, 1 + 0j),), complex(-float(x0))))
    return make_state(1, [GaussTerm.simple(1, 1.0, deltas=[delta])], cfg)


def gaussian_state(center: float, width: float, momentum: float = 0.0,
                   cfg: EvalConfig = DEFAULT_CONFIG) -> State:
    """Normalized ``exp(-(x-center)^2 / (2 width^2) + i momentum x)``."""
    if not width > 0:
        raise NonpositiveWidth(f"width must be positive, got {width}")
    k = 1.0 / (2.0 * width ** 2)
    # -(x-c)^2 k = i * (i k x^2 - 2 i k c x + i k c^2)
    A = [[1j * k]]
    b = [momentum - 2j * k * center]
    term = GaussTerm(math.pi ** -0.25 * width ** -0.5, (), Poly.constant(1),
                     QuadExponent(A, b, 1j * k * center ** 2))
    return make_state(1, [term], cfg)


def chirp_state(alpha: float, beta: float = 0.0, gamma: float = 0.0,
                cfg: EvalConfig = DEFAULT_CONFIG) -> State:
    """``exp(i (alpha x^2 + beta x + gamma))``; not normalizable."""
    term = GaussTerm(1.0, (), Poly.constant(1), QuadExponent([[alpha]], [beta], gamma))
    return make_state(1, [term], cfg)


def hermite_state(n: int, width: float = 1.0, cfg: EvalConfig = DEFAULT_CONFIG) -> State:
    """Unnormalized ``x**n * exp(-x^2 / (2 width^2))``."""
    k = 1.0 / (2.0 * width ** 2)
    return make_state(1, [GaussTerm.simple(1, 1.0, A=[[1j * k]], poly=Poly.variable(1, 0, n))], cfg)


# ---------------------------------------------------------------------------
# operator descriptions
# ---------------------------------------------------------------------------

class OperatorSpec:
    pass


@dataclass(frozen=True)
class Kernel(OperatorSpec):
    alpha: State
    k: int = 1

    def __post_init__(self):
        if self.alpha.arity != 2 * self.k:
            raise ArityMismatch(f"kernel of arity {self.alpha.arity} does not act on {self.k} variables")


@dataclass(frozen=True)
class Translate(OperatorSpec):
    a: float
    var: int = 0


@dataclass(frozen=True)
class Modulate(OperatorSpec):
    b: float
    var: int = 0


@dataclass(frozen=True)
class Differentiate(OperatorSpec):
    var: int = 0


@dataclass(frozen=True)
class MultiplyVar(OperatorSpec):
    var: int = 0


@dataclass(frozen=True)
class Free:
    m: float = 1.0

    def __post_init__(self):
        if not self.m > 0:
            raise ValueError("mass must be positive")


@dataclass(frozen=True)
class Harmonic:
    m: float = 1.0
    omega: float = 1.0

    def __post_init__(self):
        if not (self.m > 0 and self.omega > 0):
            raise ValueError("mass and frequency must be positive")


@dataclass(frozen=True)
class Evolve(OperatorSpec):
    h: object
    t: float


@dataclass(frozen=True)
class Compose(OperatorSpec):
    """Applied right to left, like function composition."""

    ops: tuple

    def __post_init__(self):
        if not self.ops:
            raise ValueError("Compose needs at least one operator")


@dataclass(frozen=True)
class Sum(OperatorSpec):
    parts: tuple  # of (coefficient, OperatorSpec)


def momentum_operator(cfg: EvalConfig = DEFAULT_CONFIG, var: int = 0) -> OperatorSpec:
    return Sum(((-1j * cfg.hbar, Differentiate(var)),))


def weyl(a: float, b: float, cfg: EvalConfig = DEFAULT_CONFIG) -> OperatorSpec:
    """``exp(i a P) exp(i b Q)``."""
    return Compose((Translate(a * cfg.hbar), Modulate(b)))


# ---------------------------------------------------------------------------
# application
# ---------------------------------------------------------------------------

def _check_var(var, s):
    if not 0 <= var < s.arity:
        raise ArityMismatch(f"operator acts on variable {var} of an arity-{s.arity} state")


def _translate(s, a, var, cfg):
    _check_var(var, s)
    n = s.arity
    v = np.zeros(n)
    v[var] = a
    return substitute_affine(s, np.eye(n), v, cfg)


def _modulate(s, b, var, cfg):
    _check_var(var, s)
    terms = []
    for t in s.terms:
        shift = np.zeros(s.arity)
        shift[var] = b
        terms.append(GaussTerm(t.coeff, t.deltas, t.poly,
                               QuadExponent(t.exponent.A, t.exponent.b + shift, t.exponent.c)))
    return make_state(s.arity, terms, cfg)


def _differentiate(s, var, cfg):
    _check_var(var, s)
    n = s.arity
    terms = []
    for t in s.terms:
        if t.deltas:
            raise DeltaDerivativeUnsupported("derivative of a delta-bearing term")
        A, b = t.exponent.A, t.exponent.b
        # d/dx_var of i*F = i*(2 A[var] . x + b[var])
        dF = Poly.linear(2j * A[var], 1j * b[var])
        poly = t.poly.derivative(var) + t.poly * dF
        terms.append(GaussTerm(t.coeff, (), poly, t.exponent))
    return make_state(n, terms, cfg)


def _multiply_var(s, var, cfg):
    _check_var(var, s)
    x = Poly.variable(s.arity, var)
    return make_state(s.arity, [GaussTerm(t.coeff, t.deltas, t.poly * x, t.exponent) for t in s.terms], cfg)


def apply_kernel(alpha: State, k: int, s: State, cfg: EvalConfig = DEFAULT_CONFIG) -> State:
    """``phi(y, z2) -> integral alpha(y, z1) phi(y, z2) dy`` with ``|y| = |z1| = k``."""
    if s.arity < k:
        raise ArityMismatch(f"kernel on {k} variables applied to arity-{s.arity} state")
    m = s.arity
    total = k + m  # slots: y (k), z1 (k), z2 (m - k)
    a = embed(alpha, list(range(2 * k)), total, cfg)
    mapping = list(range(k)) + [2 * k + j for j in range(m - k)]
    b = embed(s, mapping, total, cfg)
    out = multiply_pointwise(a, b, cfg)
    for _ in range(k):
        out = integrate_var(out, 0, cfg)
    return out


def apply(op: OperatorSpec, s: State, cfg: EvalConfig = DEFAULT_CONFIG) -> State:
    if isinstance(op, Translate):
        return _translate(s, op.a, op.var, cfg)
    if isinstance(op, Modulate):
        return _modulate(s, op.b, op.var, cfg)
    if isinstance(op, Differentiate):
        return _differentiate(s, op.var, cfg)
    if isinstance(op, MultiplyVar):
        return _multiply_var(s, op.var, cfg)
    if isinstance(op, Kernel):
        return apply_kernel(op.alpha, op.k, s, cfg)
    if isinstance(op, Evolve):
        return evolve(op.h, op.t, s, cfg)
    if isinstance(op, Compose):
        for inner in reversed(op.ops):
            s = apply(inner, s, cfg)
        return s
    if isinstance(op, Sum):
        return linear_combination([(c, apply(o, s, cfg)) for c, o in op.parts], s.arity, cfg)
    raise TypeError(f"unknown operator {op!r}")


def weyl_commutator_phase(a: float, b: float, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """Scalar ``c`` with ``e^{iaP} e^{ibQ} = c e^{ibQ} e^{iaP}``, found on a probe Gaussian."""
    probe = gaussian_state(0.3, 0.8, 0.2, cfg)
    T, Mod = Translate(a * cfg.hbar), Modulate(b)
    left = apply(Compose((T, Mod)), probe, cfg)
    right = apply(Compose((Mod, T)), probe, cfg)
    (lt,), (rt,) = left.terms, right.terms
    return complex(lt.coeff / rt.coeff)


# ---------------------------------------------------------------------------
# time evolution
# ---------------------------------------------------------------------------

def free_kernel(m: float, t: float, cfg: EvalConfig = DEFAULT_CONFIG) -> State:
    hbar = cfg.hbar
    pref = cmath.sqrt(m / (2j * math.pi * hbar * t))
    k = m / (2 * hbar * t)
    # k (x - y)^2 with slots (y, x)
    A = np.array([[k, -k], [-k, k]])
    return make_state(2, [GaussTerm.simple(2, pref, A=A)], cfg)


def caustic_index(omega: float, t: float, tol: float = 1e-12):
    """``k`` if ``omega t`` is (numerically) ``k pi``, else ``None``."""
    r = omega * t / math.pi
    k = round(r)
    return k if abs(r - k) <= tol * max(1.0, abs(r)) else None


def harmonic_kernel(m: float, omega: float, t: float, cfg: EvalConfig = DEFAULT_CONFIG) -> State:
    """Mehler kernel; the square-root branch is continued through caustics (Maslov phase)."""
    hbar = cfg.hbar
    wt = omega * t
    s, c = math.sin(wt), math.cos(wt)
    crossings = math.floor(wt / math.pi)
    pref = math.sqrt(m * omega / (2 * math.pi * hbar * abs(s))) * cmath.exp(-1j * math.pi / 4 * (1 + 2 * crossings))
    k = m * omega / (2 * hbar * s)
    A = np.array([[k * c, -k], [-k, k * c]])
    return make_state(2, [GaussTerm.simple(2, pref, A=A)], cfg)


def evolve(h, t: float, s: State, cfg: EvalConfig = DEFAULT_CONFIG) -> State:
    """``exp(-i H t / hbar)`` for free or harmonic one-particle Hamiltonians."""
    if s.arity != 1:
        raise UnsupportedArity("evolution is implemented for one particle (arity 1)")
    if t == 0:
        return s
    if isinstance(h, Free):
        return apply_kernel(free_kernel(h.m, t, cfg), 1, s, cfg)
    if isinstance(h, Harmonic):
        k = caustic_index(h.omega, t)
        if k is not None:
            flipped = substitute_affine(s, [[(-1.0) ** k]], None, cfg)
            return scale(cmath.exp(-1j * k * math.pi / 2), flipped, cfg)
        return apply_kernel(harmonic_kernel(h.m, h.omega, t, cfg), 1, s, cfg)
    raise TypeError(f"unknown Hamiltonian {h!r}")


def probability(f: State, psi: State, cfg: EvalConfig = DEFAULT_CONFIG, slack: float = 1e-9) -> float:
    """``|<f|psi>|^2``."""
    amp = inner_product(f, psi, cfg)
    if not isinstance(amp, Finite):
        raise NotFinite("probability of a delta-normalized amplitude")
    p = abs(amp.value) ** 2
    if p > 1 + slack:
        raise ProbabilityOutOfRange(f"|<f|psi>|^2 = {p:.6g} > 1; are both states normalized?")
    # snap rounding noise at the endpoints
    if abs(p - 1.0) <= cfg.eq_tol:
        return 1.0
    return min(p, 1.0)
