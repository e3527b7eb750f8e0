"""Exact elimination of integrated variables, and the inner product.

Each term is integrated over one variable by one of five closed rules:

    (a) a delta factor involves the variable          -> solve and substitute
    (b) quadratic coefficient alpha != 0              -> Gaussian/Fresnel formula
    (c) alpha == 0, linear part depends on other vars -> 2*pi * delta(linear part)
    (d) alpha == 0, linear part a nonzero number      -> 0
    (e) alpha == 0, no linear part                    -> divergent; inside an
        inner product this is the Kronecker-normalized self overlap.
"""
from __future__ import annotations

import cmath
import math
from typing import Sequence

import numpy as np

from .algebra import (DEFAULT_CONFIG, DeltaFactor, DeltaNormalized, Finite, GaussTerm,
                      LinearForm, QuadExponent, State, canonical_term, conjugate, make_state,
                      multiply_terms, substitute_term)
from .config import EvalConfig
from .errors import ArityMismatch, DeltaDerivativeUnsupported, DivergentIntegral

TWO_PI = 2.0 * math.pi


def gaussian_moment(power: int, alpha: complex) -> complex:
    """``integral of w**power * exp(i*alpha*w**2) dw`` over the real line.

    Principal branch of sqrt(pi/s) with s = -i*alpha (Re s >= 0). Odd powers vanish.
    """
    if power % 2:
        return 0j
    s = -1j * complex(alpha)
    m = power // 2
    double_fact = math.prod(range(power - 1, 0, -2)) if power else 1
    return double_fact / (2 * s) ** m * cmath.sqrt(math.pi / s)


def _others(n: int, var: int) -> list:
    return [j for j in range(n) if j != var]


def _drop_var(term: GaussTerm, var: int, extra_deltas=()) -> GaussTerm:
    keep = _others(term.arity, var)
    A = term.exponent.A[np.ix_(keep, keep)]
    b = term.exponent.b[keep]
    deltas = []
    for d in term.deltas:
        row = d.row(term.arity)[keep]
        deltas.append(DeltaFactor(LinearForm.from_vector(row, d.form.constant)))
    return GaussTerm(term.coeff, tuple(deltas) + tuple(extra_deltas), term.poly.drop_var(var),
                     QuadExponent(A, b, term.exponent.c))


def _delta_rule(term, var, cfg, kron):
    n = term.arity
    R, k = term.delta_matrix()
    d = int(np.argmax(np.abs(R[:, var])))
    c = R[d, var]
    others = _others(n, var)
    M = np.zeros((n, n - 1))
    v = np.zeros(n)
    for new, old in enumerate(others):
        M[old, new] = 1.0
        M[var, new] = -R[d, old] / c
    v[var] = -k[d] / c
    rest = GaussTerm(term.coeff / abs(c), term.deltas[:d] + term.deltas[d + 1:], term.poly, term.exponent)
    out = substitute_term(rest, M, v, cfg.eq_tol)
    return _finish(out, cfg, kron)


def _gauss_rule(term, var, alpha, cfg, kron):
    n = term.arity
    A, b = term.exponent.A, term.exponent.b
    others = _others(n, var)
    M = np.zeros((n, n), dtype=complex)
    v = np.zeros(n, dtype=complex)
    for new, old in enumerate(others):
        M[old, new] = 1.0
        M[var, new] = -A[var, old] / alpha
    M[var, n - 1] = 1.0
    v[var] = -b[var] / (2 * alpha)
    shifted = substitute_term(term, M, v, cfg.eq_tol)
    # completing the square decouples w = x_{n-1} exactly; clear rounding residue
    A2 = np.array(shifted.exponent.A)
    b2 = np.array(shifted.exponent.b)
    A2[n - 1, :] = 0
    A2[:, n - 1] = 0
    b2[n - 1] = 0
    acc = None
    for power, part in shifted.poly.split_var(n - 1).items():
        mom = gaussian_moment(power, alpha)
        if mom != 0:
            acc = part.scale(mom) if acc is None else acc + part.scale(mom)
    if acc is None or acc.is_zero():
        return None, 0
    keep = list(range(n - 1))
    deltas = []
    for d in shifted.deltas:
        deltas.append(DeltaFactor(LinearForm.from_vector(d.row(n)[keep], d.form.constant)))
    out = GaussTerm(shifted.coeff, tuple(deltas), acc,
                    QuadExponent(A2[np.ix_(keep, keep)], b2[keep], shifted.exponent.c))
    return _finish(out, cfg, kron)


def _linear_rule(term, var, cfg, kron):
    tol = cfg.eq_tol
    n = term.arity
    A, b = term.exponent.A, term.exponent.b
    others = _others(n, var)
    beta = np.array([2 * A[var, j] for j in others], dtype=complex)
    const = complex(b[var])
    scale = max(1.0, float(np.max(np.abs(beta), initial=0.0)))
    has_vars = bool(np.any(np.abs(beta) > tol * scale))
    if term.poly.degree_in(var):
        if not has_vars and abs(const) <= tol:
            raise DivergentIntegral("polynomial times constant phase is not integrable")
        raise DeltaDerivativeUnsupported("polynomial prefactor against a plane wave needs delta derivatives")
    if abs(const.imag) > tol or np.any(np.abs(beta.imag) > tol * scale):
        raise DivergentIntegral("exponentially growing linear phase")
    if has_vars:
        delta = DeltaFactor(LinearForm.from_vector(beta.real, complex(const.real), tol))
        out = _drop_var(term, var, (delta,))
        return _finish(out.with_coeff(out.coeff * TWO_PI), cfg, kron)
    if abs(const) > tol:
        return None, 0
    if not kron:
        raise DivergentIntegral("integrand is constant in the integrated variable")
    out = _drop_var(term, var)
    t, k = _finish(out.with_coeff(out.coeff * TWO_PI), cfg, kron)
    return t, k + 1


def _finish(term, cfg, kron):
    if kron:
        return canonical_term(term, cfg, coincident="count")
    return canonical_term(term, cfg), 0


def _classify(term: GaussTerm, var: int, tol: float) -> int:
    """Priority of eliminating ``var`` next (lower first)."""
    n = term.arity
    if term.deltas:
        R, _ = term.delta_matrix()
        if np.any(np.abs(R[:, var]) > tol):
            return 0
    alpha = term.exponent.A[var, var]
    if alpha.imag > tol:
        return 1
    if abs(alpha) > tol:
        return 2
    A = term.exponent.A
    beta = [A[var, j] for j in range(n) if j != var]
    if all(abs(x) <= tol for x in beta):
        return 3 if abs(term.exponent.b[var]) > tol else 5
    return 4


def eliminate(term: GaussTerm, var: int, cfg: EvalConfig = DEFAULT_CONFIG, kron: bool = False):
    """Integrate one term over ``var``. Returns ``(term or None, kronecker count)``."""
    tol = cfg.eq_tol
    kind = _classify(term, var, tol)
    if kind == 0:
        return _delta_rule(term, var, cfg, kron)
    if kind in (1, 2):
        return _gauss_rule(term, var, complex(term.exponent.A[var, var]), cfg, kron)
    return _linear_rule(term, var, cfg, kron)


def integrate_var(s: State, var: int, cfg: EvalConfig = DEFAULT_CONFIG) -> State:
    if not 0 <= var < s.arity:
        raise ArityMismatch(f"variable {var} out of range for arity {s.arity}")
    terms = []
    for t in s.terms:
        out, _ = eliminate(t, var, cfg)
        if out is not None:
            terms.append(out)
    return make_state(s.arity - 1, terms, cfg)


def integrate_term(term: GaussTerm, cfg: EvalConfig = DEFAULT_CONFIG, kron: bool = False,
                   order: Sequence[int] | None = None):
    """Integrate a term over all its variables. Returns ``(value, kronecker count)``."""
    labels = list(range(term.arity))
    kcount = 0
    step = 0
    while term is not None and term.arity:
        if order is not None:
            var = labels.index(order[step])
        else:
            var = min(range(term.arity), key=lambda j: (_classify(term, j, cfg.eq_tol), j))
        term, k = eliminate(term, var, cfg, kron)
        kcount += k
        labels.pop(var)
        step += 1
    if term is None:
        return 0j, kcount
    return complex(term.coeff * term.poly.constant_term() * cmath.exp(1j * term.exponent.c)), kcount


def integrate_all(s: State, cfg: EvalConfig = DEFAULT_CONFIG, order: Sequence[int] | None = None) -> State:
    """Integrate over every variable; ``order`` lists original variable indices."""
    if order is not None and sorted(order) != list(range(s.arity)):
        raise ValueError("order must be a permutation of the state's variables")
    total = 0j
    for t in s.terms:
        value, _ = integrate_term(t, cfg, order=order)
        total += value
    return State.constant(total) if total != 0 else State.zero(0)


def inner_product(phi: State, psi: State, cfg: EvalConfig = DEFAULT_CONFIG):
    """``<phi|psi>`` with the Kronecker agreement for coinciding generalized states."""
    if phi.arity != psi.arity:
        raise ArityMismatch(f"inner product of arities {phi.arity} and {psi.arity}")
    bra = conjugate(phi, cfg)
    finite = 0j
    delta = 0j
    delta_scale = 0.0
    for t1 in bra.terms:
        for t2 in psi.terms:
            t, k0 = multiply_terms(t1, t2, cfg, coincident="count")
            if t is None:
                continue
            value, k = integrate_term(t, cfg, kron=True)
            if k0 + k:
                delta += value
                delta_scale = max(delta_scale, abs(value))
            else:
                finite += value
    if delta_scale and abs(delta) > cfg.eq_tol * delta_scale:
        return DeltaNormalized(delta)
    return Finite(finite)
