import math

import numpy as np
import pytest
from hypothesis import given

from conftest import GRID, complexes, gaussians, proper_states, sample
from diraclogic.algebra import (DeltaFactor, DeltaNormalized, Finite, GaussTerm, LinearForm,
                                QuadExponent, Rigging, State, add, canonical_term, conjugate,
                                linear_combination, make_state, multiply_pointwise, normalize, scale,
                                states_close, substitute_affine, tensor)
from diraclogic.errors import DependentDeltas, NotNormalizable, UnboundedExponent, ZeroState
from diraclogic.operators import momentum_state, position_state
from diraclogic.poly import Poly
from diraclogic.quantifier import inner_product


def delta(coeffs, const):
    return DeltaFactor(LinearForm(tuple((j, complex(c)) for j, c in coeffs), complex(const)))


@given(proper_states())
def test_conjugate_is_an_involution(s):
    assert states_close(conjugate(conjugate(s)), s, 1e-12)
    np.testing.assert_allclose(sample(conjugate(s), GRID), np.conj(sample(s, GRID)), atol=1e-12)


@given(proper_states(), proper_states(), proper_states(), complexes, complexes)
def test_vector_space_axioms(u, v, w, a, b):
    f = lambda s: sample(s, GRID)
    np.testing.assert_allclose(f(add(u, v)), f(add(v, u)), atol=1e-10)
    np.testing.assert_allclose(f(add(add(u, v), w)), f(add(u, add(v, w))), atol=1e-10)
    np.testing.assert_allclose(f(scale(a, add(u, v))), f(add(scale(a, u), scale(a, v))), atol=1e-9)
    np.testing.assert_allclose(f(scale(a + b, u)), f(add(scale(a, u), scale(b, u))), atol=1e-9)
    assert add(u, scale(-1, u)).is_zero
    assert states_close(add(u, State.zero(1)), u, 1e-12)


def test_like_terms_merge():
    g = GaussTerm.simple(1, 2.0, A=[[1j]])
    s = make_state(1, [g, g.with_coeff(3.0)])
    assert len(s.terms) == 1 and abs(s.terms[0].coeff - 5.0) < 1e-15


def test_same_support_sums_polynomials():
    x = Poly.variable(1, 0)
    t1 = GaussTerm.simple(1, 1.0, A=[[1j]], poly=x)
    t2 = GaussTerm.simple(1, 1.0, A=[[1j]])
    s = make_state(1, [t1, t2])
    assert len(s.terms) == 1
    np.testing.assert_allclose(sample(s, GRID), (GRID + 1) * np.exp(-GRID ** 2))


def test_constant_phase_folds_into_coefficient():
    t = GaussTerm(1.0, (), Poly.constant(1), QuadExponent([[1j]], [0], 0.7))
    c = canonical_term(t)
    assert c.exponent.c == 0
    assert abs(c.coeff - np.exp(0.7j)) < 1e-15


def test_unbounded_exponent_rejected():
    with pytest.raises(UnboundedExponent):
        make_state(1, [GaussTerm.simple(1, 1.0, A=[[-1j]])])


def test_delta_reduction_jacobian():
    # delta(2x - 1) = delta(x - 1/2) / 2
    s = make_state(1, [GaussTerm.simple(1, 1.0, deltas=[delta([(0, 2)], -1)])])
    (t,) = s.terms
    assert abs(t.coeff - 0.5) < 1e-15
    assert abs(t.deltas[0].offset + 0.5) < 1e-15


def test_parallel_deltas():
    d1, d2 = delta([(0, 1)], 0), delta([(0, 1)], -1)
    assert make_state(1, [GaussTerm.simple(1, 1.0, deltas=[d1, d2])]).is_zero
    with pytest.raises(DependentDeltas):
        make_state(1, [GaussTerm.simple(1, 1.0, deltas=[d1, delta([(0, 2)], 0)])])


def test_rigging():
    assert momentum_state(1.0).rigging is Rigging.GENERALIZED
    assert position_state(0.0).rigging is Rigging.GENERALIZED
    assert make_state(1, [GaussTerm.simple(1, 1.0, A=[[1j]])]).rigging is Rigging.PROPER


def test_normalize():
    s = make_state(1, [GaussTerm.simple(1, 3.0, A=[[0.5j]])])
    amp = inner_product(normalize(s), normalize(s))
    assert abs(amp.value - 1) < 1e-12
    with pytest.raises(NotNormalizable):
        normalize(momentum_state(0.0))
    with pytest.raises(ZeroState):
        normalize(State.zero(1))


@given(gaussians(), gaussians())
def test_pointwise_product_and_tensor(u, v):
    np.testing.assert_allclose(sample(multiply_pointwise(u, v), GRID),
                               sample(u, GRID) * sample(v, GRID), rtol=1e-9, atol=1e-12)
    pts = np.array([[0.2, -0.7], [1.1, 0.4]])
    expected = u.evaluate(pts[:, :1]) * v.evaluate(pts[:, 1:])
    np.testing.assert_allclose(tensor(u, v).evaluate(pts), expected, rtol=1e-9, atol=1e-12)


@given(gaussians())
def test_affine_substitution(s):
    out = substitute_affine(s, [[2.0]], [0.5])
    np.testing.assert_allclose(sample(out, GRID), sample(s, 2 * GRID + 0.5), rtol=1e-9, atol=1e-12)


def test_linear_combination_cancels():
    g = momentum_state(0.5)
    assert linear_combination([(1, g), (-1, g)], 1).is_zero


def test_amplitudes():
    with pytest.raises(ValueError):
        DeltaNormalized(0)
    with pytest.raises(ValueError):
        DeltaNormalized(math.inf)
    assert Finite(1 + 2j).conjugate() == Finite(1 - 2j)
    assert DeltaNormalized(1j).conjugate() == DeltaNormalized(-1j)
