import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st
from scipy import integrate

from conftest import complexes, gaussians, proper_states
from diraclogic.algebra import (DeltaNormalized, Finite, GaussTerm, add, conjugate, make_state,
                                scale)
from diraclogic.errors import ArityMismatch, DeltaDerivativeUnsupported, DivergentIntegral
from diraclogic.operators import momentum_state, position_state
from diraclogic.poly import Poly
from diraclogic.quantifier import gaussian_moment, inner_product, integrate_all, integrate_var


@pytest.mark.parametrize("power", [0, 1, 2, 3, 4, 6])
@pytest.mark.parametrize("alpha", [1j, 0.5 + 2j, -1 + 0.3j])
def test_gaussian_moments_by_quadrature(power, alpha):
    f = lambda w, part: getattr(w ** power * cmath.exp(1j * alpha * w * w), part)
    re = integrate.quad(f, -np.inf, np.inf, args=("real",))[0]
    im = integrate.quad(f, -np.inf, np.inf, args=("imag",))[0]
    assert abs(gaussian_moment(power, alpha) - complex(re, im)) < 1e-8


def test_fresnel_principal_branch():
    assert abs(gaussian_moment(0, 1.0) - math.sqrt(math.pi) * cmath.exp(1j * math.pi / 4)) < 1e-14
    assert abs(gaussian_moment(0, -1.0) - math.sqrt(math.pi) * cmath.exp(-1j * math.pi / 4)) < 1e-14


def test_gaussian_integral():
    s = make_state(1, [GaussTerm.simple(1, 1.0, A=[[1j]])])
    assert abs(integrate_all(s).scalar() - math.sqrt(math.pi)) < 1e-14


def test_double_gaussian_integral():
    # exp(-(x-y)^2 - y^2)
    A = 1j * np.array([[1, -1], [-1, 2]])
    s = make_state(2, [GaussTerm.simple(2, 1.0, A=A)])
    ref = integrate.dblquad(lambda y, x: math.exp(-(x - y) ** 2 - y ** 2), -12, 12, -12, 12)[0]
    assert abs(integrate_all(s).scalar() - ref) < 1e-8
    assert abs(ref - math.pi) < 1e-8


def test_order_independence():
    A = np.array([[0.3 + 1j, 0.2 - 0.1j, 0.1j], [0.2 - 0.1j, 1.5j, -0.4], [0.1j, -0.4, 0.7 + 2j]])
    s = make_state(3, [GaussTerm.simple(3, 1.0, A=A, b=[0.1, -0.2j, 0.3],
                                        poly=Poly(3, {(2, 0, 1): 1.0, (0, 1, 0): 2.0}))])
    vals = [integrate_all(s, order=o).scalar() for o in ([0, 1, 2], [2, 1, 0], [1, 0, 2], [1, 2, 0])]
    for v in vals[1:]:
        assert abs(v - vals[0]) < 1e-12 * abs(vals[0])


def test_plane_wave_integral_gives_delta():
    # integral over y of exp(i y (x - 1)) = 2 pi delta(x - 1)
    A = np.array([[0, 0.5], [0.5, 0]])
    s = make_state(2, [GaussTerm.simple(2, 1.0, A=A, b=[0, -1.0])])
    out = integrate_var(s, 1)
    (t,) = out.terms
    assert len(t.deltas) == 1 and abs(t.coeff - 2 * math.pi) < 1e-12
    assert abs(t.deltas[0].offset + 1) < 1e-12


def test_kronecker_tolerance():
    assert isinstance(inner_product(momentum_state(1.0), momentum_state(1.0 + 1e-14)), DeltaNormalized)


def test_nonzero_constant_frequency_vanishes():
    s = make_state(1, [GaussTerm.simple(1, 1.0, b=[2.0])])
    assert integrate_all(s).is_zero


def test_divergent_and_unsupported():
    with pytest.raises(DivergentIntegral):
        integrate_all(make_state(1, [GaussTerm.simple(1, 1.0)]))
    x = Poly.variable(2, 0)
    s = make_state(2, [GaussTerm.simple(2, 1.0, A=[[0, 0.5], [0.5, 0]], poly=x)])
    with pytest.raises(DeltaDerivativeUnsupported):
        integrate_var(s, 0)
    with pytest.raises(ArityMismatch):
        integrate_var(s, 2)


def test_delta_elimination():
    # integral of delta(x - 0.5) exp(-x^2) = exp(-1/4)
    g = make_state(1, [GaussTerm.simple(1, 1.0, A=[[1j]])])
    amp = inner_product(position_state(0.5), g)
    assert abs(amp.value - math.exp(-0.25)) < 1e-14


@given(st.floats(-3, 3), st.floats(-3, 3))
def test_kronecker_agreement(p1, p2):
    # labels closer than the equality tolerance count as equal
    assume(p1 == p2 or abs(p1 - p2) > 1e-9)
    amp = inner_product(momentum_state(p1), momentum_state(p2))
    if p1 == p2:
        assert amp == DeltaNormalized(1 + 0j)
    else:
        assert amp == Finite(0j)


@given(st.floats(-3, 3), st.floats(-3, 3))
def test_position_momentum_functional(x0, p):
    amp = inner_product(position_state(x0), momentum_state(p))
    assert abs(amp.value - cmath.exp(1j * p * x0) / math.sqrt(2 * math.pi)) < 1e-12


@given(gaussians(), gaussians(), gaussians(), complexes)
def test_sesquilinearity(u, v, w, a):
    lhs = inner_product(u, add(v, scale(a, w))).value
    rhs = inner_product(u, v).value + a * inner_product(u, w).value
    assert abs(lhs - rhs) < 1e-10
    lhs = inner_product(scale(a, u), v).value
    assert abs(lhs - a.conjugate() * inner_product(u, v).value) < 1e-10
    assert abs(inner_product(u, v).value - inner_product(v, u).value.conjugate()) < 1e-12


@given(proper_states())
def test_positivity(s):
    amp = inner_product(s, s)
    assert isinstance(amp, Finite)
    assert abs(amp.value.imag) <= 1e-10 * max(1.0, abs(amp.value))
    assert amp.value.real >= -1e-12


@given(gaussians())
def test_gaussians_are_normalized(g):
    assert abs(inner_product(g, g).value - 1) < 1e-12
    assert conjugate(g).rigging == g.rigging
