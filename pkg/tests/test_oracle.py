import cmath
import math

import numpy as np
import pytest
from hypothesis import example, given, settings, strategies as st

from conftest import proper_states
from diraclogic.algebra import (DeltaNormalized, Finite, GaussTerm, conjugate, make_state,
                                multiply_pointwise)
from diraclogic.errors import (IncomparableDelta, InsufficientPoints, NoConvergence,
                               UnsupportedArity)
from diraclogic.operators import chirp_state, gaussian_state, momentum_state, position_state
from diraclogic.oracle import (_panel_edges, compare_amplitude, eps_extrapolate,
                               extrapolated_integral, is_oscillatory, numeric_integrate)
from diraclogic.quantifier import integrate_all, inner_product


@settings(max_examples=200)
@given(proper_states())
def test_oracle_agrees_with_symbolic_integral(s):
    symbolic = integrate_all(s).scalar() if not integrate_all(s).is_zero else 0j
    numeric, err = numeric_integrate(s)
    assert compare_amplitude(Finite(symbolic), numeric, 1e-8).passed
    assert err < 1e-10


@settings(max_examples=50)
@given(proper_states(max_terms=2), proper_states(max_terms=2))
def test_oracle_agrees_with_inner_product(u, v):
    amp = inner_product(u, v)
    numeric, _ = numeric_integrate(multiply_pointwise(conjugate(u), v))
    assert compare_amplitude(amp, numeric, 1e-8).passed


@pytest.mark.slow
@pytest.mark.parametrize("alpha,beta,gamma", [(1.0, 0.0, 0.0), (-0.7, 0.4, 1.0), (2.5, -1.2, 0.3)])
def test_fresnel_extrapolation(alpha, beta, gamma):
    s = chirp_state(alpha, beta, gamma)
    symbolic = integrate_all(s).scalar()
    assert is_oscillatory(s)
    assert compare_amplitude(Finite(symbolic), extrapolated_integral(s), 1e-6).passed


def test_damped_value_matches_closed_form():
    # with damping exp(-eps x^2) the Fresnel integral is exact: sqrt(pi/(eps - i alpha))
    s = chirp_state(1.0)
    eps = 1e-2
    value, _ = numeric_integrate(s, eps=eps)
    assert abs(value - cmath.sqrt(math.pi / (eps - 1j))) < 1e-9


def test_history_is_nested():
    _, _, history = numeric_integrate(gaussian_state(0, 1), return_history=True)
    widths = [w for w, _, _ in history]
    assert widths == sorted(widths) and len(history) >= 2


def test_no_convergence_for_constant():
    with pytest.raises(NoConvergence):
        numeric_integrate(make_state(1, [GaussTerm.simple(1, 1.0)]))


def test_undamped_oscillatory_fails():
    with pytest.raises(NoConvergence):
        numeric_integrate(chirp_state(1.0))


def test_unsupported_inputs():
    with pytest.raises(UnsupportedArity):
        numeric_integrate(position_state(0.0))
    with pytest.raises(ValueError):
        numeric_integrate(gaussian_state(0, 1), eps=-1.0)


def test_extrapolation_is_exact_for_quadratics():
    f = lambda e: 2 + 3j * e - 5 * e * e
    assert abs(eps_extrapolate([(e, f(e)) for e in (1e-1, 1e-2, 1e-3)]) - 2) < 1e-12
    with pytest.raises(InsufficientPoints):
        eps_extrapolate([(1e-2, 1), (1e-3, 1)])
    with pytest.raises(ValueError):
        eps_extrapolate([(1e-3, 1), (1e-2, 1), (1e-4, 1)])


def test_compare_amplitude():
    assert compare_amplitude(Finite(1.0), 1.0 + 1e-9, 1e-8).passed
    assert not compare_amplitude(Finite(1.0), 1.1, 1e-8).passed
    assert compare_amplitude(Finite(0), 0, 1e-8).passed
    with pytest.raises(IncomparableDelta):
        compare_amplitude(DeltaNormalized(1), 1.0, 1e-3)


@given(st.floats(0.0, 10.0), st.floats(0.1, 10.0), st.floats(0.0, 4.0), st.floats(0.0, 3.0))
@example(0.0, 1.0, 4.0, 0.0)
@example(0.0, 3.0, 1e-12, 0.0)
@example(0.0, 1.0, 1.1125369292536007e-308, 1.0)
def test_panels_respect_local_frequency(a, length, slope, offset):
    b = a + length
    hmax = 1.0
    edges = _panel_edges(a, b, slope, offset, hmax)
    assert edges[0] == a and edges[-1] == b
    widths = np.diff(edges)
    assert np.all(widths > 0)
    freq = slope * edges[1:] + offset
    assert np.all(widths <= np.minimum(math.pi / (4 * np.maximum(freq, 1e-300)), hmax) * (1 + 1e-9))


def test_momentum_overlap_is_oscillatory():
    s = multiply_pointwise(conjugate(momentum_state(0.0)), chirp_state(0.5))
    assert is_oscillatory(s)
    assert not is_oscillatory(gaussian_state(0, 1))
