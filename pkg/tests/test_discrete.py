import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import gaussians
from diraclogic.discrete import (CSV_COLUMNS, LatticeModel, born_distribution, convergence_report,
                                 discrete_commutator_phase, discrete_evolve, discrete_inner,
                                 discrete_modulation, discrete_probability, discrete_translation,
                                 discrete_weyl, eig_surjection_check, hamiltonian, interpret,
                                 is_monotone, momentum_operator, position_operator, report_csv,
                                 spectral_resolution_check)
from diraclogic.errors import (AmbiguousDelta, DimensionMismatch, IncommensurateParameter,
                               NotHermitian, NotNormalized, UnsupportedArity)
from diraclogic.operators import (Free, Harmonic, evolve, gaussian_state, momentum_state,
                                  position_state)
from diraclogic.algebra import tensor

sizes = st.sampled_from([8, 16, 32, 64])


@given(sizes)
def test_dft_unitary_and_self_dual(N):
    m = LatticeModel(N)
    F = m.dft()
    np.testing.assert_allclose(F @ F.conj().T, np.eye(N), atol=1e-12)
    np.testing.assert_allclose(m.momenta, m.points)
    assert math.isclose(m.spacing ** 2 * N, 2 * math.pi)


def test_model_validation():
    for N in (0, 1, 7):
        with pytest.raises(ValueError):
            LatticeModel(N)


@given(gaussians())
def test_interpreted_gaussians_normalized(g):
    m = LatticeModel(256)
    u = interpret(g, m)
    assert abs(discrete_inner(u, u, m) - 1) < 1e-9


def test_position_state_interpretation():
    m = LatticeModel(64)
    j, tie = m.nearest_index(0.5)
    assert not tie
    u = interpret(position_state(0.5), m)
    assert np.count_nonzero(u) == 1 and abs(u[j] - 1 / m.spacing) < 1e-12
    g = gaussian_state(0.2, 1.0)
    # the lattice delta evaluates at the nearest site
    assert abs(discrete_inner(u, interpret(g, m), m) - g.evaluate([[m.points[j]]])[0]) < 1e-12


def test_ties():
    m = LatticeModel(8)
    x0 = m.points[4] + m.spacing / 2
    with pytest.raises(AmbiguousDelta):
        interpret(position_state(x0), m, strict_ties=True)
    u = interpret(position_state(x0), m)
    assert u[4] != 0


def test_interpret_arity():
    with pytest.raises(UnsupportedArity):
        interpret(tensor(gaussian_state(0, 1), gaussian_state(0, 1)), LatticeModel(8))
    with pytest.raises(DimensionMismatch):
        discrete_inner(np.ones(4), np.ones(8), LatticeModel(8))


@given(sizes, st.integers(-3, 3), st.integers(-3, 3))
def test_commutator_phase_commensurate(N, s, r):
    m = LatticeModel(N)
    a, b = s * m.spacing, r * m.spacing
    assert abs(discrete_commutator_phase(m, a, b) - cmath.exp(1j * a * b)) < 1e-12
    W = discrete_weyl(m, a, b)
    np.testing.assert_allclose(W @ W.conj().T, np.eye(N), atol=1e-12)


def test_incommensurate():
    m = LatticeModel(16)
    with pytest.raises(IncommensurateParameter):
        discrete_translation(m, 0.1)
    with pytest.raises(IncommensurateParameter):
        discrete_modulation(m, 0.1)


@pytest.mark.parametrize("N", [8, 64])
def test_surjection(N):
    m = LatticeModel(N)
    rep = eig_surjection_check(m, m.spacing)
    assert rep.surjective and rep.max_defect < 1e-10
    assert sum(len(labels) for _, labels in rep.table) == N


def test_observables_hermitian():
    m = LatticeModel(32)
    for op in (position_operator(m), momentum_operator(m), hamiltonian(m, Harmonic())):
        assert spectral_resolution_check(op) < 1e-10
    with pytest.raises(NotHermitian):
        spectral_resolution_check(np.array([[0, 1], [0, 0]]))


def test_discrete_evolution_matches_symbolic():
    m = LatticeModel(512)
    g = gaussian_state(0.7, 0.9, 0.4)
    for h in (Harmonic(1.0, 1.0), Free(1.0)):
        U = discrete_evolve(m, h, 0.8)
        np.testing.assert_allclose(U @ U.conj().T, np.eye(m.N), atol=1e-10)
        err = np.max(np.abs(U @ interpret(g, m) - interpret(evolve(h, 0.8, g), m)))
        assert err < 1e-4


@given(gaussians())
def test_born_distribution(g):
    m = LatticeModel(128)
    psi = interpret(g, m)
    probs = [p for _, p in born_distribution(hamiltonian(m, Harmonic()), psi, m)]
    assert abs(sum(probs) - 1) < 1e-9
    assert all(0 <= p <= 1 + 1e-12 for p in probs)
    assert 0 <= discrete_probability(psi, psi, m) <= 1 + 1e-9


def test_probability_requires_normalization():
    m = LatticeModel(16)
    with pytest.raises(NotNormalized):
        discrete_probability(np.ones(16), 2 * np.ones(16), m)


def test_convergence_report_and_csv():
    phi, psi = gaussian_state(0, 0.4), gaussian_state(0.2, 0.45, 0.5)
    rows = convergence_report(phi, psi, [1024, 2, 64, 256])
    assert [r.N for r in rows] == [2, 64, 256, 1024]
    assert not rows[0].resolved and rows[-1].resolved
    assert is_monotone(rows) and rows[-1].abs_error < 1e-6
    text = report_csv(rows)
    lines = text.splitlines()
    assert lines[0].split(",") == list(CSV_COLUMNS)
    assert len(lines) == 5 and lines[1].startswith("2,")
    with pytest.raises(NotNormalized):
        convergence_report(momentum_state(1), momentum_state(1), [8])


def test_csv_formatting_is_fixed():
    rows = convergence_report(gaussian_state(0, 1), gaussian_state(1, 1), [64])
    assert report_csv(rows) == report_csv(rows)
    field = report_csv(rows).splitlines()[1].split(",")[1]
    assert float(field) == rows[0].discrete.real
