"""Finite lattice models of the continuum structure.

An ``N``-point model uses the self-dual spacing ``delta = sqrt(2 pi / N)``, so
that translation by one site and modulation by ``exp(i delta x)`` are the clock
and shift pair and the centered DFT intertwines them.
"""
from __future__ import annotations

import cmath
import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .algebra import DEFAULT_CONFIG, Finite, State
from .config import EvalConfig
from .errors import (AmbiguousDelta, DimensionMismatch, IncommensurateParameter, NotHermitian,
                     NotNormalized, UnsupportedArity)
from .operators import Free, Harmonic
from .quantifier import inner_product

CSV_COLUMNS = ("N", "discrete_value_re", "discrete_value_im", "symbolic_value_re",
               "symbolic_value_im", "abs_error", "resolved")


@dataclass(frozen=True)
class LatticeModel:
    N: int

    def __post_init__(self):
        if self.N < 2 or self.N % 2:
            raise ValueError(f"lattice size must be even and >= 2, got {self.N}")

    @property
    def spacing(self) -> float:
        return math.sqrt(2 * math.pi / self.N)

    @property
    def points(self) -> np.ndarray:
        return (np.arange(self.N) - self.N // 2) * self.spacing

    # dual grid of wave numbers; coincides with ``points`` for the self-dual lattice
    momenta = points

    def nearest_index(self, x0: float):
        """``(index, tie)``; ties go to the lower index."""
        pos = x0 / self.spacing + self.N // 2
        j = math.floor(pos)
        frac = pos - j
        tie = abs(frac - 0.5) < 1e-12
        if frac > 0.5 and not tie:
            j += 1
        return int(j) % self.N, tie

    def dft(self) -> np.ndarray:
        """Unitary centered DFT, ``F[k, j] = exp(-i p_k x_j) / sqrt(N)``."""
        return np.exp(-1j * np.outer(self.momenta, self.points)) / math.sqrt(self.N)


# ---------------------------------------------------------------------------
# interpretation functor
# ---------------------------------------------------------------------------

def interpret(s: State, model: LatticeModel, strict_ties: bool = False) -> np.ndarray:
    """Sample an arity-1 state on the lattice.

    A delta ``delta(x - x0)`` becomes ``1/spacing`` at the nearest site (times
    the rest of its term evaluated there), so the discrete inner product
    reproduces point evaluation.
    """
    if s.arity != 1:
        raise UnsupportedArity(f"lattice models interpret arity-1 states, got {s.arity}")
    x = model.points
    out = np.zeros(model.N, dtype=complex)
    smooth = [t for t in s.terms if not t.deltas]
    if smooth:
        A = np.array([t.exponent.A[0, 0] for t in smooth])
        B = np.array([t.exponent.b[0] for t in smooth])
        deg = max(t.poly.degree() for t in smooth)
        P = np.zeros((len(smooth), deg + 1), dtype=complex)
        for i, t in enumerate(smooth):
            c = t.poly.univariate_coeffs() * t.coeff * cmath.exp(1j * t.exponent.c)
            P[i, :c.size] = c
        out += kernels.sample_sum(x, A, B, P)
    for t in s.terms:
        if not t.deltas:
            continue
        (d,) = t.deltas
        r = d.row(1)[0]
        x0 = -d.offset / r
        j, tie = model.nearest_index(x0)
        if tie and strict_ties:
            raise AmbiguousDelta(f"x0={x0} is equidistant from two lattice points")
        rest = complex(t.coeff / abs(r) * t.poly.evaluate([[x[j]]])[0]
                       * cmath.exp(1j * (t.exponent.A[0, 0] * x[j] ** 2 + t.exponent.b[0] * x[j]
                                         + t.exponent.c)))
        out[j] += rest / model.spacing
    return out


def discrete_inner(u: np.ndarray, v: np.ndarray, model: LatticeModel) -> complex:
    u = np.asarray(u)
    v = np.asarray(v)
    if u.shape != (model.N,) or v.shape != (model.N,):
        raise DimensionMismatch(f"vectors of shape {u.shape}, {v.shape} for N={model.N}")
    return complex(np.vdot(u, v) * model.spacing)


# ---------------------------------------------------------------------------
# Weyl operators
# ---------------------------------------------------------------------------

def _steps(value: float, unit: float, what: str) -> int:
    k = value / unit
    if abs(k - round(k)) > 1e-9 * max(1.0, abs(k)):
        raise IncommensurateParameter(f"{what}={value} is not a multiple of the lattice unit {unit}")
    return int(round(k))


def discrete_translation(model: LatticeModel, a: float) -> np.ndarray:
    """``(T psi)_j = psi_{j+s}`` cyclically, ``s = a / spacing``."""
    s = _steps(a, model.spacing, "a")
    return np.roll(np.eye(model.N, dtype=complex), s, axis=1)


def discrete_modulation(model: LatticeModel, b: float) -> np.ndarray:
    _steps(b, 2 * math.pi / (model.N * model.spacing), "b")
    return np.diag(np.exp(1j * b * model.points))


def discrete_weyl(model: LatticeModel, a: float, b: float) -> np.ndarray:
    """Lattice version of ``exp(i a P) exp(i b Q)``."""
    return discrete_translation(model, a) @ discrete_modulation(model, b)


def discrete_commutator_phase(model: LatticeModel, a: float, b: float) -> complex:
    """Scalar ``c`` with ``T M = c M T`` (read off a nonzero entry)."""
    T = discrete_translation(model, a)
    M = discrete_modulation(model, b)
    left, right = T @ M, M @ T
    i, j = np.unravel_index(np.argmax(np.abs(right)), right.shape)
    return complex(left[i, j] / right[i, j])


@dataclass(frozen=True)
class SurjectionReport:
    table: tuple  # (eigenvalue, momentum labels) per eigenspace
    max_defect: float
    surjective: bool


def eig_surjection_check(model: LatticeModel, a: float, tol: float = 1e-8) -> SurjectionReport:
    """Match eigenvectors of the lattice translation with continuum plane waves.

    Every dual-grid momentum ``p`` should lie in the eigenspace of eigenvalue
    ``exp(i p a)``; the defect is the distance from the interpreted plane wave
    to that eigenspace, in the lattice norm.
    """
    from .operators import momentum_state

    T = discrete_translation(model, a)
    vals, vecs = np.linalg.eig(T)
    groups: list[list] = []
    for i, lam in enumerate(vals):
        for g in groups:
            if abs(g[0] - lam) < tol:
                g[1].append(i)
                break
        else:
            groups.append([lam, [i]])
    bases = []
    for lam, idx in groups:
        q, _ = np.linalg.qr(vecs[:, idx])
        bases.append((lam, q))
    table = {i: [] for i in range(len(groups))}
    defect = 0.0
    covered = 0
    for p in model.momenta:
        u = interpret(momentum_state(float(p)), model)
        u = u / math.sqrt(discrete_inner(u, u, model).real)
        target = cmath.exp(1j * p * a)
        gi = min(range(len(bases)), key=lambda g: abs(bases[g][0] - target))
        lam, q = bases[gi]
        if abs(lam - target) > tol:
            defect = math.inf
            continue
        proj = q @ (q.conj().T @ u)
        defect = max(defect, math.sqrt(discrete_inner(u - proj, u - proj, model).real))
        table[gi].append(float(p))
        covered += 1
    rows = tuple((complex(bases[g][0]), tuple(table[g])) for g in range(len(groups)))
    dims = sum(q.shape[1] for _, q in bases)
    # every eigenspace is hit, and the plane waves fill it
    surjective = (covered == model.N and all(len(table[g]) == bases[g][1].shape[1] for g in table)
                  and dims == model.N)
    return SurjectionReport(rows, defect, surjective)


# ---------------------------------------------------------------------------
# observables, evolution, measurement
# ---------------------------------------------------------------------------

def position_operator(model: LatticeModel) -> np.ndarray:
    return np.diag(model.points).astype(complex)


def momentum_operator(model: LatticeModel, hbar: float = 1.0) -> np.ndarray:
    F = model.dft()
    return hbar * F.conj().T @ np.diag(model.momenta) @ F


def hamiltonian(model: LatticeModel, h, hbar: float = 1.0) -> np.ndarray:
    F = model.dft()
    if isinstance(h, (Free, Harmonic)):
        H = F.conj().T @ np.diag((hbar * model.momenta) ** 2 / (2 * h.m)) @ F
    else:
        raise TypeError(f"unknown Hamiltonian {h!r}")
    if isinstance(h, Harmonic):
        H = H + np.diag(0.5 * h.m * h.omega ** 2 * model.points ** 2)
    return 0.5 * (H + H.conj().T)


def discrete_evolve(model: LatticeModel, h, t: float, hbar: float = 1.0) -> np.ndarray:
    """``exp(-i H t / hbar)`` by dense eigendecomposition."""
    w, V = np.linalg.eigh(hamiltonian(model, h, hbar))
    return (V * np.exp(-1j * w * t / hbar)) @ V.conj().T


def spectral_resolution_check(F: np.ndarray, herm_tol: float = 1e-10) -> float:
    """Residual of ``F = sum f |f><f|`` and ``sum |f><f| = I`` (max-entry norm)."""
    F = np.asarray(F, dtype=complex)
    if np.max(np.abs(F - F.conj().T), initial=0.0) > herm_tol:
        raise NotHermitian("operator is not Hermitian")
    w, V = np.linalg.eigh(F)
    recon = (V * w) @ V.conj().T
    ident = V @ V.conj().T
    return float(max(np.max(np.abs(recon - F)), np.max(np.abs(ident - np.eye(F.shape[0])))))


def _check_normalized(psi, model, tol):
    norm = discrete_inner(psi, psi, model).real
    if abs(norm - 1) > tol:
        raise NotNormalized(f"lattice norm^2 {norm:.12g} differs from 1")


def discrete_probability(f: np.ndarray, psi: np.ndarray, model: LatticeModel, tol: float = 1e-8) -> float:
    _check_normalized(psi, model, tol)
    return abs(discrete_inner(f, psi, model)) ** 2


def born_distribution(F: np.ndarray, psi: np.ndarray, model: LatticeModel, tol: float = 1e-8) -> list:
    """``(eigenvalue, probability)`` per eigenvector of Hermitian ``F``."""
    _check_normalized(psi, model, tol)
    w, V = np.linalg.eigh(np.asarray(F, dtype=complex))
    # eigenvectors normalized in the lattice measure are V / sqrt(spacing)
    amps = (V.conj().T @ psi) * math.sqrt(model.spacing)
    return [(float(e), float(abs(a) ** 2)) for e, a in zip(w, amps)]


# ---------------------------------------------------------------------------
# convergence to the continuum
# ---------------------------------------------------------------------------

def min_width(s: State) -> float:
    """Smallest Gaussian width among the terms (``inf`` for non-decaying terms)."""
    widths = [1.0 / math.sqrt(2 * t.exponent.A[0, 0].imag) for t in s.terms
              if not t.deltas and t.exponent.A[0, 0].imag > 0]
    return min(widths, default=math.inf)


@dataclass(frozen=True)
class ConvergenceRow:
    N: int
    discrete: complex
    symbolic: complex
    abs_error: float
    resolved: bool


def convergence_report(phi: State, psi: State, Ns: Iterable[int],
                       cfg: EvalConfig = DEFAULT_CONFIG) -> list:
    """Lattice inner products against the symbolic value, one row per ``N``."""
    amp = inner_product(phi, psi, cfg)
    if not isinstance(amp, Finite):
        raise NotNormalized("convergence report needs a finite symbolic amplitude")
    width = min(min_width(phi), min_width(psi))
    rows = []
    for N in sorted(Ns):
        model = LatticeModel(N)
        val = discrete_inner(interpret(phi, model), interpret(psi, model), model)
        rows.append(ConvergenceRow(N, val, amp.value, abs(val - amp.value), width >= 4 * model.spacing))
    return rows


def is_monotone(rows: Sequence[ConvergenceRow], floor: float = 1e-12) -> bool:
    """Errors non-increasing from the first resolved row, up to rounding ``floor``."""
    errs = [r.abs_error for r in rows if r.resolved]
    return all(b <= a + floor for a, b in zip(errs, errs[1:]))


def _fmt(x: float) -> str:
    x = float(x)
    return format(0.0 if x == 0 else x, ".17g")


def report_csv(rows: Iterable[ConvergenceRow], extra: dict | None = None) -> str:
    buf = io.StringIO()
    extra = extra or {}
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS + tuple(extra))
    for r in rows:
        writer.writerow([r.N, _fmt(r.discrete.real), _fmt(r.discrete.imag), _fmt(r.symbolic.real),
                         _fmt(r.symbolic.imag), _fmt(r.abs_error), str(r.resolved).lower(),
                         *extra.values()])
    return buf.getvalue()
