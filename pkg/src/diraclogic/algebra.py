"""Symbolic quadratic-phase states and their closed algebraic operations.

A :class:`GaussTerm` on variables ``x0..x{n-1}`` denotes

    coeff * prod_k delta(r_k . x + s_k) * poly(x) * exp(i * (x.A.x + b.x + c))

and a :class:`State` is a finite sum of such terms. Nothing here integrates;
see :mod:`diraclogic.quantifier` for that.
"""
from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .config import EvalConfig
from .errors import (ArityMismatch, DegreeOverflow, DependentDeltas, NotNormalizable,
                     SingularSubstitution, UnboundedExponent, ZeroState)
from .poly import Poly

DEFAULT_CONFIG = EvalConfig()


def _close(a, b, tol):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def _frozen(arr, dtype=complex):
    out = np.array(arr, dtype=dtype)
    out.setflags(write=False)
    return out


# ---------------------------------------------------------------------------
# atoms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearForm:
    """``sum_j coeffs[j] * x_j + constant``; zero coefficients are never stored."""

    coeffs: tuple = ()
    constant: complex = 0j

    @classmethod
    def from_vector(cls, vec, constant=0j, tol=0.0) -> "LinearForm":
        vec = np.asarray(vec)
        scale = max(1.0, float(np.max(np.abs(vec), initial=0.0)))
        pairs = tuple((j, complex(c)) for j, c in enumerate(vec) if abs(c) > tol * scale)
        return cls(pairs, complex(constant))

    def vector(self, n: int) -> np.ndarray:
        out = np.zeros(n, dtype=complex)
        for j, c in self.coeffs:
            out[j] = c
        return out


@dataclass(frozen=True)
class DeltaFactor:
    """Dirac delta of a real linear form in the term's variables."""

    form: LinearForm

    def row(self, n: int) -> np.ndarray:
        return self.form.vector(n).real

    @property
    def offset(self) -> float:
        return self.form.constant.real


@dataclass(frozen=True, eq=False)
class QuadExponent:
    """``F(x) = x.A.x + b.x + c``; a term carries ``exp(i F)``."""

    A: np.ndarray
    b: np.ndarray
    c: complex = 0j

    def __post_init__(self):
        A = np.array(self.A, dtype=complex)
        object.__setattr__(self, "A", _frozen((A + A.T) / 2))
        object.__setattr__(self, "b", _frozen(self.b))
        object.__setattr__(self, "c", complex(self.c))

    @classmethod
    def zero(cls, n: int) -> "QuadExponent":
        return cls(np.zeros((n, n)), np.zeros(n), 0j)

    @property
    def arity(self) -> int:
        return self.b.shape[0]

    def __add__(self, other: "QuadExponent") -> "QuadExponent":
        return QuadExponent(self.A + other.A, self.b + other.b, self.c + other.c)

    def conjugate(self) -> "QuadExponent":
        return QuadExponent(-self.A.conj(), -self.b.conj(), -self.c.conjugate())

    def approx_equal(self, other: "QuadExponent", tol: float) -> bool:
        return (self.A.shape == other.A.shape
                and all(_close(x, y, tol) for x, y in zip(self.A.ravel(), other.A.ravel()))
                and all(_close(x, y, tol) for x, y in zip(self.b, other.b))
                and _close(self.c, other.c, tol))


# ---------------------------------------------------------------------------
# terms
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GaussTerm:
    coeff: complex
    deltas: tuple
    poly: Poly
    exponent: QuadExponent

    @property
    def arity(self) -> int:
        return self.exponent.arity

    @classmethod
    def simple(cls, n, coeff=1.0, A=None, b=None, deltas=(), poly=None) -> "GaussTerm":
        A = np.zeros((n, n)) if A is None else A
        b = np.zeros(n) if b is None else b
        return cls(complex(coeff), tuple(deltas), poly or Poly.constant(n),
                   QuadExponent(np.atleast_2d(A).reshape(n, n), np.asarray(b).reshape(n)))

    def delta_matrix(self) -> tuple:
        n = self.arity
        R = np.array([d.row(n) for d in self.deltas], dtype=float).reshape(len(self.deltas), n)
        k = np.array([d.offset for d in self.deltas], dtype=float)
        return R, k

    def is_proper(self, tol: float = 0.0) -> bool:
        if self.deltas:
            return False
        if self.arity == 0:
            return True
        return float(np.linalg.eigvalsh(self.exponent.A.imag).min()) > tol

    def same_support(self, other: "GaussTerm", tol: float) -> bool:
        """Same deltas and exponent; prefactors and coefficients may differ."""
        if self.arity != other.arity or len(self.deltas) != len(other.deltas):
            return False
        R1, k1 = self.delta_matrix()
        R2, k2 = other.delta_matrix()
        if not (all(_close(a, b, tol) for a, b in zip(R1.ravel(), R2.ravel()))
                and all(_close(a, b, tol) for a, b in zip(k1, k2))):
            return False
        return self.exponent.approx_equal(other.exponent, tol)

    def like(self, other: "GaussTerm", tol: float) -> bool:
        """Same deltas, prefactor and exponent; coefficients may differ."""
        return self.same_support(other, tol) and self.poly.approx_equal(other.poly, tol)

    def sort_key(self):
        def r(z):
            z = complex(z)
            return (round(z.real, 9), round(z.imag, 9))

        R, k = self.delta_matrix()
        return (len(self.deltas),
                tuple(r(x) for x in R.ravel()), tuple(r(x) for x in k),
                tuple((key, r(c)) for key, c in self.poly.items()),
                tuple(r(x) for x in self.exponent.A.ravel()),
                tuple(r(x) for x in self.exponent.b))

    def with_coeff(self, coeff) -> "GaussTerm":
        return GaussTerm(complex(coeff), self.deltas, self.poly, self.exponent)

    def evaluate(self, points) -> np.ndarray:
        """Pointwise values at ``points`` of shape (m, arity); delta-free only."""
        if self.deltas:
            raise ValueError("cannot evaluate a delta-bearing term pointwise")
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        A, b = self.exponent.A, self.exponent.b
        F = np.einsum("mi,ij,mj->m", pts, A, pts) + pts @ b + self.exponent.c
        return self.coeff * self.poly.evaluate(pts) * np.exp(1j * F)


class Rigging(str, enum.Enum):
    PROPER = "Proper"
    GENERALIZED = "Generalized"


@dataclass(frozen=True, eq=False)
class State:
    """A finite sum of :class:`GaussTerm` of common arity.

    Build states through :func:`make_state` (or the constructors in
    :mod:`diraclogic.operators`); the raw constructor does not canonicalize.
    """

    arity: int
    terms: tuple = ()

    @classmethod
    def zero(cls, arity: int) -> "State":
        return cls(arity, ())

    @classmethod
    def constant(cls, value: complex) -> "State":
        return make_state(0, [GaussTerm.simple(0, value)])

    @property
    def rigging(self) -> Rigging:
        return Rigging.PROPER if all(t.is_proper() for t in self.terms) else Rigging.GENERALIZED

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def scalar(self) -> complex:
        """Value of an arity-0 state."""
        if self.arity:
            raise ArityMismatch(f"state has arity {self.arity}, not 0")
        return complex(sum(t.coeff * t.poly.constant_term() * cmath.exp(1j * t.exponent.c)
                           for t in self.terms))

    def evaluate(self, points) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if self.arity == 1 and pts.shape[0] == 1 and pts.shape[1] != 1:
            pts = pts.T
        out = np.zeros(pts.shape[0], dtype=complex)
        for t in self.terms:
            out += t.evaluate(pts)
        return out

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(-1.0, other))

    def __rmul__(self, c):
        return scale(c, self)

    def __neg__(self):
        return scale(-1.0, self)

    def __repr__(self):
        return f"State(arity={self.arity}, terms={len(self.terms)}, rigging={self.rigging.value})"


# ---------------------------------------------------------------------------
# amplitudes
# ---------------------------------------------------------------------------

class Amplitude:
    """Result of a complete inner product."""


@dataclass(frozen=True)
class Finite(Amplitude):
    value: complex

    def conjugate(self) -> "Finite":
        return Finite(self.value.conjugate())


@dataclass(frozen=True)
class DeltaNormalized(Amplitude):
    """Self-overlap of generalized states under the Kronecker agreement."""

    phase: complex

    def __post_init__(self):
        if not 0 < abs(self.phase) < float("inf"):
            raise ValueError("delta-normalized phase must have finite nonzero modulus")

    def conjugate(self) -> "DeltaNormalized":
        return DeltaNormalized(self.phase.conjugate())


# ---------------------------------------------------------------------------
# canonical form
# ---------------------------------------------------------------------------

class _Coincident(Exception):
    pass


def _reduce_deltas(R: np.ndarray, k: np.ndarray, tol: float):
    """Row-reduce the delta system.

    Returns ``(R, k, jacobian, coincident)`` with ``prod delta(R x + k)`` equal
    to ``jacobian * prod delta(R' x + k')`` times ``delta(0) ** coincident``;
    ``None`` when two deltas have parallel, disjoint supports (the product is 0).
    """
    R = np.array(R, dtype=float)
    k = np.array(k, dtype=float)
    d, n = R.shape
    scale = max(1.0, float(np.max(np.abs(R), initial=0.0)))
    jac = 1.0
    row = 0
    for col in range(n):
        if row == d:
            break
        piv = row + int(np.argmax(np.abs(R[row:, col])))
        if abs(R[piv, col]) <= tol * scale:
            continue
        if piv != row:
            R[[row, piv]] = R[[piv, row]]
            k[[row, piv]] = k[[piv, row]]
        p = R[row, col]
        jac /= abs(p)
        R[row] /= p
        k[row] /= p
        R[row, col] = 1.0
        for other in range(d):
            if other != row and R[other, col] != 0.0:
                f = R[other, col]
                R[other] -= f * R[row]
                k[other] -= f * k[row]
                R[other, col] = 0.0
        row += 1
    coincident = 0
    for extra in range(row, d):
        if abs(k[extra]) > tol * max(1.0, float(np.max(np.abs(k)))):
            return None
        coincident += 1
    R, k = R[:row], k[:row]
    R[np.abs(R) <= tol * scale] = 0.0
    return R, k, jac, coincident


def _deltas_from(R: np.ndarray, k: np.ndarray) -> tuple:
    return tuple(DeltaFactor(LinearForm.from_vector(r, complex(s))) for r, s in zip(R, k))


def _check_psd(A: np.ndarray, tol: float):
    if A.shape[0] == 0:
        return
    im = A.imag
    lo = float(np.linalg.eigvalsh(im).min())
    if lo < -max(1e-9, tol) * max(1.0, float(np.max(np.abs(A)))):
        raise UnboundedExponent(f"imaginary part of quadratic form has eigenvalue {lo:.3g} < 0")


def canonical_term(term: GaussTerm, cfg: EvalConfig = DEFAULT_CONFIG, coincident: str = "raise"):
    """Canonical representative of a term, or ``None`` if it vanishes.

    With ``coincident="count"`` the pair ``(term, n)`` is returned where ``n``
    counts deltas of zero argument that were divided out (Kronecker agreement).
    """
    tol = cfg.eq_tol
    coeff = complex(term.coeff) * cmath.exp(1j * term.exponent.c)
    ncoinc = 0
    deltas = term.deltas
    if deltas:
        R, k = term.delta_matrix()
        reduced = _reduce_deltas(R, k, tol)
        if reduced is None:
            return (None, 0) if coincident == "count" else None
        R, k, jac, ncoinc = reduced
        if ncoinc and coincident != "count":
            raise DependentDeltas("delta factors are linearly dependent with coinciding supports")
        coeff *= jac
        deltas = _deltas_from(R, k)
    poly = term.poly.chop(tol)
    if poly.degree() > cfg.max_degree:
        raise DegreeOverflow(f"polynomial degree {poly.degree()} exceeds max_degree={cfg.max_degree}")
    if poly.is_zero() or coeff == 0:
        return (None, ncoinc) if coincident == "count" else None
    lead, poly = poly.monic()
    coeff *= lead
    _check_psd(term.exponent.A, tol)
    out = GaussTerm(coeff, deltas, poly, QuadExponent(term.exponent.A, term.exponent.b, 0j))
    return (out, ncoinc) if coincident == "count" else out


def merge_terms(terms: Iterable[GaussTerm], tol: float) -> list:
    """Combine terms sharing deltas and exponent into one (summed prefactor).

    Cancelled terms are dropped and the result is sorted canonically.
    """
    buckets: list[list] = []
    for t in terms:
        part = t.poly.scale(t.coeff)
        for b in buckets:
            if b[0].same_support(t, tol):
                b[1] = b[1] + part
                b[2] = max(b[2], part.max_abs())
                break
        else:
            buckets.append([t, part, part.max_abs()])
    out = []
    for t, poly, mag in buckets:
        poly = Poly(poly.arity, [(k, c) for k, c in poly.items() if abs(c) > tol * mag])
        if poly.is_zero():
            continue
        lead, poly = poly.monic()
        out.append(GaussTerm(lead, t.deltas, poly, t.exponent))
    out.sort(key=GaussTerm.sort_key)
    return out


def make_state(arity: int, terms: Iterable[GaussTerm], cfg: EvalConfig = DEFAULT_CONFIG) -> State:
    canon = []
    for t in terms:
        if t.arity != arity:
            raise ArityMismatch(f"term of arity {t.arity} in a state of arity {arity}")
        c = canonical_term(t, cfg)
        if c is not None:
            canon.append(c)
    return State(arity, tuple(merge_terms(canon, cfg.eq_tol)))


def canonicalize(s: State, cfg: EvalConfig = DEFAULT_CONFIG) -> State:
    return make_state(s.arity, s.terms, cfg)


def states_close(s1: State, s2: State, tol: float = 1e-9) -> bool:
    """Term-wise comparison after canonicalization: same structure, coefficients within ``tol``."""
    if s1.arity != s2.arity:
        return False
    cfg = EvalConfig(eq_tol=min(tol, 1e-6))
    a = list(canonicalize(s1, cfg).terms)
    b = list(canonicalize(s2, cfg).terms)
    if len(a) != len(b):
        return False
    remaining = list(b)
    for t in a:
        for i, u in enumerate(remaining):
            if _terms_close(t, u, tol):
                del remaining[i]
                break
        else:
            return False
    return True


def _terms_close(t: GaussTerm, u: GaussTerm, tol: float) -> bool:
    if not t.like(u, tol):
        return False
    return _close(t.coeff, u.coeff, tol)


# ---------------------------------------------------------------------------
# term-level substitution
# ---------------------------------------------------------------------------

def substitute_term(term: GaussTerm, M: np.ndarray, v: np.ndarray, tol: float = 1e-12) -> GaussTerm:
    """Compose ``term`` with ``x_old = M @ y + v`` (``M`` is n_old x n_new).

    Not canonicalized; delta rows may become dependent.
    """
    M = np.asarray(M)
    v = np.asarray(v)
    A, b, c = term.exponent.A, term.exponent.b, term.exponent.c
    A2 = M.T @ A @ M
    b2 = M.T @ (2 * A @ v + b)
    c2 = complex(v @ A @ v + b @ v + c)
    deltas = ()
    if term.deltas:
        R, k = term.delta_matrix()
        R2 = R @ M
        k2 = R @ v + k
        if np.max(np.abs(np.imag(R2)), initial=0.0) > tol or np.max(np.abs(np.imag(k2)), initial=0.0) > tol:
            raise SingularSubstitution("complex substitution into a delta argument")
        deltas = _deltas_from(np.real(R2), np.real(k2))
    return GaussTerm(term.coeff, deltas, term.poly.substitute(M, v), QuadExponent(A2, b2, c2))


def reindex_term(term: GaussTerm, mapping: Sequence[int], new_arity: int) -> GaussTerm:
    """Rename variable ``i`` to ``mapping[i]`` (injective) in ``new_arity`` slots."""
    n = term.arity
    M = np.zeros((n, new_arity))
    for i, j in enumerate(mapping):
        M[i, j] = 1.0
    A = M.T @ term.exponent.A @ M
    b = M.T @ term.exponent.b
    deltas = ()
    if term.deltas:
        R, k = term.delta_matrix()
        deltas = _deltas_from(R @ M, k)
    return GaussTerm(term.coeff, deltas, term.poly.reindex(mapping, new_arity),
                     QuadExponent(A, b, term.exponent.c))


def multiply_terms(t1: GaussTerm, t2: GaussTerm, cfg: EvalConfig = DEFAULT_CONFIG,
                   coincident: str = "raise"):
    raw = GaussTerm(t1.coeff * t2.coeff, t1.deltas + t2.deltas, t1.poly * t2.poly,
                    t1.exponent + t2.exponent)
    return canonical_term(raw, cfg, coincident)


# ---------------------------------------------------------------------------
# state operations
# ---------------------------------------------------------------------------

def conjugate(s: State, cfg: EvalConfig = DEFAULT_CONFIG) -> State:
    terms = [GaussTerm(t.coeff.conjugate(), t.deltas,
                       Poly(t.arity, [(k, c.conjugate()) for k, c in t.poly.items()]),
                       t.exponent.conjugate())
             for t in s.terms]
    return make_state(s.arity, terms, cfg)


def add(s1: State, s2: State, cfg: EvalConfig = DEFAULT_CONFIG) -> State:
    if s1.arity != s2.arity:
        raise ArityMismatch(f"cannot add states of arity {s1.arity} and {s2.arity}")
    return make_state(s1.arity, s1.terms + s2.terms, cfg)


def scale(c: complex, s: State, cfg: EvalConfig = DEFAULT_CONFIG) -> State:
    c = complex(c)
    if c == 0:
        return State.zero(s.arity)
    return make_state(s.arity, [t.with_coeff(c * t.coeff) for t in s.terms], cfg)


def linear_combination(pairs: Iterable, arity: int, cfg: EvalConfig = DEFAULT_CONFIG) -> State:
    terms = []
    for c, s in pairs:
        if s.arity != arity:
            raise ArityMismatch(f"state of arity {s.arity} in a combination of arity {arity}")
        terms.extend(t.with_coeff(complex(c) * t.coeff) for t in s.terms)
    return make_state(arity, terms, cfg)


def multiply_pointwise(s1: State, s2: State, cfg: EvalConfig = DEFAULT_CONFIG) -> State:
    if s1.arity != s2.arity:
        raise ArityMismatch(f"cannot multiply states of arity {s1.arity} and {s2.arity}")
    terms = []
    for t1 in s1.terms:
        for t2 in s2.terms:
            t = multiply_terms(t1, t2, cfg)
            if t is not None:
                terms.append(t)
    return make_state(s1.arity, terms, cfg)


def tensor(s1: State, s2: State, cfg: EvalConfig = DEFAULT_CONFIG) -> State:
    n1, n2 = s1.arity, s2.arity
    n = n1 + n2
    left = [reindex_term(t, range(n1), n) for t in s1.terms]
    right = [reindex_term(t, range(n1, n), n) for t in s2.terms]
    terms = []
    for a in left:
        for b in right:
            t = multiply_terms(a, b, cfg)
            if t is not None:
                terms.append(t)
    return make_state(n, terms, cfg)


def embed(s: State, mapping: Sequence[int], new_arity: int, cfg: EvalConfig = DEFAULT_CONFIG) -> State:
    """View ``s`` as a state on ``new_arity`` variables, variable i -> mapping[i]."""
    if len(mapping) != s.arity or len(set(mapping)) != len(mapping):
        raise ArityMismatch("embedding must map each variable to a distinct slot")
    return make_state(new_arity, [reindex_term(t, mapping, new_arity) for t in s.terms], cfg)


def substitute_affine(s: State, M, v=None, cfg: EvalConfig = DEFAULT_CONFIG) -> State:
    """Exact substitution ``x -> M x + v`` (square, invertible ``M``)."""
    n = s.arity
    M = np.atleast_2d(np.asarray(M, dtype=complex)).reshape(n, n) if n else np.zeros((0, 0))
    v = np.zeros(n) if v is None else np.asarray(v, dtype=complex).reshape(n)
    if n and abs(np.linalg.det(M)) <= cfg.eq_tol:
        raise SingularSubstitution("substitution matrix is singular")
    return make_state(n, [substitute_term(t, M, v, cfg.eq_tol) for t in s.terms], cfg)


def normalize(s: State, cfg: EvalConfig = DEFAULT_CONFIG) -> State:
    from .quantifier import inner_product

    if s.rigging is not Rigging.PROPER:
        raise NotNormalizable("generalized states (deltas or non-decaying phases) have no finite norm")
    if s.is_zero:
        raise ZeroState("cannot normalize the zero state")
    amp = inner_product(s, s, cfg)
    norm2 = amp.value.real
    if norm2 <= 0:
        raise ZeroState("state has zero norm")
    return scale(1.0 / np.sqrt(norm2), s, cfg)
