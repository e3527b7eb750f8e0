"""Sparse multivariate polynomials with complex coefficients.

Used as the prefactor of a quadratic-phase term. Monomials are keyed by a
tuple of per-variable exponents, so ``(2, 0, 1)`` is ``x0**2 * x2``.
"""
from __future__ import annotations

from itertools import product as cartesian
from typing import Iterable, Mapping

import numpy as np


def _close(a: complex, b: complex, tol: float) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


class Poly:
    __slots__ = ("arity", "_items")

    def __init__(self, arity: int, coeffs: Mapping[tuple, complex] | Iterable = ()):
        self.arity = arity
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[tuple, complex] = {}
        for key, c in items:
            key = tuple(int(k) for k in key)
            if len(key) != arity:
                raise ValueError(f"monomial {key} does not have arity {arity}")
            if c != 0:
                acc[key] = acc.get(key, 0) + complex(c)
        self._items = tuple(sorted((k, c) for k, c in acc.items() if c != 0))

    # constructors -------------------------------------------------------
    @classmethod
    def constant(cls, arity: int, value: complex = 1.0) -> "Poly":
        return cls(arity, {(0,) * arity: value})

    @classmethod
    def variable(cls, arity: int, var: int, degree: int = 1) -> "Poly":
        key = [0] * arity
        key[var] = degree
        return cls(arity, {tuple(key): 1.0})

    @classmethod
    def linear(cls, coeffs, constant: complex = 0.0) -> "Poly":
        coeffs = list(coeffs)
        n = len(coeffs)
        items = [((0,) * n, constant)]
        for j, c in enumerate(coeffs):
            key = [0] * n
            key[j] = 1
            items.append((tuple(key), c))
        return cls(n, items)

    # views ----------------------------------------------------------------
    def items(self):
        return self._items

    def as_dict(self) -> dict:
        return dict(self._items)

    def __len__(self):
        return len(self._items)

    def is_zero(self) -> bool:
        return not self._items

    def degree(self) -> int:
        return max((sum(k) for k, _ in self._items), default=0)

    def degree_in(self, var: int) -> int:
        return max((k[var] for k, _ in self._items), default=0)

    def is_constant(self) -> bool:
        return all(sum(k) == 0 for k, _ in self._items)

    def constant_term(self) -> complex:
        return dict(self._items).get((0,) * self.arity, 0j)

    def max_abs(self) -> float:
        return max((abs(c) for _, c in self._items), default=0.0)

    # arithmetic -------------------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        return Poly(self.arity, list(self._items) + list(other._items))

    def __neg__(self) -> "Poly":
        return self.scale(-1.0)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, c: complex) -> "Poly":
        return Poly(self.arity, [(k, c * v) for k, v in self._items])

    def __mul__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        acc: dict[tuple, complex] = {}
        for (k1, c1), (k2, c2) in cartesian(self._items, other._items):
            key = tuple(a + b for a, b in zip(k1, k2))
            acc[key] = acc.get(key, 0) + c1 * c2
        return Poly(self.arity, acc)

    __rmul__ = __mul__

    def power(self, n: int) -> "Poly":
        out = Poly.constant(self.arity)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def derivative(self, var: int) -> "Poly":
        items = []
        for k, c in self._items:
            if k[var]:
                key = list(k)
                key[var] -= 1
                items.append((tuple(key), c * k[var]))
        return Poly(self.arity, items)

    # variable bookkeeping ------------------------------------------------------
    def reindex(self, mapping, new_arity: int) -> "Poly":
        """Rename variable ``i`` to ``mapping[i]`` inside ``new_arity`` slots."""
        items = []
        for k, c in self._items:
            key = [0] * new_arity
            for i, e in enumerate(k):
                if e:
                    key[mapping[i]] += e
            items.append((tuple(key), c))
        return Poly(new_arity, items)

    def split_var(self, var: int) -> dict:
        """Group by the power of ``var``: ``{power: Poly without var}``."""
        groups: dict[int, list] = {}
        for k, c in self._items:
            rest = k[:var] + k[var + 1:]
            groups.setdefault(k[var], []).append((rest, c))
        return {p: Poly(self.arity - 1, items) for p, items in groups.items()}

    def drop_var(self, var: int) -> "Poly":
        if self.degree_in(var):
            raise ValueError(f"polynomial depends on variable {var}")
        return Poly(self.arity - 1, [(k[:var] + k[var + 1:], c) for k, c in self._items])

    def substitute(self, M: np.ndarray, v: np.ndarray) -> "Poly":
        """Compose with the affine map ``x = M @ y + v`` (``M`` is n_old x n_new)."""
        M = np.asarray(M)
        v = np.asarray(v)
        new_n = M.shape[1]
        images = [Poly.linear(M[i], v[i]) for i in range(self.arity)]
        cache: dict[tuple, Poly] = {}

        def pw(i, e):
            key = (i, e)
            if key not in cache:
                cache[key] = images[i].power(e)
            return cache[key]

        out = Poly(new_n)
        for k, c in self._items:
            term = Poly.constant(new_n, c)
            for i, e in enumerate(k):
                if e:
                    term = term * pw(i, e)
            out = out + term
        return out

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at ``points`` of shape (m, arity)."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        out = np.zeros(points.shape[0], dtype=complex)
        for k, c in self._items:
            out += c * np.prod(points ** np.asarray(k), axis=1)
        return out

    def univariate_coeffs(self) -> np.ndarray:
        """Dense ascending coefficients; arity must be 1."""
        if self.arity != 1:
            raise ValueError("univariate_coeffs needs arity 1")
        out = np.zeros(self.degree() + 1, dtype=complex)
        for (e,), c in self._items:
            out[e] += c
        return out

    # canonical form --------------------------------------------------------------
    def chop(self, tol: float) -> "Poly":
        scale = self.max_abs()
        return Poly(self.arity, [(k, c) for k, c in self._items if abs(c) > tol * scale])

    def leading(self) -> complex:
        """First coefficient in monomial order; used to normalize prefactors."""
        return self._items[0][1] if self._items else 0j

    def monic(self) -> tuple:
        """``(lead, self / lead)``; divides entrywise so tiny leads cannot overflow."""
        lead = self.leading()
        return lead, Poly(self.arity, [(k, c / lead) for k, c in self._items])

    def approx_equal(self, other: "Poly", tol: float) -> bool:
        if self.arity != other.arity:
            return False
        a, b = self.as_dict(), other.as_dict()
        return all(_close(a.get(k, 0j), b.get(k, 0j), tol) for k in set(a) | set(b))

    def _check(self, other):
        if self.arity != other.arity:
            raise ValueError(f"arity {self.arity} vs {other.arity}")

    def __repr__(self):
        return f"Poly({self.arity}, {dict(self._items)!r})"
