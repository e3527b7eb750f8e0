"""Evaluation of parsed scripts.

States carry the names of their variables. Kets default to ``x``; combining
states over different names forms the product space (names are unified).
Operators act on the first variable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .. import algebra, operators
from ..algebra import DEFAULT_CONFIG, DeltaNormalized, Finite, GaussTerm, State
from ..config import EvalConfig
from ..errors import DiracError, DivergentIntegral, KindError, NameResolutionError, NotFinite, NotNormalizable
from ..quantifier import inner_product, integrate_var
from . import ast
from .lexer import tokenize
from .parser import parse

DEFAULT_VAR = "x"


@dataclass(frozen=True)
class StateV:
    state: State
    names: tuple


@dataclass(frozen=True)
class AmplitudeV:
    amplitude: object


@dataclass(frozen=True)
class RealV:
    value: float


def _kind(v) -> str:
    return {StateV: "state", AmplitudeV: "amplitude", RealV: "real"}[type(v)]


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------

def _scalar(v) -> complex | None:
    """Finite scalar value, or None for delta-normalized amplitudes."""
    if isinstance(v, RealV):
        return complex(v.value)
    if isinstance(v.amplitude, Finite):
        return complex(v.amplitude.value)
    return None


def _wrap_scalar(z: complex, real: bool):
    return RealV(z.real) if real else AmplitudeV(Finite(z))


def _delta(z: complex):
    return AmplitudeV(DeltaNormalized(z) if z != 0 else Finite(0j))


def _scalar_binop(op, l, r):
    real = isinstance(l, RealV) and isinstance(r, RealV)
    a, b = _scalar(l), _scalar(r)
    if a is not None and b is not None:
        if op == "+":
            return _wrap_scalar(a + b, real)
        if op == "-":
            return _wrap_scalar(a - b, real)
        return _wrap_scalar(a * b, real)
    if op == "*":
        if a is None and b is None:
            raise NotFinite("product of two delta-normalized amplitudes")
        c, d = (a, r.amplitude.phase) if a is not None else (b, l.amplitude.phase)
        return _delta(c * d)
    if a is None and b is None:
        sa, sb = l.amplitude.phase, r.amplitude.phase
        return _delta(sa + sb if op == "+" else sa - sb)
    raise NotFinite("cannot add a finite amplitude to a delta-normalized one")


# ---------------------------------------------------------------------------
# states
# ---------------------------------------------------------------------------

def _unify(u: StateV, v: StateV, cfg):
    names = list(u.names) + [n for n in v.names if n not in u.names]
    s1 = algebra.embed(u.state, list(range(len(u.names))), len(names), cfg)
    s2 = algebra.embed(v.state, [names.index(n) for n in v.names], len(names), cfg)
    return s1, s2, tuple(names)


def _constant_state(z: complex, n: int, cfg) -> State:
    return algebra.make_state(n, [GaussTerm.simple(n, z)], cfg)


def _state_result(s: State, names: tuple):
    if not names:
        return AmplitudeV(Finite(s.scalar()))
    return StateV(s, names)


class Evaluator:
    def __init__(self, cfg: EvalConfig = DEFAULT_CONFIG, on_braket: Callable | None = None):
        self.cfg = cfg
        self.env: dict = {}
        self.on_braket = on_braket

    def run(self, program) -> list:
        out = []
        for index, stmt in enumerate(program):
            if isinstance(stmt, ast.Let):
                self.env[stmt.name] = self.eval(stmt.expr)
            else:
                out.append((index, self.eval(stmt)))
        return out

    def eval(self, node):
        try:
            return getattr(self, "_" + type(node).__name__)(node)
        except DiracError as err:
            if err.position is None:
                err.position = node.pos
            raise

    def state_of(self, node) -> StateV:
        v = self.eval(node)
        if not isinstance(v, StateV):
            raise KindError(f"expected a state, got {_kind(v)}", node.pos)
        return v

    # leaves ---------------------------------------------------------------------
    def _Num(self, node):
        return RealV(float(node.value))

    def _Var(self, node):
        if node.name not in self.env:
            raise NameResolutionError(f"unbound name {node.name!r}", node.pos)
        return self.env[node.name]

    def _Ket(self, node):
        args = [a.value for a in node.args]
        cfg = self.cfg
        ctors = {
            "p": ((1, 1), lambda p: operators.momentum_state(p, cfg)),
            "x": ((1, 1), lambda x0: operators.position_state(x0, cfg)),
            "gauss": ((2, 3), lambda c, w, p=0.0: operators.gaussian_state(c, w, p, cfg)),
            "hermite": ((1, 2), self._hermite),
            "chirp": ((1, 3), lambda a, b=0.0, c=0.0: operators.chirp_state(a, b, c, cfg)),
        }
        if node.ctor not in ctors:
            raise NameResolutionError(f"unknown ket constructor {node.ctor!r}", node.pos)
        (lo, hi), make = ctors[node.ctor]
        if not lo <= len(args) <= hi:
            want = str(lo) if lo == hi else f"{lo} to {hi}"
            raise KindError(f"{node.ctor}(...) takes {want} arguments, got {len(args)}", node.pos)
        return StateV(make(*args), (node.var or DEFAULT_VAR,))

    def _hermite(self, n, width=1.0):
        if n != int(n) or n < 0:
            raise KindError(f"hermite degree must be a non-negative integer, got {n}")
        return operators.hermite_state(int(n), width, self.cfg)

    # composite ------------------------------------------------------------------
    def _BraKet(self, node):
        bra, ket = self.state_of(node.bra), self.state_of(node.ket)
        if set(bra.names) != set(ket.names):
            raise KindError(f"bra over {list(bra.names)} paired with ket over {list(ket.names)}", node.pos)
        b, k, _ = _unify(bra, ket, self.cfg)
        amp = inner_product(b, k, self.cfg)
        if self.on_braket is not None:
            self.on_braket(node, b, k, amp)
        return AmplitudeV(amp)

    def _operator(self, op):
        cfg = self.cfg
        if isinstance(op, ast.Momentum):
            return operators.momentum_operator(cfg)
        if isinstance(op, ast.Position):
            return operators.MultiplyVar(0)
        if isinstance(op, ast.Weyl):
            return operators.weyl(op.a.value, op.b.value, cfg)
        h = op.ham
        args = [a.value for a in h.args]
        try:
            if h.kind == "free":
                if len(args) > 1:
                    raise KindError(f"free(...) takes at most 1 argument, got {len(args)}", h.pos)
                ham = operators.Free(*args)
            else:
                if len(args) > 2:
                    raise KindError(f"harmonic(...) takes at most 2 arguments, got {len(args)}", h.pos)
                ham = operators.Harmonic(*args)
        except ValueError as err:
            raise KindError(str(err), h.pos) from None
        return operators.Evolve(ham, op.t.value)

    def _Apply(self, node):
        v = self.state_of(node.arg)
        op = self._operator(node.op)
        return StateV(operators.apply(op, v.state, self.cfg), v.names)

    def _Integrate(self, node):
        v = self.eval(node.body)
        if not isinstance(v, StateV) or node.var not in v.names:
            zero = v.state.is_zero if isinstance(v, StateV) else _scalar(v) == 0
            if zero:
                return v
            raise DivergentIntegral(f"integrand does not depend on {node.var!r}", node.pos)
        idx = v.names.index(node.var)
        s = integrate_var(v.state, idx, self.cfg)
        return _state_result(s, v.names[:idx] + v.names[idx + 1:])

    def _Prob(self, node):
        f, psi = self.state_of(node.f), self.state_of(node.psi)
        if set(f.names) != set(psi.names):
            raise KindError("prob of states over different variables", node.pos)
        a, b, _ = _unify(f, psi, self.cfg)
        return RealV(operators.probability(a, b, self.cfg))

    def _Norm(self, node):
        v = self.state_of(node.arg)
        amp = inner_product(v.state, v.state, self.cfg)
        if not isinstance(amp, Finite):
            raise NotNormalizable("norm of a delta-normalized state", node.pos)
        return RealV(math.sqrt(max(amp.value.real, 0.0)))

    def _Conj(self, node):
        v = self.eval(node.arg)
        if isinstance(v, StateV):
            return StateV(algebra.conjugate(v.state, self.cfg), v.names)
        if isinstance(v, RealV):
            return v
        return AmplitudeV(v.amplitude.conjugate())

    def _Neg(self, node):
        return self._binop("*", RealV(-1.0), self.eval(node.arg))

    def _BinOp(self, node):
        return self._binop(node.op, self.eval(node.left), self.eval(node.right))

    def _binop(self, op, l, r):
        cfg = self.cfg
        if op == "/":
            z = None if isinstance(r, StateV) else _scalar(r)
            if z is None or z == 0:
                what = "zero" if z == 0 else _kind(r) if isinstance(r, StateV) else "a delta-normalized amplitude"
                raise KindError(f"cannot divide by {what}")
            inv = RealV(1.0 / z.real) if isinstance(r, RealV) else AmplitudeV(Finite(1 / z))
            return self._binop("*", l, inv)
        if not isinstance(l, StateV) and not isinstance(r, StateV):
            return _scalar_binop(op, l, r)
        if isinstance(l, StateV) and isinstance(r, StateV):
            s1, s2, names = _unify(l, r, cfg)
            if op == "*":
                return StateV(algebra.multiply_pointwise(s1, s2, cfg), names)
            sign = 1 if op == "+" else -1
            return StateV(algebra.linear_combination([(1, s1), (sign, s2)], len(names), cfg), names)
        st, sc = (l, r) if isinstance(l, StateV) else (r, l)
        z = _scalar(sc)
        if z is None:
            raise NotFinite("delta-normalized amplitude combined with a state")
        if op == "*":
            return StateV(algebra.scale(z, st.state, cfg), st.names)
        const = _constant_state(z, len(st.names), cfg)
        if op == "+":
            return StateV(algebra.add(st.state, const, cfg), st.names)
        first, second = (st.state, const) if st is l else (const, st.state)
        return StateV(algebra.linear_combination([(1, first), (-1, second)], len(st.names), cfg), st.names)


def evaluate(program, cfg: EvalConfig = DEFAULT_CONFIG, on_braket: Callable | None = None) -> list:
    """``[(statement index, value), ...]`` for every non-``let`` statement.

    ``program`` is a parsed statement list or script text.
    """
    if isinstance(program, str):
        program = parse(tokenize(program))
    return Evaluator(cfg, on_braket).run(program)

