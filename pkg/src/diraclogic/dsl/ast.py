"""Syntax tree of ``.dcl`` scripts. Positions are excluded from equality."""
from __future__ import annotations

from dataclasses import dataclass, field


def _pos():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Num:
    value: float
    pos: tuple = _pos()


@dataclass(frozen=True)
class Ket:
    ctor: str
    args: tuple = ()
    var: str | None = None
    pos: tuple = _pos()


@dataclass(frozen=True)
class Var:
    name: str
    pos: tuple = _pos()


@dataclass(frozen=True)
class BraKet:
    bra: object
    ket: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class Weyl:
    a: Num
    b: Num
    pos: tuple = _pos()


@dataclass(frozen=True)
class Momentum:
    pos: tuple = _pos()


@dataclass(frozen=True)
class Position:
    pos: tuple = _pos()


@dataclass(frozen=True)
class Ham:
    kind: str  # "free" | "harmonic"
    args: tuple
    pos: tuple = _pos()


@dataclass(frozen=True)
class EvolveOp:
    ham: Ham
    t: Num
    pos: tuple = _pos()


@dataclass(frozen=True)
class Apply:
    op: object
    arg: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class Integrate:
    var: str
    body: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class Prob:
    f: object
    psi: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class Norm:
    arg: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class Conj:
    arg: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class BinOp:
    op: str  # "+", "-", "*"
    left: object
    right: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class Neg:
    arg: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class Let:
    name: str
    expr: object
    pos: tuple = _pos()


def walk(node):
    """Pre-order traversal over every node."""
    yield node
    for name in getattr(node, "__dataclass_fields__", {}):
        if name == "pos":
            continue
        child = getattr(node, name)
        if isinstance(child, tuple):
            for c in child:
                if hasattr(c, "__dataclass_fields__"):
                    yield from walk(c)
        elif hasattr(child, "__dataclass_fields__"):
            yield from walk(child)
