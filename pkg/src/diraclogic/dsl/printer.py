"""Pretty-printer producing text that reparses to the same tree."""
from __future__ import annotations

from . import ast


def _num(n: ast.Num) -> str:
    return repr(float(n.value) + 0.0)


def _args(args) -> str:
    return "(" + ", ".join(_num(a) for a in args) + ")"


def _op(op) -> str:
    if isinstance(op, ast.Momentum):
        return "P"
    if isinstance(op, ast.Position):
        return "Q"
    if isinstance(op, ast.Weyl):
        return f"W({_num(op.a)}, {_num(op.b)})"
    if isinstance(op, ast.EvolveOp):
        return f"evolve({op.ham.kind}{_args(op.ham.args)}, {_num(op.t)})"
    raise TypeError(f"not an operator: {op!r}")


def to_source(node) -> str:
    if isinstance(node, list):
        return ";\n".join(to_source(s) for s in node)
    if isinstance(node, ast.Let):
        return f"let {node.name} = {to_source(node.expr)}"
    if isinstance(node, ast.Num):
        return _num(node)
    if isinstance(node, ast.Ket):
        var = f"[{node.var}]" if node.var else ""
        return f"|{node.ctor}{_args(node.args)}{var}>"
    if isinstance(node, ast.Var):
        return node.name
    if isinstance(node, ast.BraKet):
        # a bare "|" after "<" would be read as the separator
        return f"<({to_source(node.bra)}) | ({to_source(node.ket)})>"
    if isinstance(node, ast.Apply):
        return f"{_op(node.op)} {_factor(node.arg)}"
    if isinstance(node, ast.Integrate):
        return f"(E {node.var} . {to_source(node.body)})"
    if isinstance(node, ast.Prob):
        return f"prob({to_source(node.f)}, {to_source(node.psi)})"
    if isinstance(node, ast.Norm):
        return f"norm({to_source(node.arg)})"
    if isinstance(node, ast.Conj):
        return f"conj({to_source(node.arg)})"
    if isinstance(node, ast.BinOp):
        return f"({to_source(node.left)} {node.op} {to_source(node.right)})"
    if isinstance(node, ast.Neg):
        return f"(-({to_source(node.arg)}))"
    raise TypeError(f"cannot print {node!r}")


def _factor(node) -> str:
    text = to_source(node)
    if isinstance(node, ast.Num) and node.value < 0:
        return f"({text})"
    return text
