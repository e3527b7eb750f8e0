"""Deterministic JSON output: sorted keys, floats with 17 significant digits."""
from __future__ import annotations

import json
import math

from .algebra import DeltaNormalized, Finite, GaussTerm, State

SCHEMA_VERSION = 1


def fmt_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        return "null"
    return format(0.0 if x == 0 else x, ".17g")


def dumps(obj) -> str:
    """Compact JSON with sorted keys and fixed float formatting."""
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        items = sorted(obj.items())
        return "{" + ",".join(json.dumps(k) + ":" + dumps(v) for k, v in items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def cplx(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def term_json(t: GaussTerm) -> dict:
    n = t.arity
    return {
        "coeff": cplx(t.coeff),
        "deltas": [{"row": [float(r) for r in d.row(n)], "offset": d.offset} for d in t.deltas],
        "poly": [{"powers": list(key), **cplx(c)} for key, c in t.poly.items()],
        "A": [[cplx(a) for a in row] for row in t.exponent.A],
        "b": [cplx(b) for b in t.exponent.b],
        "c": cplx(t.exponent.c),
    }


def state_json(s: State, names=None) -> dict:
    out = {"kind": "state", "arity": s.arity, "rigging": s.rigging.value,
           "terms": [term_json(t) for t in s.terms]}
    if names is not None:
        out["vars"] = list(names)
    return out


def amplitude_json(a) -> dict:
    if isinstance(a, Finite):
        return {"kind": "amplitude", "variant": "finite", **cplx(a.value)}
    if isinstance(a, DeltaNormalized):
        return {"kind": "amplitude", "variant": "delta_normalized", **cplx(a.phase)}
    raise TypeError(f"not an amplitude: {a!r}")


def value_json(v) -> dict:
    from .dsl.evaluator import AmplitudeV, RealV, StateV

    if isinstance(v, StateV):
        return state_json(v.state, v.names)
    if isinstance(v, AmplitudeV):
        return amplitude_json(v.amplitude)
    if isinstance(v, RealV):
        return {"kind": "real", "value": float(v.value)}
    raise TypeError(f"not a value: {v!r}")


def error_json(err: Exception, kind: str, path: str | None = None) -> dict:
    out = {"kind": kind, "type": type(err).__name__, "message": getattr(err, "message", None) or str(err)}
    pos = getattr(err, "position", None)
    if pos is not None:
        out["line"], out["column"] = pos
    expected = getattr(err, "expected", None)
    if expected:
        out["expected"] = list(expected)
    if path is not None:
        out["path"] = path
    return out


def document(results=(), warnings=(), errors=()) -> str:
    return dumps({"version": SCHEMA_VERSION, "results": list(results),
                  "warnings": list(warnings), "errors": list(errors)})
