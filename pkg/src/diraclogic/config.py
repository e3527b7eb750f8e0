"""Evaluation settings and the ``key=value`` config file format."""
from __future__ import annotations

import os
from dataclasses import dataclass, field, fields, replace
from typing import Mapping


def _default_schedule():
    return tuple(float(2 ** k) for k in range(1, 21))


@dataclass(frozen=True)
class EvalConfig:
    """Numerical knobs for symbolic evaluation and the quadrature oracle.

    hbar:              Planck constant (P = -i*hbar*d/dx).
    eq_tol:            tolerance used for structural equality (delta matching,
                       like-term merging, "coefficient is zero" tests).
    interval_schedule: half-widths of the nested truncation intervals used by
                       the quadrature oracle.
    max_degree:        bound on polynomial prefactor total degree.
    """

    hbar: float = 1.0
    eq_tol: float = 1e-12
    interval_schedule: tuple = field(default_factory=_default_schedule)
    max_degree: int = 16

    def __post_init__(self):
        if not self.hbar > 0:
            raise ValueError("hbar must be positive")
        if not self.eq_tol >= 0:
            raise ValueError("eq_tol must be non-negative")
        sched = tuple(float(w) for w in self.interval_schedule)
        if not sched or any(b <= a for a, b in zip(sched, sched[1:])) or sched[0] <= 0:
            raise ValueError("interval_schedule must be positive and strictly increasing")
        object.__setattr__(self, "interval_schedule", sched)
        if self.max_degree < 0:
            raise ValueError("max_degree must be non-negative")

    def with_overrides(self, **kw) -> "EvalConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


def parse_config_text(text: str) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    known = {f.name for f in fields(EvalConfig)}
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in known:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
        if key == "interval_schedule":
            out[key] = tuple(float(v) for v in value.split(",") if v.strip())
        elif key == "max_degree":
            out[key] = int(value)
        else:
            out[key] = float(value)
    return out


def load_config(path: str | None = None, env: Mapping[str, str] | None = None) -> EvalConfig:
    """Build a config from defaults, then ``$DCL_CONFIG``, then ``path``."""
    env = os.environ if env is None else env
    values = {}
    for candidate in (env.get("DCL_CONFIG"), path):
        if candidate:
            with open(candidate, encoding="utf-8") as fh:
                values.update(parse_config_text(fh.read()))
    return EvalConfig(**values)
