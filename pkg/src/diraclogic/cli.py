"""``dcl`` command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 script error (unreadable
file, lexing, parsing, names, value kinds, bad flags), 3 engine error.
"""
from __future__ import annotations

import argparse
import sys

from . import discrete, oracle, serialize
from .algebra import DeltaNormalized, Rigging, conjugate, multiply_pointwise
from .config import load_config
from .dsl import evaluate, parse, tokenize
from .errors import DiracError, ScriptError

EXIT_OK, EXIT_VERIFY, EXIT_SCRIPT, EXIT_ENGINE = 0, 1, 2, 3
DEFAULT_VERIFY_TOL = 1e-6
DEFAULT_NS = (64, 256, 1024)


class _Failure(Exception):
    def __init__(self, code, error):
        super().__init__(error.get("message"))
        self.code = code
        self.error = error


def _float_list(text):
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {text!r}") from None


def _int_list(text):
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("script", help="path to a .dcl script")
    common.add_argument("--hbar", type=float, help="reduced Planck constant (default 1)")
    common.add_argument("--config", help="key=value config file (applied after $DCL_CONFIG)")

    p = argparse.ArgumentParser(prog="dcl", description="Dirac bra-ket calculus for Gaussian quantum mechanics.")
    sub = p.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", parents=[common], help="evaluate a script, print JSON")
    ev.add_argument("--tol", type=float, help="equality tolerance of the engine")
    ev.add_argument("--json", action="store_true", help="JSON output (the default)")

    ve = sub.add_parser("verify", parents=[common], help="check every bra-ket against numerical quadrature")
    ve.add_argument("--tol", type=float, default=DEFAULT_VERIFY_TOL, help="comparison tolerance (default 1e-6)")
    ve.add_argument("--eps-sweep", type=_float_list,
                    help="damping values for oscillatory integrals, e.g. 1e-2,1e-3,1e-4")
    ve.add_argument("--json", action="store_true", help="JSON output (the default)")

    sw = sub.add_parser("sweep", parents=[common], help="lattice convergence of every bra-ket")
    sw.add_argument("--N", dest="Ns", type=_int_list, default=DEFAULT_NS,
                    help="comma-separated lattice sizes (default 64,256,1024)")
    out = sw.add_mutually_exclusive_group()
    out.add_argument("--csv", action="store_true", help="CSV output (the default)")
    out.add_argument("--json", action="store_true", help="JSON output")
    return p


def _load(args, tol_is_eq: bool):
    try:
        cfg = load_config(args.config)
    except (OSError, ValueError) as err:
        raise _Failure(EXIT_SCRIPT, {"kind": "config", "message": str(err)}) from None
    over = {"hbar": args.hbar}
    if tol_is_eq:
        over["eq_tol"] = args.tol
    try:
        cfg = cfg.with_overrides(**over)
    except ValueError as err:
        raise _Failure(EXIT_SCRIPT, {"kind": "config", "message": str(err)}) from None
    try:
        with open(args.script, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as err:
        raise _Failure(EXIT_SCRIPT, {"kind": "io", "path": args.script,
                                     "message": getattr(err, "strerror", None) or str(err)}) from None
    try:
        program = parse(tokenize(text))
    except ScriptError as err:
        raise _Failure(EXIT_SCRIPT, serialize.error_json(err, "script", args.script)) from None
    return cfg, program


def _run(program, cfg, path, on_braket=None):
    try:
        return evaluate(program, cfg, on_braket)
    except ScriptError as err:
        raise _Failure(EXIT_SCRIPT, serialize.error_json(err, "script", path)) from None
    except DiracError as err:
        raise _Failure(EXIT_ENGINE, serialize.error_json(err, "engine", path)) from None


def cmd_eval(args, out) -> int:
    cfg, program = _load(args, tol_is_eq=True)
    results = []
    for index, value in _run(program, cfg, args.script):
        results.append({"statement": index, **serialize.value_json(value)})
    out.write(serialize.document(results) + "\n")
    return EXIT_OK


def _collect(program, cfg, path):
    checks = []

    def record(node, bra, ket, amp):
        checks.append((node.pos, bra, ket, amp))

    _run(program, cfg, path, record)
    return checks


def _check(pos, bra, ket, amp, cfg, tol, eps_sweep):
    entry = {"line": pos[0], "column": pos[1]}
    if isinstance(amp, DeltaNormalized):
        return {**entry, "status": "skipped-delta", "symbolic": serialize.amplitude_json(amp)}
    entry["symbolic"] = serialize.amplitude_json(amp)
    if bra.arity != 1:
        return {**entry, "status": "skipped-arity"}
    integrand = multiply_pointwise(conjugate(bra, cfg), ket, cfg)
    if any(t.deltas for t in integrand.terms):
        return {**entry, "status": "skipped-delta"}
    try:
        if oracle.is_oscillatory(integrand):
            if not eps_sweep:
                return {**entry, "status": "skipped-divergent"}
            numeric = oracle.extrapolated_integral(integrand, cfg, eps_sweep)
        else:
            numeric, _ = oracle.numeric_integrate(integrand, cfg)
    except DiracError as err:
        return {**entry, "status": "fail", "error": serialize.error_json(err, "oracle")}
    cmp = oracle.compare_amplitude(amp, numeric, tol)
    return {**entry, "status": "pass" if cmp.passed else "fail", "numeric": serialize.cplx(numeric),
            "abs_dev": cmp.abs_dev, "rel_dev": cmp.rel_dev, "tol": tol}


_SKIP_WARNINGS = {
    "skipped-delta": "delta-normalized or delta-bearing bra-ket has no numerical counterpart",
    "skipped-arity": "oracle integrates one-variable bra-kets only",
    "skipped-divergent": "oscillatory integrand needs --eps-sweep",
}


def cmd_verify(args, out) -> int:
    cfg, program = _load(args, tol_is_eq=False)
    if args.eps_sweep is not None and len(args.eps_sweep) < 3:
        raise _Failure(EXIT_SCRIPT, {"kind": "usage", "message": "--eps-sweep needs at least three values"})
    results, warnings = [], []
    for i, (pos, bra, ket, amp) in enumerate(_collect(program, cfg, args.script)):
        entry = {"check": i, **_check(pos, bra, ket, amp, cfg, args.tol, args.eps_sweep)}
        results.append(entry)
        if entry["status"] in _SKIP_WARNINGS:
            warnings.append(f"{pos[0]}:{pos[1]}: {_SKIP_WARNINGS[entry['status']]}")
    out.write(serialize.document(results, warnings) + "\n")
    return EXIT_VERIFY if any(r["status"] == "fail" for r in results) else EXIT_OK


def cmd_sweep(args, out, err) -> int:
    cfg, program = _load(args, tol_is_eq=False)
    if not args.Ns or any(N < 2 or N % 2 for N in args.Ns):
        raise _Failure(EXIT_SCRIPT, {"kind": "usage", "message": "--N needs even sizes >= 2"})
    rows, warnings = [], []
    for i, (pos, bra, ket, amp) in enumerate(_collect(program, cfg, args.script)):
        where = f"{pos[0]}:{pos[1]}"
        if bra.arity != 1 or bra.rigging is not Rigging.PROPER or ket.rigging is not Rigging.PROPER:
            warnings.append(f"{where}: skipped, sweep needs proper one-variable states")
            continue
        try:
            report = discrete.convergence_report(bra, ket, args.Ns, cfg)
        except DiracError as e:
            raise _Failure(EXIT_ENGINE, serialize.error_json(e, "engine", args.script)) from None
        rows.extend((i, r) for r in report)
    if args.json:
        results = [{"check": i, "N": r.N, "discrete": serialize.cplx(r.discrete),
                    "symbolic": serialize.cplx(r.symbolic), "abs_error": r.abs_error,
                    "resolved": r.resolved} for i, r in rows]
        out.write(serialize.document(results, warnings) + "\n")
    else:
        header = discrete.report_csv([], {"check": ""}).splitlines()[0]
        lines = [header]
        for i, r in rows:
            lines.append(discrete.report_csv([r], {"check": str(i)}).splitlines()[1])
        out.write("\n".join(lines) + "\n")
        for w in warnings:
            err.write(f"warning: {w}\n")
    return EXIT_OK


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_SCRIPT
    try:
        if args.command == "eval":
            return cmd_eval(args, out)
        if args.command == "verify":
            return cmd_verify(args, out)
        return cmd_sweep(args, out, err)
    except _Failure as f:
        if getattr(args, "json", False) or args.command != "sweep":
            out.write(serialize.document(errors=[f.error]) + "\n")
        else:
            err.write(f"error: {f.error.get('message')}\n")
        return f.code


if __name__ == "__main__":
    sys.exit(main())
