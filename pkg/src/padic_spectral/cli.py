"""Command-line entry point.

    padic-spectral verify --suite all --seed 42 --samples 1000
    padic-spectral adjoint -i op.json [--pi 5]
    padic-spectral norm -i op.json
    padic-spectral gelfand -i b.json [--inverse]
    padic-spectral integrate -i job.json
    padic-spectral decompose -i op.json

Exit codes: 0 success, 1 a property failed, 2 bad input.  Errors go to
stderr as a JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import serialize
from .errors import AxiomViolation, InputError
from .gelfand import gelfand, gelfand_inverse
from .measure import spectral_integral
from .operators import adjoint_omega, adjoint_pi, op_norm
from .scalar import DEFAULT_PRECISION, DEFAULT_PRIME, PadicScalar
from .space import make_pi_structure, vector_norm
from .suites import Context, resolve, run_suite
from .theorems import spectral_decompose_diagonal

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def _read_input(path):
    try:
        if path in (None, "-"):
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg} at line {exc.lineno}") from None


def _write(args, lines):
    text = "".join(line + "\n" for line in lines)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)


def _run_one(job):
    suite, ctx, seed, samples, case, timing = job
    t0 = time.perf_counter()
    report = run_suite(suite, ctx, seed, samples, case)
    if timing:
        report["wall_clock_s"] = round(time.perf_counter() - t0, 3)
    return report


def cmd_verify(args) -> int:
    suites = resolve(args.suite)
    if args.samples < 0:
        raise InputError("--samples must be non-negative")
    if args.dim_max < 1:
        raise InputError("--dim-max must be positive")
    ctx = Context(args.p, args.precision, args.dim_max)
    PadicScalar(0, ctx.p, ctx.precision)  # validates prime and precision
    if args.case is not None and len(suites) != 1:
        raise InputError("--case needs a single --suite")
    jobs = [(s, ctx, args.seed, args.samples, args.case, args.timing) for s in suites]
    if args.jobs > 1 and len(jobs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_run_one, jobs))
    else:
        reports = [_run_one(j) for j in jobs]
    reports.sort(key=lambda r: r["suite"])
    _write(args, [_dump(r) for r in reports])
    return EXIT_OK if all(r["passed"] for r in reports) else EXIT_FAIL


def _operator_input(obj, args):
    if isinstance(obj, dict) and "operator" in obj:
        obj = obj["operator"]
    return serialize.operator_from_json(obj)


def cmd_adjoint(args) -> int:
    u = _operator_input(_read_input(args.input), args)
    if args.pi is not None:
        pi = PadicScalar.from_json(_parse_scalar_arg(args.pi), u.space.p, u.space.precision)
        out = adjoint_pi(u, make_pi_structure(u.space, pi))
    else:
        out = adjoint_omega(u)
    _write(args, [_dump(serialize.operator_to_json(out))])
    return EXIT_OK


def _parse_scalar_arg(text: str):
    text = text.strip()
    if text.startswith("{"):
        return json.loads(text)
    return text


def cmd_norm(args) -> int:
    obj = _read_input(args.input)
    if not isinstance(obj, dict):
        raise InputError("expected a JSON object")
    if "partition" in obj:
        from .gelfand import b_norm

        n = b_norm(serialize.belement_from_json(obj))
    elif "entries" in obj:
        n = op_norm(serialize.operator_from_json(obj))
    elif "coords" in obj:
        n = vector_norm(serialize.vector_from_json(obj))
    elif "valuation" in obj or "zero" in obj:
        n = PadicScalar.from_json(obj).norm()
    else:
        raise InputError("expected an operator, vector, BElement or scalar")
    _write(args, [_dump(serialize.norm_to_json(n))])
    return EXIT_OK


def cmd_gelfand(args) -> int:
    obj = _read_input(args.input)
    if args.inverse:
        out = serialize.belement_to_json(gelfand_inverse(serialize.gelfand_from_json(obj)))
    else:
        out = serialize.gelfand_to_json(gelfand(serialize.belement_from_json(obj)))
    _write(args, [_dump(out)])
    return EXIT_OK


def cmd_integrate(args) -> int:
    obj = _read_input(args.input)
    if not isinstance(obj, dict) or "pvm" not in obj or "function" not in obj:
        raise InputError("integrate expects {\"pvm\": ..., \"function\": ...}")
    P = serialize.pvm_from_json(obj["pvm"])
    f = serialize.step_from_json(obj["function"], P.algebra, P.space.p, P.space.precision)
    _write(args, [_dump(serialize.operator_to_json(spectral_integral(f, P)))])
    return EXIT_OK


def cmd_decompose(args) -> int:
    obj = _read_input(args.input)
    basis = None
    if isinstance(obj, dict) and "operator" in obj:
        b = serialize.operator_from_json(obj["operator"])
        if obj.get("basis") is not None:
            basis = serialize.operator_from_json(obj["basis"], b.space)
    else:
        b = serialize.operator_from_json(obj)
    d = spectral_decompose_diagonal(b, basis)
    _write(args, [_dump(serialize.decomposition_to_json(d))])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="padic-spectral",
                                     description="Exact p-adic spectral theory toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def io(p):
        p.add_argument("-i", "--input", default="-", help="input JSON file ('-' for stdin)")
        p.add_argument("-o", "--output", default="-", help="output file ('-' for stdout)")

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", default="all")
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--p", type=int, default=DEFAULT_PRIME)
    v.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    v.add_argument("--dim-max", type=int, default=8)
    v.add_argument("--case", type=int, default=None, help="replay a single case")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--timing", action="store_true", help="add wall-clock seconds to reports")
    v.add_argument("-o", "--output", default="-")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("adjoint", help="f_omega adjoint (or f_pi adjoint with --pi)")
    io(a)
    a.add_argument("--pi", default=None)
    a.set_defaults(func=cmd_adjoint)

    n = sub.add_parser("norm", help="norm of an operator, vector, BElement or scalar")
    io(n)
    n.set_defaults(func=cmd_norm)

    g = sub.add_parser("gelfand", help="Gelfand transform of a BElement")
    io(g)
    g.add_argument("--inverse", action="store_true")
    g.set_defaults(func=cmd_gelfand)

    it = sub.add_parser("integrate", help="spectral integral of a step function")
    io(it)
    it.set_defaults(func=cmd_integrate)

    d = sub.add_parser("decompose", help="spectral decomposition of a diagonal operator")
    io(d)
    d.set_defaults(func=cmd_decompose)
    return parser


def _error(kind: str, message: str, extra: dict | None = None) -> None:
    body = {"type": kind, "message": message}
    if extra:
        body.update(extra)
    sys.stderr.write(_dump({"error": body}) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except AxiomViolation as exc:
        _error("AxiomViolation", str(exc),
               {"violations": [{"axiom": a, "witness": [str(x) for x in w]}
                               for a, w in exc.violations]})
        return EXIT_INPUT
    except (InputError, ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        _error(type(exc).__name__, str(exc))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
