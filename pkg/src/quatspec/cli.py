"""Command-line interface: ``quatspec {gen,check,decompose,model,verify}``.

Exit codes: 0 success, 1 failed invariant (``verify``), 2 matrix not
skew-selfadjoint, 3 unreadable input, 4 spectrum not simple.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import io
from .checks import run_suite, spectral_residuals
from .exceptions import NotSimpleSpectrum, NotSkewSelfadjoint, QuatspecError, RealInput
from .generate import random_skew, simple_skew
from .genvec import has_simple_spectrum, special_generating_vector
from .model import build_model, verify_equivalence
from .quat import DEFAULT_TOL, Frame, build_frame, make_imaginary_unit
from .spectral import qmat_norm, skew_residual, spectral_data

EXIT_OK, EXIT_FAIL, EXIT_NOT_SKEW, EXIT_PARSE, EXIT_NOT_SIMPLE = 0, 1, 2, 3, 4


def default_tol() -> float:
    env = os.environ.get("QUATSPEC_TOL")
    return float(env) if env else DEFAULT_TOL


def parse_field(text: str | None) -> Frame:
    if text is None:
        return Frame.default()
    parts = [float(p) for p in text.split(",")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("--field expects q0,q1,q2,q3")
    return build_frame(make_imaginary_unit(parts))


def _write(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _read_matrix(path: str | None) -> np.ndarray:
    text = sys.stdin.read() if path in (None, "-") else open(path).read()
    return io.load_matrix(text)


def _base_report(A, fr: Frame, tol: float) -> dict:
    return {"input_hash": io.matrix_hash(A), "frame": fr.to_json(), "tolerance": tol}


def cmd_gen(args) -> int:
    if args.n < 1:
        print("error: --n must be at least 1", file=sys.stderr)
        return EXIT_PARSE
    if args.simple or args.zero_atom:
        A = simple_skew(args.n, args.seed, zero_atom=args.zero_atom)
    else:
        A = random_skew(args.n, args.seed)
    _write(io.dump_matrix(A), args.output)
    return EXIT_OK


def cmd_check(args) -> int:
    A = _read_matrix(args.input)
    report = _base_report(A, args.frame, args.tol)
    scale = max(1.0, qmat_norm(A))
    report["skew_selfadjoint"] = bool(skew_residual(A) <= args.tol * scale)
    if report["skew_selfadjoint"]:
        sd = spectral_data(A, args.frame, tol=args.tol)
        report["atoms"] = sd.atoms.tolist()
        report["multiplicities"] = sd.multiplicities()
        report["simple"] = has_simple_spectrum(sd, args.tol)
    _write(io.dumps(report) + "\n", args.output)
    return EXIT_OK


def cmd_decompose(args) -> int:
    A = _read_matrix(args.input)
    sd = spectral_data(A, args.frame, tol=args.tol)
    scale = max(1.0, qmat_norm(A))
    residuals = {k: v / scale for k, v in spectral_residuals(A, sd).items()}
    report = _base_report(A, args.frame, args.tol)
    report.update({
        "atoms": sd.atoms.tolist(),
        "ranks": sd.multiplicities(),
        "simple": has_simple_spectrum(sd, args.tol),
        "J": sd.J.tolist(),
        "residuals": residuals,
        "pass": bool(all(v <= args.tol for v in residuals.values())),
    })
    _write(io.dumps(report) + "\n", args.output)
    return EXIT_OK


def cmd_model(args) -> int:
    A = _read_matrix(args.input)
    sd = spectral_data(A, args.frame, tol=args.tol)
    gv = special_generating_vector(sd, args.tol)
    m = build_model(sd, gv, args.tol)
    eq = verify_equivalence(A, m, sd, args.tol)
    report = _base_report(A, args.frame, args.tol)
    report.update({
        "atoms": m.measure.atoms.tolist(),
        "weights": m.measure.weights.tolist(),
        "certificate": gv.certificate.to_json(),
        "residuals": eq["residuals"],
        "surjective_rank": eq["surjective_rank"],
        "pass": eq["pass"],
    })
    if args.model_output:
        _write(io.dumps(m.to_json()) + "\n", args.model_output)
    _write(io.dumps(report) + "\n", args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.n is None:
        instances = [("input", _read_matrix(args.input))]
    else:
        instances = []
        for s in range(args.seed, args.seed + args.seeds):
            gen = simple_skew if args.simple else random_skew
            instances.append((f"seed {s}", gen(args.n, s)))
    results = []
    for label, A in instances:
        rep = run_suite(A, args.frame, args.tol)
        rep = {"instance": label, "input_hash": io.matrix_hash(A), **rep}
        failed = [k for k, v in rep["residuals"].items() if v > args.tol]
        rep["failed"] = failed
        results.append(rep)
    report = results[0] if len(results) == 1 else {
        "instances": results, "pass": all(r["pass"] for r in results)}
    _write(io.dumps(report) + "\n", args.output)
    ok = all(r["pass"] for r in results)
    if not ok:
        for r in results:
            if r["failed"]:
                print(f"{r['instance']}: failed {', '.join(r['failed'])}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="matrix JSON file (default: stdin)")
    common.add_argument("--output", help="output path (default: stdout)")
    common.add_argument("--tol", type=float, default=None,
                        help="tolerance (default 1e-9, or $QUATSPEC_TOL)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--field", default=None, metavar="q0,q1,q2,q3",
                        help="nonreal quaternion fixing the subfield (default i)")

    parser = argparse.ArgumentParser(prog="quatspec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="write a random skew-selfadjoint matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--simple", action="store_true", help="distinct atoms (simple spectrum)")
    p.add_argument("--zero-atom", action="store_true", help="force a kernel (implies --simple)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", parents=[common], help="skew-selfadjointness and simplicity")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("decompose", parents=[common], help="spectral measure E and operator J")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("model", parents=[common], help="generating vector and unitary model")
    p.add_argument("--model-output", help="where to write the model JSON")
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("verify", parents=[common], help="run every invariant")
    p.add_argument("--n", type=int, default=None,
                   help="generate instances of this size instead of reading --input")
    p.add_argument("--seeds", type=int, default=1, help="number of generated instances")
    p.add_argument("--simple", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.tol is None:
        args.tol = default_tol()
    try:
        args.frame = parse_field(args.field)
    except (ValueError, RealInput, argparse.ArgumentTypeError) as exc:
        print(f"error: bad --field: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except io.ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotSkewSelfadjoint as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_SKEW
    except NotSimpleSpectrum as exc:
        print(f"error: spectrum is not simple: {exc}", file=sys.stderr)
        return EXIT_NOT_SIMPLE
    except QuatspecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
