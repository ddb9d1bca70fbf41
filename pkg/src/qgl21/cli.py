"""Command line entry point: build, verify, classify, scan."""

from __future__ import annotations

import argparse
import re
import sys
import time
from fractions import Fraction

from . import io
from .atypical import classify, quotient_representation
from .basis import Signature
from .qnum import Params, as_rational, default_precision
from .rep import build_representation
from .sweep import draw_parameters, run_cells, signatures
from .verify import verify

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

# options whose value may legitimately start with "-"
_VALUE_OPTIONS = {"--hw", "--m33-range", "--a", "--p", "--q", "--m23"}
_NEGATIVE = re.compile(r"^-\d|^-\.\d")


def _glue_negative_values(argv: list[str]) -> list[str]:
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTIONS and i + 1 < len(argv) and _NEGATIVE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def _triple(text: str) -> tuple[Fraction, ...]:
    parts = [p for p in text.split(",")]
    if len(parts) != 3:
        raise ValueError(f"expected three comma-separated values, got {text!r}")
    return tuple(as_rational(p) for p in parts)


def _params(args) -> Params:
    return Params(as_rational(args.p), as_rational(args.q), args.precision or default_precision(), args.tol)


def cmd_build(args) -> int:
    g = Signature.of(_triple(args.hw)).require_dominant()
    params = _params(args)
    a = _triple(args.a)
    rep = build_representation(g, params, a)
    if args.quotient:
        cls = classify(g)
        if cls.typical:
            raise ValueError(f"{g} is typical; --quotient needs a nontypical signature")
        rep = quotient_representation(rep, cls)
    report = verify(rep) if args.report else None
    doc = io.to_document(rep, report)
    text = io.dumps(doc)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"{args.out}\t{doc['kind']}\t{doc['classification']['kind']}\tdimension {doc['dimension']}")
    if report is not None and not report.passed:
        return EXIT_FAIL
    return EXIT_OK


def cmd_verify(args) -> int:
    rep = io.read(args.file, args.tol)
    report = verify(rep, cyclicity=not args.no_cyclicity)
    print(f"# {rep.basis.global_signature}\t{rep.kind}\t{report.classification}\tdimension {rep.dimension}")
    print(report.table())
    print(f"# {'PASS' if report.passed else 'FAIL'}\t{report.wall_time:.3f}s")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_classify(args) -> int:
    print(classify(Signature.of(_triple(args.hw)).require_dominant()))
    return EXIT_OK


def _range(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected A,B got {text!r}")
    lo, hi = (int(x) for x in parts)
    if lo > hi:
        raise ValueError("empty m33 range")
    return lo, hi


def cmd_scan(args) -> int:
    if args.lmax < 0 or args.samples < 1 or args.jobs < 1:
        raise ValueError("need --lmax >= 0, --samples >= 1 and --jobs >= 1")
    sigs = signatures(2 * args.lmax, _range(args.m33_range), int(as_rational(args.m23)))
    draws = draw_parameters(args.samples, args.seed)
    precision = args.precision or default_precision()
    start = time.perf_counter()
    cells = [(g, p, q, precision) for g in sigs for p, q in draws]
    results = run_cells(cells, args.jobs)
    print("signature\tclass\tdim\tblocks\tquotient_dim\tsamples\tmax_relative\tstatus")
    ok_all = True
    for i, g in enumerate(sigs):
        chunk = results[i * len(draws):(i + 1) * len(draws)]
        ok = all(r.passed for r in chunk)
        ok_all &= ok
        worst = max(r.max_relative for r in chunk)
        r0 = chunk[0]
        qd = "-" if r0.quotient_dimension is None else str(r0.quotient_dimension)
        blocks = ",".join(str(b) for b in r0.block_sizes)
        print(f"{g}\t{r0.kind}\t{r0.dimension}\t{blocks}\t{qd}\t{len(chunk)}\t{worst:.2e}\t{'pass' if ok else 'FAIL'}")
        for r in chunk:
            if not r.passed:
                print(f"#  fail p={r.p} q={r.q}: {', '.join(r.failures)}")
    elapsed = time.perf_counter() - start
    print(f"# {len(sigs)} signatures x {len(draws)} samples, {'all pass' if ok_all else 'FAILURES'}, {elapsed:.1f}s")
    return EXIT_OK if ok_all else EXIT_FAIL


def parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qgl21", description="Representations of two-parameter quantum gl(2/1).")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a representation and write it as JSON")
    b.add_argument("--hw", required=True, help="global signature m13,m23,m33")
    b.add_argument("--p", required=True)
    b.add_argument("--q", required=True)
    b.add_argument("--a", default="1,1,1", help="constants a1,a2,a3")
    b.add_argument("--precision", type=int, default=None, help="mantissa bits (default: QGL_PRECISION or 128)")
    b.add_argument("--tol", type=float, default=None)
    b.add_argument("--quotient", action="store_true", help="write the irreducible quotient of a nontypical module")
    b.add_argument("--report", action="store_true", help="embed a verification report")
    b.add_argument("--out", required=True, help="output file, or - for stdout")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="check every relation on a stored representation")
    v.add_argument("file")
    v.add_argument("--tol", type=float, default=None)
    v.add_argument("--no-cyclicity", action="store_true")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("classify", help="typical / class 1 / class 2")
    c.add_argument("--hw", required=True)
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("scan", help="build and verify a grid of signatures and random parameters")
    s.add_argument("--lmax", type=int, required=True, help="largest l; widths m13-m23 run over 0..2*lmax")
    s.add_argument("--m33-range", required=True, help="A,B")
    s.add_argument("--samples", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--m23", default="0")
    s.add_argument("--precision", type=int, default=None)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_scan)
    return ap


def main(argv: list[str] | None = None) -> int:
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    args = parser().parse_args(argv)
    if getattr(args, "tol", None) is not None and not args.tol > 0:
        print("error: --tol must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (ValueError, ArithmeticError, io.DocumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
