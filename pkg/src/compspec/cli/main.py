"""``compspec`` command line.

Exit codes: 0 when the symbol's spectrum is known exactly, 2 when only bounds
are certified, 1 on any error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from ..dynamics import SampleGrid, find_squaring_iterate, growth_certificate, growth_table, write_growth_csv
from ..errors import CertificateNotFound, CompSpecError, HypothesisError
from ..polycore import parse
from ..resolvent import parse_test_function, residual, resolvent_apply, spectral_witness
from ..spectrum import Membership, SpectrumDescriptor, contains, spectrum_of
from .plotdata import write_plot_data
from .report import build_report, describe_descriptor

EXIT_EXACT = 0
EXIT_ERROR = 1
EXIT_PARTIAL = 2


class _Parser(argparse.ArgumentParser):
    # usage errors share the generic error code; 2 means a partial spectrum
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _status_code(d: SpectrumDescriptor) -> int:
    return EXIT_EXACT if d.is_exact else EXIT_PARTIAL


def parse_lambda(text: str) -> tuple[Fraction, Fraction]:
    """``re,im`` (or just ``re``) with decimal or ``p/q`` parts."""
    parts = [p.strip() for p in text.split(",")]
    if not 1 <= len(parts) <= 2:
        raise ValueError(f"lambda must be re,im; got {text!r}")
    re = Fraction(parts[0])
    im = Fraction(parts[1]) if len(parts) == 2 else Fraction(0)
    return re, im


def parse_grid(text: str) -> SampleGrid:
    half, _, count = text.partition(",")
    if not count:
        raise ValueError(f"grid must be L,N; got {text!r}")
    return SampleGrid(-float(half), float(half), int(count))


def _emit_json(args, payload: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)


def cmd_classify(args) -> int:
    phi = parse(args.symbol)
    report = build_report(phi)
    if args.plot_data:
        write_plot_data(args.plot_data, report.descriptor)
    if args.json:
        _emit_json(args, report.to_json())
        return _status_code(report.descriptor)
    d = report.descriptor
    print(f"symbol: {report.text}")
    print(f"degree: {phi.degree}")
    sc = report.symbol_class
    if sc is None:
        print("fixed points: every point")
    elif not sc.fixed_points:
        print("fixed points: none")
    else:
        for rec in sc.fixed_points:
            print(
                f"fixed point: {float(rec.point):.12g} multiplicity {rec.multiplicity} {rec.stability.value}"
            )
    print(f"spectrum: {describe_descriptor(d)}")
    print("provenance: " + ", ".join(t.value for t in d.provenance))
    return _status_code(d)


def cmd_member(args) -> int:
    phi = parse(args.symbol)
    re, im = parse_lambda(args.lam)
    d = spectrum_of(phi)
    verdict = contains(d, re, im)
    print(verdict.value.capitalize())
    return _status_code(d)


def cmd_resolvent(args) -> int:
    phi = parse(args.symbol)
    re, im = parse_lambda(args.lam)
    lam = complex(float(re), float(im))
    g = parse_test_function(args.g)
    grid = parse_grid(args.grid)
    d = spectrum_of(phi)
    verdict = contains(d, re, im)
    if verdict is not Membership.OUT:
        print(f"warning: lambda is not outside the spectrum ({verdict.value}); expect divergence", file=sys.stderr)
    res = resolvent_apply(phi, lam, g, grid, tol=args.tol * 1e-2)
    worst = residual(phi, lam, res.f, g, tol=args.tol)
    print(f"m_star: {res.m_star}")
    print(f"max_residual: {worst:.3e}")
    if args.out:
        res.f.write_csv(args.out)
        print(f"csv: {args.out}")
    return _status_code(d)


def cmd_witness(args) -> int:
    phi = parse(args.symbol)
    re, im = parse_lambda(args.lam)
    lam = complex(float(re), float(im))
    w = spectral_witness(phi, lam, m_max=args.mmax)
    if args.json:
        _emit_json(args, w.to_json())
    else:
        print(f"case: {w.case}  fixed point a = {w.fixed_point:.17g}  delta = {w.delta:g}")
        print(f"{'m':>3}  {'y_m':>22}  {'y_m - a':>12}  {'|f(y_m)|':>14}")
        for m, (y, off, v) in enumerate(zip(w.y, w.y_offsets, w.candidate_values)):
            print(f"{m:>3}  {y:>22.17g}  {off:>12.4e}  {abs(v):>14.8g}")
        print("f(a) = 0")
        print(f"divergence_flag: {str(w.divergence_flag).lower()}")
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(w.to_json() + "\n")
    return _status_code(spectrum_of(phi))


def _short_number(v) -> str:
    if isinstance(v, Fraction) and v.numerator.bit_length() + v.denominator.bit_length() > 256:
        return "~" + mpmath.nstr(mpmath.mpf(v.numerator) / v.denominator, 12)
    return str(v)


def cmd_dynamics(args) -> int:
    phi = parse(args.symbol)
    try:
        cert = find_squaring_iterate(phi, Fraction(args.K))
        print(f"N={cert.N}, a={cert.a}")
    except (HypothesisError, CertificateNotFound) as exc:
        print(f"squaring iterate: {exc}")
    r = Fraction(args.r)
    try:
        g = growth_certificate(phi, n=args.n, r=r, m_max=args.mmax)
        print(f"growth: r={r}, n={g.n}, q={g.q}, C={g.C:.6g}")
    except CertificateNotFound as exc:
        print(f"growth: {exc}")
        for w in exc.witnesses:
            print(f"  witness m={w.m} x={w.x} derivative={_short_number(w.derivative)}")
        return EXIT_ERROR
    if args.out:
        write_growth_csv(args.out, growth_table(phi, args.n, args.mmax, g.grid))
        print(f"csv: {args.out}")
    return _status_code(spectrum_of(phi))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="compspec", description="Spectra of composition operators with polynomial symbols.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="fixed points and spectrum descriptor")
    c.add_argument("symbol")
    c.add_argument("--json", action="store_true")
    c.add_argument("--out", help="write the JSON report here instead of stdout")
    c.add_argument("--plot-data", help="CSV of boundary samples of the descriptor sets")
    c.set_defaults(func=cmd_classify)

    m = sub.add_parser("member", help="is lambda in the spectrum: In, Out or Unknown")
    m.add_argument("symbol")
    m.add_argument("--lambda", dest="lam", required=True, help="re,im, for example 1/2,0 or -1,0")
    m.set_defaults(func=cmd_member)

    r = sub.add_parser("resolvent", help="resolvent series on a grid and its residual")
    r.add_argument("symbol")
    r.add_argument("--lambda", dest="lam", required=True)
    r.add_argument("--g", default="gaussian", help="gaussian | gaussian:c,w | hermite:k | bump:a,b")
    r.add_argument("--grid", default="10,1601", help="L,N for N nodes on [-L, L]")
    r.add_argument("--tol", type=float, default=1e-8)
    r.add_argument("--out", help="CSV of f on the grid")
    r.set_defaults(func=cmd_resolvent)

    w = sub.add_parser("witness", help="forced values showing lambda is in the spectrum")
    w.add_argument("symbol")
    w.add_argument("--lambda", dest="lam", required=True)
    w.add_argument("--mmax", type=int, default=12)
    w.add_argument("--json", action="store_true")
    w.add_argument("--out", help="write the JSON witness report here")
    w.set_defaults(func=cmd_witness)

    d = sub.add_parser("dynamics", help="squaring iterate and growth certificate")
    d.add_argument("symbol")
    d.add_argument("--K", default="1")
    d.add_argument("--r", default="2")
    d.add_argument("--n", type=int, default=1)
    d.add_argument("--mmax", type=int, default=12)
    d.add_argument("--out", help="CSV of the sampled iterate derivatives")
    d.set_defaults(func=cmd_dynamics)
    return p


def _shield_negatives(argv: Sequence[str]) -> list[str]:
    """Symbols such as ``-x^3 + x`` and values such as ``-1,0`` start with a
    dash; a leading space stops argparse from reading them as options. No
    subcommand has a single-dash option besides ``-h``."""
    return [f" {a}" if a.startswith("-") and not a.startswith("--") and a != "-h" else a for a in argv]


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_shield_negatives(argv))
    try:
        return args.func(args)
    except (CompSpecError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def run() -> None:
    sys.exit(main())
