"""Command-line surface: evaluation, chains, statistics, curves, verification.

Rational arguments are exact 'p/q' literals (decimals are rejected so
binary floats never enter the pipelines).  Exit codes: 0 success, 1 check
failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import itertools
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import report
from .approx import approx_chain
from .enumerator import SeparatorEnumerator, make_enumerator
from .equidist import (
    ResidueStats,
    equidist_report,
    floor_chain_residues,
    nearlinear_chain,
    nearlinear_residue_stream,
    residue_histogram,
)
from .kdim import family_upper_envelope, ratio_curve
from .sequence import (
    ConstantSource,
    CyclingSource,
    champernowne,
    block_entropy,
    cyclic_shift,
    permuted,
)
from .transducer import (
    Fst,
    load_fst,
    make_identity,
    make_letter_permuter,
    make_zero_emitter,
)
from .verify import SUITES, run_suites
from .words import format_rational, format_word, parse_rational, parse_word


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    k: int
    fmt: str
    seed: int
    out: str | None
    plot: str | None


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _enumerator(args) -> SeparatorEnumerator:
    try:
        return make_enumerator(args.f, args.k)
    except ValueError as e:
        raise UsageError(str(e)) from e


def _point(text: str) -> Fraction:
    try:
        x = parse_rational(text)
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"bad rational literal {text!r}: {e}") from e
    if not 0 <= x < 1:
        raise UsageError(f"point {text} outside [0, 1)")
    return x


def _machine(args) -> Fst:
    if getattr(args, "machine", None):
        return load_fst(args.machine)
    spec = args.T
    if spec == "identity":
        return make_identity(args.k)
    if spec.startswith("zeros:"):
        return make_zero_emitter(int(spec.split(":", 1)[1]), args.k)
    if spec == "shift":
        return make_letter_permuter([(a + 1) % args.k for a in range(args.k)], args.k)
    if spec.startswith("permute:"):
        perm = [int(t) for t in spec.split(":", 1)[1].split(",")]
        return make_letter_permuter(perm, args.k)
    raise UsageError(
        f"unknown transducer spec {spec!r}; use identity, zeros:<L>, shift, "
        "permute:<comma-separated image>, or --machine <file>"
    )


def _digit_source(spec: str, k: int):
    if spec == "champernowne":
        return champernowne(k)
    if spec == "permuted":
        return permuted(champernowne(k), cyclic_shift(k))
    if spec == "cycling":
        return CyclingSource(k)
    if spec.startswith("constant:"):
        return ConstantSource(k, int(spec.split(":", 1)[1]))
    raise UsageError(
        f"unknown digit source {spec!r}; use champernowne, permuted, cycling, constant:<digit>"
    )


def _chain_source(spec: str, k: int, m: int, N: int):
    """Integer-sequence accessor for the equidist command."""
    if spec == "nearlinear":
        return None  # handled by the streaming path
    if spec == "index":
        return itertools.count(1)
    if spec.startswith("constant:"):
        c = int(spec.split(":", 1)[1])
        return itertools.repeat(c)
    if spec.startswith("floor:"):
        src = _digit_source(spec.split(":", 1)[1], k)
        return floor_chain_residues(src, N, m)
    raise UsageError(
        f"unknown sequence spec {spec!r}; use nearlinear, index, constant:<c>, floor:<digit-source>"
    )


def _scales(spec: str, k: int) -> tuple[list[int], list[Fraction]]:
    """Scale grids: pair:<lo>:<hi> gives k^-(n+2), nl:<lo>:<hi> gives
    2n/k^n, grid:<lo>:<hi> gives k^-n, else a comma list of rationals."""
    if ":" in spec:
        kind, lo_s, hi_s = spec.split(":")
        lo, hi = int(lo_s), int(hi_s)
        ns = list(range(lo, hi + 1))
        if kind == "pair":
            return ns, [Fraction(1, k ** (n + 2)) for n in ns]
        if kind == "nl":
            if lo < 1:
                raise UsageError("nl scales start at n=1")
            return ns, [Fraction(2 * n, k**n) for n in ns]
        if kind == "grid":
            return ns, [Fraction(1, k**n) for n in ns]
        raise UsageError(f"unknown scale family {kind!r}")
    deltas = [parse_rational(t) for t in spec.split(",")]
    return list(range(len(deltas))), deltas


def cmd_eval(args) -> int:
    f = _enumerator(args)
    try:
        w = parse_word(args.word, args.k)
    except ValueError as e:
        raise UsageError(str(e)) from e
    sys.stdout.write(format_rational(f.eval(w)) + "\n")
    return 0


def cmd_chain(args) -> int:
    f = _enumerator(args)
    x = _point(args.x)
    chain = approx_chain(f, x, args.n, mode=args.mode)
    if args.format == "json":
        _write(report.json_text(report.chain_json(chain)), args.out)
    else:
        _write(report.chain_csv(chain), args.out)
    if args.plot:
        report.render_chain(chain, args.plot)
    return 0


def cmd_equidist(args) -> int:
    stats: list[ResidueStats] = []
    for m in range(1, args.m + 1):
        if args.source == "nearlinear":
            stats.append(nearlinear_residue_stream(args.k, m, args.N))
        else:
            seq = _chain_source(args.source, args.k, m, args.N)
            stats.append(residue_histogram(seq, args.N, m, args.k))
    threshold = parse_rational(args.threshold) if args.threshold else None
    summary = equidist_report(stats, threshold=threshold, source=args.source)
    if args.format == "json":
        _write(report.json_text(summary), args.out)
    else:
        _write(report.equidist_csv(stats), args.out)
        if args.out:
            _write(report.json_text(summary), args.out + ".summary.json")
    if args.plot:
        report.render_equidist(stats, args.plot, source=args.source)
    return 0


def cmd_kcurve(args) -> int:
    f = _enumerator(args)
    x = _point(args.x)
    T = _machine(args)
    if args.envelope:
        Ls = [int(t) for t in args.Ls.split(",")]
        env = family_upper_envelope(
            f, x, Ls, args.n, lambda L: make_zero_emitter(L, args.k)
        )
        _write(report.json_text(env), args.out)
        return 0
    labels, deltas = _scales(args.scales, args.k)
    curve = ratio_curve(T, f, x, deltas)
    if args.format == "json":
        _write(report.json_text(report.curve_json(curve, labels)), args.out)
    else:
        _write(report.curve_csv(curve, labels), args.out)
    if args.plot:
        report.render_curve(curve, args.plot, labels)
    return 0


def cmd_digits(args) -> int:
    src = _digit_source(args.source, args.k)
    _write(format_word(src.prefix(args.N)) + "\n", args.out)
    return 0


def cmd_entropy(args) -> int:
    src = _digit_source(args.source, args.k)
    rows = [(m, args.N, block_entropy(src, args.N, m)) for m in range(1, args.m + 1)]
    _write(report.entropy_csv(rows), args.out)
    return 0


def cmd_verify(args) -> int:
    names = args.suites or ["all"]
    if names == ["all"]:
        names = list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise UsageError(
            f"unknown suites {unknown}; known: {', '.join(SUITES)} (or 'all')"
        )
    results = run_suites(names, seed=args.seed, inject_fault=args.inject_fault)
    payload = [r.to_dict() for r in results]
    if args.out:
        _write(report.json_text(payload), args.out)
    for r in results:
        mark = "PASS" if r.ok else "FAIL"
        sys.stdout.write(f"[{mark}] {r.suite}/{r.check}: {r.details}\n")
    failed = [r for r in results if not r.ok]
    sys.stdout.write(
        f"{len(results) - len(failed)}/{len(results)} checks passed\n"
    )
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fsdim",
        description="exact separator-enumerator and finite-state dimension toolkit",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, enum=True, point=False):
        sp.add_argument("--k", type=int, default=2, help="alphabet size (default 2)")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", help="write primary output to this file")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        if enum:
            sp.add_argument(
                "--f",
                default="std",
                help="enumerator: std | coherent:<name-or-file> | pair:f0 | pair:f1 | nearlinear",
            )
        if point:
            sp.add_argument("--x", required=True, help="target point as p/q")

    sp = sub.add_parser("eval", help="evaluate an enumerator on one word")
    common(sp)
    sp.add_argument("word", help="digit string; '' or '-' for the empty word")
    sp.set_defaults(fn=cmd_eval)

    sp = sub.add_parser("chain", help="best-from-below approximation chain")
    common(sp, point=True)
    sp.add_argument("--n", type=int, default=16, help="chain depth N")
    sp.add_argument("--mode", choices=("fast", "oracle"), default="fast")
    sp.add_argument("--plot", help="render the chain to this image file")
    sp.set_defaults(fn=cmd_chain)

    sp = sub.add_parser("equidist", help="residue histograms modulo k^m")
    common(sp, enum=False)
    sp.add_argument(
        "--source",
        default="nearlinear",
        help="nearlinear | index | constant:<c> | floor:<digit-source>",
    )
    sp.add_argument("--N", type=int, default=100000)
    sp.add_argument("--m", type=int, default=3, help="check moduli k^1 .. k^m")
    sp.add_argument("--threshold", help="verdict threshold as p/q (report only)")
    sp.add_argument("--plot", help="render residue histograms to this image file")
    sp.set_defaults(fn=cmd_equidist)

    sp = sub.add_parser("kcurve", help="exact approximation-complexity ratio curve")
    common(sp, point=True)
    sp.add_argument("--T", default="identity", help="identity | zeros:<L> | shift | permute:<img>")
    sp.add_argument("--machine", help="load the transducer from this file instead")
    sp.add_argument(
        "--scales",
        default="pair:0:30",
        help="pair:<lo>:<hi> | nl:<lo>:<hi> | grid:<lo>:<hi> | comma list of p/q",
    )
    sp.add_argument("--envelope", action="store_true", help="family envelope report")
    sp.add_argument("--Ls", default="1,2,4,8", help="family members for --envelope")
    sp.add_argument("--n", type=int, default=200, help="tail depth for --envelope")
    sp.add_argument("--plot", help="render the ratio curve to this image file")
    sp.set_defaults(fn=cmd_kcurve)

    sp = sub.add_parser("digits", help="dump a digit-source prefix")
    common(sp, enum=False)
    sp.add_argument("--source", default="champernowne")
    sp.add_argument("--N", type=int, default=64)
    sp.set_defaults(fn=cmd_digits)

    sp = sub.add_parser("entropy", help="sliding block-entropy report")
    common(sp, enum=False)
    sp.add_argument("--source", default="champernowne")
    sp.add_argument("--N", type=int, default=100000)
    sp.add_argument("--m", type=int, default=3, help="block sizes 1 .. m")
    sp.set_defaults(fn=cmd_entropy)

    sp = sub.add_parser("verify", help="run named verification suites")
    common(sp, enum=False)
    sp.add_argument("suites", nargs="*", help=f"suite names or 'all': {', '.join(SUITES)}")
    sp.add_argument(
        "--inject-fault",
        action="store_true",
        help="corrupt one enumerator value to demonstrate failure detection",
    )
    sp.set_defaults(fn=cmd_verify)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except (ValueError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
