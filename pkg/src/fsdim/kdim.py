"""Exact relativized approximation complexity and ratio curves.

The quantity computed here is the cheapest transducer description of any
word whose enumerator value lies within delta of the target point.  It is
found exactly in two steps: a structural witness gives an upper bound c0,
and since any strictly shorter input can only produce outputs of length
at most (c0 - 1) * max_output_len, the complete preimage listing up to
that length closes the search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .enumerator import PairEnumerator, SeparatorEnumerator
from .transducer import INFINITY, Fst, k_info
from .words import Word, all_words

WITNESS_CAP = 600


class NoWitnessError(RuntimeError):
    """No word in the ball with finite transducer complexity was found
    within the configured search bounds."""


def log_scale(delta: Fraction, k: int) -> float:
    """log_k(1/delta), stable for denominators far beyond float range."""
    return (math.log(delta.denominator) - math.log(delta.numerator)) / math.log(k)


def k_approx(
    T: Fst,
    f: SeparatorEnumerator,
    x: Fraction,
    delta: Fraction,
) -> int | float:
    """Exact min of k_info(T, w) over words with |f(w) - x| < delta."""
    if delta <= 0:
        raise ValueError("ball radius must be positive")
    if abs(f.eval(b"") - x) < delta:
        return 0  # the empty input already names a point in the ball
    if T.max_output_len == 0:
        return INFINITY  # pure consumer: only the empty word is producible
    c0 = INFINITY
    tried = 0
    for w in f.ball_witnesses(x, delta):
        tried += 1
        cost = k_info(T, w)
        if cost < c0:
            c0 = cost
            break  # any finite witness serves as the upper bound
        if tried >= WITNESS_CAP:
            break
    if math.isinf(c0):
        # fall back on the complete listing of short names in the ball,
        # a few levels past the ball's own resolution
        probe_len = min(24, math.ceil(log_scale(delta, f.k)) + 6)
        probe = f.preimages_within(x, delta, probe_len)
        finite = [c for c in (k_info(T, w) for w in probe) if not math.isinf(c)]
        if not finite:
            raise NoWitnessError(
                f"no witness for {f.name} within {delta} of {x} producible by {T.name} "
                f"(searched {tried} structural witnesses and names up to length {probe_len})"
            )
        c0 = min(finite)
    if c0 == 0:
        return 0
    maxlen = (c0 - 1) * T.max_output_len
    best = c0
    for w in f.preimages_within(x, delta, maxlen):
        cost = k_info(T, w)
        if cost < best:
            best = cost
    return best


@dataclass(frozen=True)
class CurveRow:
    delta: Fraction
    logscale: float
    K: int | float
    ratio: float


@dataclass(frozen=True)
class RatioCurve:
    enumerator: str
    transducer: str
    x: Fraction
    rows: tuple[CurveRow, ...]  # sorted by delta descending

    def ratios(self) -> list[float]:
        return [row.ratio for row in self.rows]


def ratio_curve(
    T: Fst,
    f: SeparatorEnumerator,
    x: Fraction,
    scales: list[Fraction],
) -> RatioCurve:
    """Exact K at each scale plus the ratio K / log_k(1/delta)."""
    if any(d <= 0 for d in scales):
        raise ValueError("scales must be positive")
    if any(scales[i] < scales[i + 1] for i in range(len(scales) - 1)):
        raise ValueError("scales must be non-increasing")
    rows = []
    for delta in scales:
        K = k_approx(T, f, x, delta)
        ls = log_scale(delta, f.k)
        ratio = K / ls if ls > 0 else math.inf
        rows.append(CurveRow(delta=delta, logscale=ls, K=K, ratio=ratio))
    return RatioCurve(
        enumerator=f.description, transducer=T.name, x=x, rows=tuple(rows)
    )


def pair_scales(k: int, n_max: int, n_min: int = 0) -> list[Fraction]:
    """The ball radii k^-(n+2) matching the paired construction's annuli."""
    return [Fraction(1, k ** (n + 2)) for n in range(n_min, n_max + 1)]


def nearlinear_scales(k: int, n_max: int, n_min: int = 1) -> list[Fraction]:
    """The ball radii 2n / k^n used for the near-linear enumerator."""
    return [Fraction(2 * n, k**n) for n in range(n_min, n_max + 1)]


def family_upper_envelope(
    f: SeparatorEnumerator,
    x: Fraction,
    Ls: list[int],
    nmax: int,
    make_machine,
) -> dict:
    """Tail ratios at depth nmax for a family of machines indexed by L,
    and their minimum: an upper-envelope report for the dimension at x.

    make_machine(L) builds the family member; the scale at depth n is the
    enumerator's own (pair or near-linear radii, k^-n otherwise).
    """
    if f.name.startswith("pair"):
        delta = Fraction(1, f.k ** (nmax + 2))
    elif f.name == "nearlinear":
        delta = Fraction(2 * nmax, f.k**nmax)
    else:
        delta = Fraction(1, f.k**nmax)
    per_l = []
    finite = []
    for L in Ls:
        T = make_machine(L)
        try:
            K = k_approx(T, f, x, delta)
        except NoWitnessError:
            per_l.append({"L": L, "K": "no-witness", "ratio": None})
            continue
        ls = log_scale(delta, f.k)
        ratio = K / ls
        per_l.append({"L": L, "K": "inf" if math.isinf(K) else K, "ratio": ratio})
        if not math.isinf(K):
            finite.append(ratio)
    return {
        "enumerator": f.description,
        "x": str(x),
        "n": nmax,
        "delta": str(delta),
        "per_L": per_l,
        "envelope": min(finite) if finite else None,
    }


def pair_structural_check(
    f1: PairEnumerator, n: int, maxlen: int
) -> tuple[bool, list[Word]]:
    """Every word of length <= maxlen valued within r_n of the target must
    be a z-prefix of index >= n or a y-prefix landing in an annulus of
    index >= n (which forces its length past n).  Exhaustive sweep;
    returns the offending words, if any."""
    fam = f1.family
    x = fam.x
    radius = fam.r(n)
    bad: list[Word] = []
    for w in all_words(fam.k, maxlen):
        v = f1.eval(w)
        if abs(v - x) >= radius:
            continue
        cls = fam.classify(w)
        m = len(w)
        if cls.is_z and m >= n:
            continue  # z-prefix carrying the chain value c_m
        if cls.is_y and m >= 1:
            j = fam.phi(m)[1]
            if j >= n and fam.annulus_contains(j, v) and m >= n + 1:
                continue
        bad.append(w)
    return not bad, bad


class CorruptedPairEnumerator(PairEnumerator):
    """Fault-injection wrapper: one chosen word is remapped to a chosen
    value, for demonstrating that the structural sweep catches violations."""

    def __init__(self, base: PairEnumerator, word: Word, value: Fraction):
        self.family = base.family
        self.k = base.k
        self.branch = base.branch
        self.name = base.name + ":corrupted"
        self.density_length_budget = base.density_length_budget
        self.corrupt_word = word
        self.corrupt_value = value

    def eval(self, w: Word) -> Fraction:
        if w == self.corrupt_word:
            return self.corrupt_value
        return super().eval(w)
