"""Residue statistics modulo k^m for integer sequences.

The statistics are exact: counts are integers and deviations from the
uniform frequency 1/k^m are rationals, so threshold checks are exact
inequalities rather than float comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .sequence import DigitSource
from .words import val


@dataclass
class ResidueStats:
    k: int
    m: int
    N: int
    counts: dict[int, int]

    @property
    def modulus(self) -> int:
        return self.k**self.m

    def frequency(self, r: int) -> Fraction:
        return Fraction(self.counts.get(r, 0), self.N)

    def deviation(self, r: int) -> Fraction:
        return abs(self.frequency(r) - Fraction(1, self.modulus))

    @property
    def max_dev(self) -> Fraction:
        return max(self.deviation(r) for r in range(self.modulus))

    def rows(self):
        """(residue, count, frequency, deviation) for every residue."""
        for r in range(self.modulus):
            yield r, self.counts.get(r, 0), self.frequency(r), self.deviation(r)


def residue_histogram(b: Iterable[int], N: int, m: int, k: int) -> ResidueStats:
    """Exact counts of b_n mod k^m over the first N entries of b."""
    if N < 1 or m < 1:
        raise ValueError("need N >= 1 and m >= 1")
    modulus = k**m
    counts: dict[int, int] = {}
    taken = 0
    for b_n in b:
        r = b_n % modulus
        counts[r] = counts.get(r, 0) + 1
        taken += 1
        if taken == N:
            break
    if taken != N:
        raise ValueError(f"sequence ended after {taken} entries, needed {N}")
    return ResidueStats(k=k, m=m, N=N, counts=counts)


def nearlinear_chain(k: int) -> Iterator[int]:
    """The scaled chain of the near-linear enumerator: b_n = k^(n-1) - n."""
    n = 1
    power = 1  # k^(n-1)
    while True:
        yield power - n
        power *= k
        n += 1


def nearlinear_residue_stream(k: int, m: int, N: int) -> ResidueStats:
    """Residues of the near-linear chain without big integers.

    For n > m the power term k^(n-1) vanishes mod k^m, so b_n = -n there;
    the count of each residue class of -n over an interval is a floor
    expression, leaving only the short initial segment to evaluate directly.
    """
    if N < 1 or m < 1:
        raise ValueError("need N >= 1 and m >= 1")
    modulus = k**m
    counts: dict[int, int] = {}
    head = min(m, N)
    for n in range(1, head + 1):
        r = (k ** (n - 1) - n) % modulus
        counts[r] = counts.get(r, 0) + 1
    lo, hi = m + 1, N  # remaining n range, n = -b (mod k^m)
    if lo <= hi:
        for r in range(modulus):
            # count of n in [lo, hi] with n = -r (mod modulus)
            t = (-r) % modulus
            c = (hi - t) // modulus - (lo - 1 - t) // modulus
            if c:
                counts[r] = counts.get(r, 0) + c
    return ResidueStats(k=k, m=m, N=N, counts=counts)


def floor_chain_residues(src: DigitSource, N: int, m: int) -> Iterator[int]:
    """Residues mod k^m of floor(k^n x) for the real x named by a digit
    source, streamed from the digits: the residue is the value of the m
    most recent digits, updated in O(1) per step."""
    k = src.k
    modulus = k**m
    r = 0
    cur = src.cursor()
    for _ in range(N):
        r = (r * k + next(cur)) % modulus
        yield r


def floor_chain_check(src: DigitSource, n: int, m: int) -> bool:
    """Cross-check: the streamed residue at step n equals floor(k^n x) mod
    k^m computed from the prefix value directly."""
    k = src.k
    streamed = None
    for streamed in floor_chain_residues(src, n, m):
        pass
    return streamed == val(src.prefix(n), k) % (k**m)


def equidist_report(
    stats_list: list[ResidueStats],
    threshold: Fraction | None = None,
    source: str = "",
) -> dict:
    """Per-modulus deviation summary.  Verdicts compare the finite-sample
    deviation against the threshold; no limit claim is made or implied."""
    rows = []
    for st in stats_list:
        entry = {
            "m": st.m,
            "N": st.N,
            "modulus": st.modulus,
            "max_dev": str(st.max_dev),
            "max_dev_float": float(st.max_dev),
        }
        if threshold is not None:
            entry["within_threshold"] = bool(st.max_dev <= threshold)
        rows.append(entry)
    report = {
        "basis": "empirical (finite sample)",
        "per_m": rows,
    }
    if source:
        report["source"] = source
    if threshold is not None:
        report["threshold"] = str(threshold)
    return report
