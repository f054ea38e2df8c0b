"""Separator-enumerator interface.

A separator enumerator names rationals in [0,1) by finite words so that
the set of named values is dense.  Implementations provide exact
evaluation, complete preimage enumeration inside a value ball, and a
closed-form best-from-below value where one is proven.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator

from ..words import Word

# Complete preimage listings are refused beyond this many candidates; the
# exact-complexity search keeps its inputs well inside the bound.
DEFAULT_PREIMAGE_LIMIT = 500_000


class PreimageLimitError(RuntimeError):
    """The requested complete preimage listing is too large to materialize."""


class SeparatorEnumerator:
    k: int
    name: str
    density_length_budget: int

    def eval(self, w: Word) -> Fraction:
        """Exact value of the word; total on all words including the empty one."""
        raise NotImplementedError

    def preimages_within(
        self,
        x: Fraction,
        delta: Fraction,
        maxlen: int,
        limit: int = DEFAULT_PREIMAGE_LIMIT,
    ) -> list[Word]:
        """Complete list of words w with |w| <= maxlen and |eval(w) - x| < delta."""
        raise NotImplementedError

    def best_below_closed_form(self, x: Fraction, n: int) -> Fraction | None:
        """Proven closed form for the largest value <= x among words of
        length <= n, or None where no closed form applies."""
        return None

    def ball_witnesses(self, x: Fraction, delta: Fraction) -> Iterator[Word]:
        """Words whose values provably fall in the open ball, cheap to name.

        Not complete; used to seed exact-complexity searches with an upper
        bound.  May be empty for enumerators without a structural handle
        on the requested point.
        """
        return iter(())

    def density_witness(self, lo: Fraction, hi: Fraction) -> Word | None:
        """Some word within the declared length budget whose value lies in
        [lo, hi), or None if the scan finds nothing."""
        mid = (lo + hi) / 2
        half = (hi - lo) / 2
        for w in self.preimages_within(mid, half, self.density_length_budget):
            return w
        return None

    @property
    def description(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name} k={self.k}>"


def int_range_in_open_ball(lo: Fraction, hi: Fraction, scale: int) -> range:
    """Integers v with lo < v/scale < hi, i.e. lo*scale < v < hi*scale."""
    a = math.floor(lo * scale) + 1
    b = math.ceil(hi * scale) - 1
    return range(a, b + 1)
