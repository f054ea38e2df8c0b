"""The standard base-k enumerator and its Mealy-relabeled variants.

A coherent enumerator evaluates words by pushing them through an
invertible synchronous Mealy machine and reading the result off the
base-k grid: eval(w) = grid(M(w)).  The standard enumerator is the
identity relabeling.  Both map the empty word to 0.
"""

from __future__ import annotations

from fractions import Fraction

from ..mealy import MealyMachine, apply, invert, mealy_identity, require_valid
from ..words import Word, expand_base_k, grid, numeral_fixed
from .base import (
    PreimageLimitError,
    SeparatorEnumerator,
    int_range_in_open_ball,
)


class CoherentEnumerator(SeparatorEnumerator):
    def __init__(self, M: MealyMachine, name: str | None = None):
        require_valid(M)
        self.k = M.k
        self.machine = M
        self.inverse = invert(M)
        self.name = name or f"coherent:{M.name}"
        self.density_length_budget = 6

    def eval(self, w: Word) -> Fraction:
        if not w:
            return Fraction(0)
        return grid(apply(self.machine, w), self.k)

    def preimages_within(self, x, delta, maxlen, limit=500_000):
        if delta <= 0:
            raise ValueError("ball radius must be positive")
        k = self.k
        out: list[Word] = []
        if abs(x) < delta:
            out.append(b"")
        lo, hi = x - delta, x + delta
        scale = 1
        total = 0
        for n in range(1, maxlen + 1):
            scale *= k
            vs = int_range_in_open_ball(lo, hi, scale)
            start = max(vs.start, 0)
            stop = min(vs.stop, scale)
            total += max(0, stop - start)
            if total > limit:
                raise PreimageLimitError(
                    f"ball ({lo}, {hi}) holds more than {limit} grid names up to length {maxlen}"
                )
            for v in range(start, stop):
                out.append(apply(self.inverse, numeral_fixed(v, n, k)))
        return out

    def best_below_closed_form(self, x, n):
        if not 0 <= x < 1:
            raise ValueError(f"point {x} outside [0, 1)")
        if n == 0:
            return Fraction(0)
        scale = self.k**n
        return Fraction(int(x * scale), scale)  # floor(k^n x) / k^n

    def ball_witnesses(self, x, delta):
        d = 1
        scale = self.k
        while Fraction(1, scale) >= delta:
            d += 1
            scale *= self.k
        for extra in range(64):
            u = expand_base_k(x, d + extra, self.k)
            yield apply(self.inverse, u)

    def density_witness(self, lo, hi):
        # the truncation of lo at the budget depth lands exactly on lo for
        # budget-resolution k-adic intervals, and inside [lo, hi) in general
        u = expand_base_k(lo, self.density_length_budget, self.k)
        w = apply(self.inverse, u)
        if lo <= self.eval(w) < hi:
            return w
        return super().density_witness(lo, hi)


class StdEnumerator(CoherentEnumerator):
    def __init__(self, k: int):
        super().__init__(mealy_identity(k), name="std")
