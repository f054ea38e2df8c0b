"""A separator enumerator evaluable in near-linear time.

Targets x = 1/k.  With n = |w| and J_n = k^(n-1) - n, the value is

    c_n = J_n / k^n              if w is all zeros,
    val(w) / k^n                 if w starts with 0 and 0 < val(w) <= J_n,
    0                            if w starts with 0 and val(w) > J_n,
    x + 1/k^(n+1)                if w = 1 followed by zeros,
    val(w) / k^n                 otherwise.

Every leading-zero word evaluates to at most c_n < x and every other word
to more than x, which pins the best-from-below chain at x to exactly c_n.
The val(w) <= J_n test is a lexicographic digit comparison against the
base-k numeral of J_n, so classification never multiplies big integers.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from ..words import Word, check_alphabet, numeral, numeral_fixed, val
from .base import (
    DEFAULT_PREIMAGE_LIMIT,
    PreimageLimitError,
    SeparatorEnumerator,
    int_range_in_open_ball,
)


def threshold_digits(n: int, k: int) -> Word:
    """Base-k numeral of J_n = k^(n-1) - n, left-padded to n-1 digits."""
    if n < 2:
        raise ValueError("threshold digits are defined for lengths >= 2")
    small = numeral(n, k)
    ell = len(small)
    if n - 1 - ell < 0:
        return numeral_fixed(k ** (n - 1) - n, n - 1, k)
    # k^(n-1) - n = (k-1 repeated) followed by the numeral of k^ell - n
    return bytes([k - 1]) * (n - 1 - ell) + numeral_fixed(k**ell - n, ell, k)


class NearLinearEnumerator(SeparatorEnumerator):
    def __init__(self, k: int = 2):
        check_alphabet(k)
        self.k = k
        self.x = Fraction(1, k)
        self.name = "nearlinear"
        # minimal length whose chain value reaches within k^-6 of x; the
        # interval immediately left of x is the binding one
        m = 1
        while Fraction(m, k**m) > Fraction(1, k**6):
            m += 1
        self.density_length_budget = max(m, 8)

    def big_j(self, n: int) -> int:
        return self.k ** (n - 1) - n

    def chain_value(self, n: int) -> Fraction:
        """c_n = J_n / k^n, the value of the all-zero word of length n."""
        return Fraction(self.big_j(n), self.k**n)

    @lru_cache(maxsize=64)
    def _threshold(self, n: int) -> Word:
        return threshold_digits(n, self.k)

    def eval(self, w: Word) -> Fraction:
        n = len(w)
        if n == 0:
            return Fraction(0)  # convention: the empty word names 0
        k = self.k
        if w.count(0) == n:
            return self.chain_value(n)
        if w[0] == 0:
            if w[1:] <= self._threshold(n):
                return Fraction(val(w, k), k**n)
            return Fraction(0)
        if w[0] == 1 and w.count(0) == n - 1:
            return self.x + Fraction(1, k ** (n + 1))
        return Fraction(val(w, k), k**n)

    def preimages_within(self, x, delta, maxlen, limit=DEFAULT_PREIMAGE_LIMIT):
        if delta <= 0:
            raise ValueError("ball radius must be positive")
        k = self.k
        lo, hi = x - delta, x + delta
        zero_in = lo < 0 < hi
        out: list[Word] = []
        if zero_in:
            out.append(b"")
        total = 0
        scale = 1
        for n in range(1, maxlen + 1):
            scale *= k
            jn = self.big_j(n)
            if lo < self.chain_value(n) < hi:
                out.append(bytes(n))
            vs = int_range_in_open_ball(lo, hi, scale)
            # leading zero, value clause: 1 <= v <= J_n
            start = max(vs.start, 1)
            stop = min(vs.stop, jn + 1)
            # leading nonzero, value clause: k^(n-1) < v < k^n
            start2 = max(vs.start, scale // k + 1)
            stop2 = min(vs.stop, scale)
            total += max(0, stop - start) + max(0, stop2 - start2)
            if zero_in:
                total += max(0, scale // k - 1 - jn)
            if total > limit:
                raise PreimageLimitError(
                    f"ball ({lo}, {hi}) holds more than {limit} names up to length {maxlen}"
                )
            for v in range(start, stop):
                out.append(numeral_fixed(v, n, k))
            if zero_in:
                # leading zero, oversized value: maps to 0
                for v in range(jn + 1, scale // k):
                    out.append(numeral_fixed(v, n, k))
            if lo < self.x + Fraction(1, k ** (n + 1)) < hi:
                out.append(b"\x01" + bytes(n - 1))
            for v in range(start2, stop2):
                out.append(numeral_fixed(v, n, k))
        out.sort(key=lambda w: (len(w), w))
        return out

    def best_below_closed_form(self, x, n):
        if x != self.x:
            return None
        if n == 0:
            return Fraction(0)
        return self.chain_value(n)

    def ball_witnesses(self, x, delta):
        if x == self.x:
            n = 1
            while self.x - self.chain_value(n) >= delta:
                n += 1
            for j in range(n, n + 512):
                yield bytes(j)
        else:
            for m in (4, 8, 12, 16):
                found = self.preimages_within(x, delta, m)
                if found:
                    yield from found
                    return

    def density_witness(self, lo, hi):
        k = self.k
        if lo <= 0 < hi:
            return b"\x00" + bytes([k - 1])  # val k-1 > J_2, maps to 0
        for n in range(1, self.density_length_budget + 1):
            if lo <= self.chain_value(n) < hi:
                return bytes(n)
            if lo <= self.x + Fraction(1, k ** (n + 1)) < hi:
                return b"\x01" + bytes(n - 1)
            scale = k**n
            vmin = math.ceil(lo * scale)  # smallest v with v/scale >= lo
            vmax = math.ceil(hi * scale) - 1  # largest v with v/scale < hi
            v = max(vmin, 1)
            if v <= min(vmax, self.big_j(n)):
                return numeral_fixed(v, n, k)
            v = max(vmin, scale // k + 1)
            if v <= min(vmax, scale - 1):
                return numeral_fixed(v, n, k)
        return None
