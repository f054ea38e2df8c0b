"""The paired enumerators with identical best-from-below chains.

Both enumerators target the point x = 1/2 and share every value except on
two thin families of words.  Around x, the punctured neighborhood
(x - r_0, x + r_0) \\ {x} with r_n = k^-(n+2) splits into annuli

    A_n = (x - r_n, x - r_{n+1}) U (x + r_{n+1}, x + r_n),

and c_n = x - (r_n + r_{n+1})/2 sits in the left half of A_n.  Branch f0
maps the all-zero word of each length n to c_n, branch f1 maps the
length-n prefix z_n of a fixed computable normal sequence there instead.
Both branches place dense annulus values on the prefixes y_n of the
digit-permuted sequence, and both send every other word to a shared dense
listing of values far from x.  The construction leaves f0 unspecified on
z_n and f1 unspecified on the all-zero words; those leftovers are routed
to an explicit far-region family so that neither chain nor ball structure
near x is disturbed.

For k = 2 the permuted prefixes y_1, y_2 collide with the all-zero words
(the base-2 normal sequence used here starts 11...).  The all-zero
assignment takes precedence for f0; f1 is unaffected because z_n never
equals the all-zero word.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..sequence import champernowne, cyclic_shift, permuted
from ..words import Word, check_alphabet, numeral_fixed, val
from .base import (
    DEFAULT_PREIMAGE_LIMIT,
    PreimageLimitError,
    SeparatorEnumerator,
)

BRANCHES = ("f0", "f1")


class MidpointListing:
    """Breadth-first k-adic midpoint refinement over disjoint intervals.

    Level s emits the new refinement points a + i*(b-a)/k^s (i not
    divisible by k) of each piece, interleaved across pieces; optional
    fixed values are emitted first.  Values are pairwise distinct and
    dense in every piece.
    """

    def __init__(self, k, pieces, exclude=(), lead=()):
        self.k = k
        self.pieces = [(Fraction(a), Fraction(b)) for a, b in pieces]
        self.exclude = set(exclude)
        self._values: list[Fraction] = [v for v in lead if v not in self.exclude]
        self._level = 0

    def _emit_level(self) -> None:
        self._level += 1
        k, s = self.k, self._level
        step_den = k**s
        per_piece = []
        for a, b in self.pieces:
            width = b - a
            pts = [
                a + i * width / step_den for i in range(1, step_den) if i % k
            ]
            per_piece.append(pts)
        for group in zip(*per_piece):
            for v in group:
                if v not in self.exclude:
                    self._values.append(v)

    def value(self, t: int) -> Fraction:
        while len(self._values) <= t:
            self._emit_level()
        return self._values[t]

    def values_upto(self, count: int) -> list[Fraction]:
        while len(self._values) < count:
            self._emit_level()
        return self._values[:count]


@dataclass(frozen=True)
class WordClass:
    """Which family a word belongs to, with the branch-relevant flags."""

    kind: str  # "zero-power" | "z-prefix" | "y-prefix" | "remainder"
    n: int  # word length
    is_zero: bool
    is_z: bool
    is_y: bool
    annulus: int | None = None  # for y-prefixes: index of the annulus hit
    rank: int | None = None  # for remainder words: shared far-listing index


class PairFamily:
    """Shared state for both branches: parameters, sequences, listings."""

    def __init__(self, k: int = 2):
        check_alphabet(k)
        self.k = k
        self.x = Fraction(1, 2)
        self.z_source = champernowne(k)
        self.perm = cyclic_shift(k)
        self.y_source = permuted(self.z_source, self.perm)
        self._far: MidpointListing | None = None
        # longest all-(k-1) prefix of the digit sequence: exactly the
        # lengths m where y_m collides with the all-zero word
        run = 0
        while self.z_source.digit(run + 1) == k - 1:
            run += 1
        self.overlap_max = run

    # -- parameters ---------------------------------------------------

    def r(self, n: int) -> Fraction:
        return Fraction(1, self.k ** (n + 2))

    def c(self, n: int) -> Fraction:
        return self.x - (self.r(n) + self.r(n + 1)) / 2

    def annulus_pieces(self, n: int) -> list[tuple[Fraction, Fraction]]:
        x = self.x
        return [
            (x - self.r(n), x - self.r(n + 1)),
            (x + self.r(n + 1), x + self.r(n)),
        ]

    def annulus_contains(self, n: int, v: Fraction) -> bool:
        (a1, b1), (a2, b2) = self.annulus_pieces(n)
        return a1 < v < b1 or a2 < v < b2

    def leftover_value(self, n: int) -> Fraction:
        """Far-region value for the word each branch leaves unassigned at
        length n (z_n under f0, the all-zero word under f1)."""
        base = self.x + self.r(0)
        return base + (1 - base) * Fraction(1, self.k**n)

    # -- listings -----------------------------------------------------

    @lru_cache(maxsize=None)
    def annulus_listing(self, n: int) -> MidpointListing:
        return MidpointListing(self.k, self.annulus_pieces(n), exclude={self.c(n)})

    @property
    def far_listing(self) -> MidpointListing:
        if self._far is None:
            lo_piece = (Fraction(0), self.x - self.r(0))
            hi_piece = (self.x + self.r(0), Fraction(1))
            self._far = MidpointListing(
                self.k,
                [lo_piece, hi_piece],
                lead=[Fraction(0), self.x - self.r(0), self.x + self.r(0)],
            )
        return self._far

    def phi(self, m: int) -> tuple[Fraction, int]:
        """Annulus value for the length-m permuted prefix: the length class
        containing m is the set {2^n (2t+1)}, so n is the 2-adic valuation."""
        if m < 1:
            raise ValueError("annulus values start at length 1")
        n = (m & -m).bit_length() - 1
        t = ((m >> n) - 1) // 2
        return self.annulus_listing(n).value(t), n

    # -- sequences ----------------------------------------------------

    def z(self, n: int) -> Word:
        return self.z_source.prefix(n)

    def y(self, n: int) -> Word:
        return self.y_source.prefix(n)

    # -- word bookkeeping ----------------------------------------------

    def special_count(self, n: int) -> int:
        """Distinct special words of length n (all-zero, z_n, y_n)."""
        if n == 0:
            return 1
        return 2 if n <= self.overlap_max else 3

    def count_remainder_below(self, n: int) -> int:
        """Number of remainder words of length < n."""
        if n <= 0:
            return 0
        k = self.k
        words = (k**n - 1) // (k - 1)
        specials = 1 + 3 * (n - 1) - min(self.overlap_max, n - 1)
        return words - specials

    def specials(self, n: int) -> set[Word]:
        if n == 0:
            return {b""}
        return {bytes(n), self.z(n), self.y(n)}

    def remainder_rank(self, w: Word) -> int:
        n = len(w)
        before = sum(1 for s in self.specials(n) if s < w)
        return self.count_remainder_below(n) + val(w, self.k) - before

    def remainder_word(self, rank: int) -> Word:
        """Inverse of remainder_rank."""
        if rank < 0:
            raise ValueError("rank must be nonnegative")
        n = 1
        while self.count_remainder_below(n + 1) <= rank:
            n += 1
        v = rank - self.count_remainder_below(n)
        for s in sorted(val(s, self.k) for s in self.specials(n)):
            if s <= v:
                v += 1
        return numeral_fixed(v, n, self.k)

    def classify(self, w: Word) -> WordClass:
        n = len(w)
        if n == 0:
            return WordClass("zero-power", 0, True, True, True)
        is_zero = w.count(0) == n
        is_z = w == self.z(n)
        is_y = w == self.y(n)
        if is_zero:
            return WordClass("zero-power", n, True, is_z, is_y)
        if is_z:
            return WordClass("z-prefix", n, False, True, False)
        if is_y:
            _, j = self.phi(n)
            return WordClass("y-prefix", n, False, False, True, annulus=j)
        return WordClass(
            "remainder", n, False, False, False, rank=self.remainder_rank(w)
        )

    # -- values --------------------------------------------------------

    def value(self, w: Word, branch: str) -> Fraction:
        n = len(w)
        if n == 0:
            # the empty word is simultaneously the length-0 member of all
            # three special families; both branches give it c_0
            return self.c(0)
        is_zero = w.count(0) == n
        if branch == "f0":
            if is_zero:
                return self.c(n)
            if w == self.y(n):
                return self.phi(n)[0]
            if w == self.z(n):
                return self.leftover_value(n)
        elif branch == "f1":
            if w == self.z(n):
                return self.c(n)
            if w == self.y(n):
                return self.phi(n)[0]
            if is_zero:
                return self.leftover_value(n)
        else:
            raise ValueError(f"branch must be one of {BRANCHES}, got {branch!r}")
        return self.far_listing.value(self.remainder_rank(w))


@lru_cache(maxsize=None)
def pair_family(k: int = 2) -> PairFamily:
    return PairFamily(k)


class PairEnumerator(SeparatorEnumerator):
    def __init__(self, branch: str, k: int = 2, family: PairFamily | None = None):
        if branch not in BRANCHES:
            raise ValueError(f"branch must be one of {BRANCHES}, got {branch!r}")
        self.family = family or pair_family(k)
        self.k = self.family.k
        self.branch = branch
        self.name = f"pair:{branch}"
        self.density_length_budget = 64

    def eval(self, w: Word) -> Fraction:
        return self.family.value(w, self.branch)

    def classify(self, w: Word) -> WordClass:
        return self.family.classify(w)

    def preimages_within(self, x, delta, maxlen, limit=DEFAULT_PREIMAGE_LIMIT):
        if delta <= 0:
            raise ValueError("ball radius must be positive")
        fam = self.family
        lo, hi = x - delta, x + delta
        out: list[Word] = []
        if lo < fam.c(0) < hi:
            out.append(b"")
        for n in range(1, maxlen + 1):
            for w in sorted(fam.specials(n)):
                if lo < self.eval(w) < hi:
                    out.append(w)
        # remainder words carry the shared far listing; needed only when
        # the ball pokes outside the inner neighborhood of x
        if lo < fam.x - fam.r(0) or hi > fam.x + fam.r(0):
            total = fam.count_remainder_below(maxlen + 1)
            if total > limit:
                raise PreimageLimitError(
                    f"far-listing scan over {total} remainder words exceeds {limit}"
                )
            values = fam.far_listing.values_upto(total)
            for rank, v in enumerate(values):
                if lo < v < hi:
                    out.append(fam.remainder_word(rank))
        out.sort(key=lambda w: (len(w), w))
        return out

    def best_below_closed_form(self, x, n):
        if x == self.family.x:
            return self.family.c(n)
        return None

    def ball_witnesses(self, x, delta):
        fam = self.family
        if x == fam.x:
            n = 0
            while fam.x - fam.c(n) >= delta:
                n += 1
            for j in range(n, n + 512):
                yield bytes(j) if self.branch == "f0" else fam.z(j)
        else:
            for m in (4, 8, 12, 16):
                found = self.preimages_within(x, delta, m)
                if found:
                    yield from found
                    return

    def density_witness(self, lo, hi):
        fam = self.family
        budget = self.density_length_budget
        # chain values c_n (named by all-zero words / z-prefixes)
        for n in range(budget + 1):
            if lo <= fam.c(n) < hi:
                return bytes(n) if self.branch == "f0" else fam.z(n)
        # leftover far family
        for n in range(1, budget + 1):
            if self.branch == "f1" and n <= fam.overlap_max:
                continue
            if lo <= fam.leftover_value(n) < hi:
                return fam.z(n) if self.branch == "f0" else bytes(n)
        # annulus values named by y-prefixes of length 2^j (2t+1) <= budget
        for j in range(budget.bit_length()):
            step = 1 << j
            t = 0
            m = step
            while m <= budget:
                v = fam.annulus_listing(j).value(t)
                if lo <= v < hi:
                    w = fam.y(m)
                    # for f0 the collision lengths yield c_m instead
                    if self.branch == "f1" or m > fam.overlap_max:
                        return w
                t += 1
                m = step * (2 * t + 1)
        # shared far listing on remainder words
        for rank in range(4096):
            v = fam.far_listing.value(rank)
            if lo <= v < hi:
                w = fam.remainder_word(rank)
                if len(w) <= budget:
                    return w
        return None


def dense_listing_dn(family: PairFamily, n: int, t: int) -> Fraction:
    """t-th annulus-n value of the fixed dense listing (never c_n)."""
    return family.annulus_listing(n).value(t)


def dense_listing_far(family: PairFamily, t: int) -> Fraction:
    """t-th value of the fixed dense listing outside (x - r_0, x + r_0)."""
    return family.far_listing.value(t)
