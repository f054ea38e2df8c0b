"""Base-k words and exact rational helpers.

A word is a ``bytes`` object whose bytes are digit *values* in ``0..k-1``
(not ASCII).  The empty word is ``b""``.  Keeping words as raw digit
arrays makes lexicographic comparison, slicing, and equality C-speed,
supports any alphabet size up to 36, and scales to words of length 10^6.

Rational values are ``fractions.Fraction`` throughout: always reduced,
positive denominator, exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

Word = bytes

DIGIT_CHARS = "0123456789abcdefghijklmnopqrstuvwxyz"
MAX_ALPHABET = len(DIGIT_CHARS)

_CHAR_TO_DIGIT = {c: i for i, c in enumerate(DIGIT_CHARS)}


def check_alphabet(k: int) -> int:
    if not 2 <= k <= MAX_ALPHABET:
        raise ValueError(f"alphabet size must be in 2..{MAX_ALPHABET}, got {k}")
    return k


@dataclass(frozen=True)
class Alphabet:
    """The symbol set {0, ..., k-1} plus its text conventions."""

    k: int

    def __post_init__(self) -> None:
        check_alphabet(self.k)

    @property
    def symbols(self) -> range:
        return range(self.k)

    def parse(self, text: str) -> Word:
        """Parse a digit-character string ('-' or '' denote the empty word)."""
        return parse_word(text, self.k)

    def format(self, w: Word) -> str:
        return format_word(w)

    def check_word(self, w: Word) -> Word:
        if any(d >= self.k for d in w):
            raise ValueError(f"word {format_word(w)!r} has digits outside 0..{self.k - 1}")
        return w


def parse_word(text: str, k: int) -> Word:
    if text in ("", "-"):
        return b""
    digits = bytearray()
    for ch in text:
        d = _CHAR_TO_DIGIT.get(ch.lower())
        if d is None or d >= k:
            raise ValueError(f"invalid digit {ch!r} for alphabet size {k}")
        digits.append(d)
    return bytes(digits)


def format_word(w: Word) -> str:
    return "".join(DIGIT_CHARS[d] for d in w)


def numeral(v: int, k: int) -> Word:
    """Minimal base-k numeral of v >= 0 (numeral(0) = single digit 0)."""
    if v < 0:
        raise ValueError("numeral of a negative integer")
    if v == 0:
        return b"\x00"
    digits = bytearray()
    while v:
        v, d = divmod(v, k)
        digits.append(d)
    digits.reverse()
    return bytes(digits)


def numeral_fixed(v: int, n: int, k: int) -> Word:
    """Base-k numeral of v left-padded with zeros to exactly n digits."""
    if not 0 <= v < k**n:
        raise ValueError(f"{v} does not fit in {n} base-{k} digits")
    digits = bytearray(n)
    i = n - 1
    while v:
        v, digits[i] = divmod(v, k)
        i -= 1
    return bytes(digits)


_POW2_BASES = {2: 1, 4: 2, 8: 3, 16: 4, 32: 5}


def val(w: Word, k: int) -> int:
    """Base-k value of a word: sum of w[i] * k^(n-1-i); val(empty) = 0."""
    if not w:
        return 0
    if k in _POW2_BASES:
        # int(text, k) is linear for power-of-two bases
        return int(w.translate(_TO_ASCII), k)
    v = 0
    for d in w:
        v = v * k + d
    return v


# Translation table digit-value -> ASCII digit char, for fast int() parsing.
_TO_ASCII = bytes(ord(DIGIT_CHARS[b]) if b < MAX_ALPHABET else 0 for b in range(256))


def grid(w: Word, k: int) -> Fraction:
    """val(w) / k^|w| in reduced form; rejects the empty word."""
    if not w:
        raise ValueError("grid is undefined at the empty word")
    return Fraction(val(w, k), k ** len(w))


def lenlex_rank(w: Word, k: int) -> int:
    """0-based index of w in the length-lexicographic enumeration of all words."""
    n = len(w)
    shorter = (k**n - 1) // (k - 1)
    return shorter + val(w, k)


def lenlex_unrank(i: int, k: int) -> Word:
    """Inverse of lenlex_rank."""
    if i < 0:
        raise ValueError("rank must be nonnegative")
    n = 0
    count = 1  # k^n
    base = 0
    while i >= base + count:
        base += count
        count *= k
        n += 1
    return numeral_fixed(i - base, n, k)


def expand_base_k(x: Fraction, n: int, k: int) -> Word:
    """First n digits of the canonical base-k expansion of x in [0, 1).

    Long division keeps every remainder strictly below the denominator, so
    the produced expansion can never end in an all-(k-1) tail; the canonical
    convention holds with no special casing.
    """
    if not 0 <= x < 1:
        raise ValueError(f"point {x} outside [0, 1)")
    if n < 0:
        raise ValueError("digit count must be nonnegative")
    p, q = x.numerator, x.denominator
    digits = bytearray(n)
    for i in range(n):
        p *= k
        digits[i], p = divmod(p, q)
    return bytes(digits)


def all_words(k: int, maxlen: int, minlen: int = 0) -> Iterator[Word]:
    """All words with minlen <= |w| <= maxlen in length-lexicographic order."""
    for n in range(minlen, maxlen + 1):
        for v in range(k**n):
            yield numeral_fixed(v, n, k)


def parse_rational(text: str) -> Fraction:
    """Parse 'p/q' or a bare integer; decimal notation is rejected."""
    text = text.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        return Fraction(int(num), int(den))
    if "." in text or "e" in text.lower():
        raise ValueError(f"rational literals must be p/q, got {text!r}")
    return Fraction(int(text))


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
