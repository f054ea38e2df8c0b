"""Computable digit sources and block-entropy estimation.

The concrete normal sequence used throughout is the base-k Champernowne
sequence (the numerals of 1, 2, 3, ... concatenated).  Sources support
both random access digit(n) and buffered prefix reads; the Champernowne
random access uses closed-form block arithmetic, so digit(n) never
streams from the beginning.
"""

from __future__ import annotations

import math
from collections import Counter
from typing import Iterator

from .words import Word, check_alphabet, numeral


class DigitSource:
    """A total deterministic rule n -> digit(n), n >= 1, over 0..k-1."""

    k: int
    name: str

    def digit(self, n: int) -> int:
        raise NotImplementedError

    def prefix(self, n: int) -> Word:
        """First n digits as a word; default falls back on digit()."""
        return bytes(self.digit(i) for i in range(1, n + 1))

    def cursor(self) -> Iterator[int]:
        """Sequential read; independent cursors never share state."""
        n = 1
        while True:
            yield self.digit(n)
            n += 1


class ChampernowneSource(DigitSource):
    """Concatenated base-k numerals of 1, 2, 3, ..."""

    def __init__(self, k: int):
        check_alphabet(k)
        self.k = k
        self.name = f"champernowne({k})"
        self._buf = bytearray()
        self._next_number = 1  # first numeral not yet in _buf

    def digit(self, n: int) -> int:
        if n < 1:
            raise ValueError("digit positions are 1-based")
        k = self.k
        # locate the numeral-length block containing position n
        d = 1
        block = (k - 1) * d  # digits contributed by d-digit numerals
        offset = n - 1
        while offset >= block:
            offset -= block
            d += 1
            block = d * (k**d - k ** (d - 1))
        number = k ** (d - 1) + offset // d
        pos = offset % d  # 0-based from the left within the numeral
        return (number // k ** (d - 1 - pos)) % k

    def prefix(self, n: int) -> Word:
        if n < 0:
            raise ValueError("prefix length must be nonnegative")
        buf = self._buf
        k = self.k
        while len(buf) < n:
            buf.extend(numeral(self._next_number, k))
            self._next_number += 1
        return bytes(buf[:n])

    def cursor(self) -> Iterator[int]:
        pos = 0
        while True:
            chunk = self.prefix(max(64, 2 * pos, pos + 1))
            for d in chunk[pos:]:
                yield d
            pos = len(chunk)


class PermutedSource(DigitSource):
    """Letterwise image of another source under a fixed-point-free permutation."""

    def __init__(self, base: DigitSource, perm: list[int] | tuple[int, ...]):
        k = base.k
        if sorted(perm) != list(range(k)):
            raise ValueError(f"{perm} is not a permutation of 0..{k - 1}")
        fixed = [a for a in range(k) if perm[a] == a]
        if fixed:
            raise ValueError(f"permutation has fixed points at {fixed}")
        self.k = k
        self.base = base
        self.perm = tuple(perm)
        self.name = f"perm{list(perm)}({base.name})"
        self._table = bytes(perm[a] if a < k else 0 for a in range(256))

    def digit(self, n: int) -> int:
        return self.perm[self.base.digit(n)]

    def prefix(self, n: int) -> Word:
        return self.base.prefix(n).translate(self._table)


class ConstantSource(DigitSource):
    def __init__(self, k: int, value: int = 0):
        check_alphabet(k)
        if not 0 <= value < k:
            raise ValueError("constant digit outside the alphabet")
        self.k = k
        self.value = value
        self.name = f"constant({value})"

    def digit(self, n: int) -> int:
        return self.value

    def prefix(self, n: int) -> Word:
        return bytes([self.value]) * n


class CyclingSource(DigitSource):
    """0, 1, ..., k-1, 0, 1, ... — uniform single-symbol statistics."""

    def __init__(self, k: int):
        check_alphabet(k)
        self.k = k
        self.name = "cycling"

    def digit(self, n: int) -> int:
        return (n - 1) % self.k

    def prefix(self, n: int) -> Word:
        reps = bytes(range(self.k)) * (n // self.k + 1)
        return reps[:n]


def champernowne(k: int) -> ChampernowneSource:
    return ChampernowneSource(k)


def permuted(src: DigitSource, perm: list[int] | tuple[int, ...]) -> PermutedSource:
    return PermutedSource(src, perm)


def cyclic_shift(k: int) -> tuple[int, ...]:
    """The default derangement a -> (a+1) mod k."""
    return tuple((a + 1) % k for a in range(k))


def prefix(src: DigitSource, n: int) -> Word:
    return src.prefix(n)


def block_entropy(src: DigitSource, N: int, m: int) -> float:
    """Empirical base-k Shannon entropy of sliding m-blocks over the first
    N digits, divided by m; always in [0, 1]."""
    if m < 1:
        raise ValueError("block size must be >= 1")
    if N < m:
        raise ValueError(f"need at least m={m} digits, got N={N}")
    data = src.prefix(N)
    if m == 1:
        counts = Counter(data).values()
        total = N
    else:
        counts = Counter(data[i : i + m] for i in range(N - m + 1)).values()
        total = N - m + 1
    log_k = math.log(src.k)
    h = 0.0
    for c in counts:
        p = c / total
        h -= p * math.log(p)
    return min(1.0, h / (m * log_k))
