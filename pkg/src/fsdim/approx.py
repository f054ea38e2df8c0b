"""Best-from-below approximation chains and their scaled versions.

For an enumerator f and point x, the chain entry a_n is the largest value
f(w) <= x over words of length at most n; b_n = k^n * a_n is the scaled
chain.  Each shipped enumerator has a proven closed form for its own
special point (any point, for grid relabelings); oracle mode recomputes
the chain by exhaustive evaluation and exists to validate the fast path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .enumerator import SeparatorEnumerator
from .words import Word, all_words

DEFAULT_ORACLE_BUDGET = 1 << 20


class OracleBudgetError(RuntimeError):
    """Exhaustive chain evaluation would exceed the evaluation budget."""


class NoValueBelowError(RuntimeError):
    """No word of the allowed length has a value at or below the point."""


@dataclass(frozen=True)
class ApproxChain:
    enumerator: str
    x: Fraction
    values: tuple[Fraction, ...]  # a_0 .. a_N
    k: int
    mode: str

    @property
    def depth(self) -> int:
        return len(self.values) - 1

    def scaled(self) -> tuple[Fraction, ...]:
        """b_n = k^n * a_n, exact, aligned with values (entry 0 included)."""
        return tuple(self.k**n * a for n, a in enumerate(self.values))

    def all_integer(self) -> bool:
        return all(b.denominator == 1 for b in self.scaled()[1:])

    def rows(self):
        """(n, a_n, b_n, integer_flag) rows for reporting."""
        for n, (a, b) in enumerate(zip(self.values, self.scaled())):
            yield n, a, b, b.denominator == 1


def best_below_bruteforce(
    f: SeparatorEnumerator,
    x: Fraction,
    n: int,
    budget: int = DEFAULT_ORACLE_BUDGET,
) -> Fraction:
    """Exact max of f(w) over |w| <= n with f(w) <= x, by full evaluation."""
    k = f.k
    total = (k ** (n + 1) - 1) // (k - 1)
    if total > budget:
        raise OracleBudgetError(
            f"exhaustive search over {total} words exceeds the budget {budget}"
        )
    best: Fraction | None = None
    for w in all_words(k, n):
        v = f.eval(w)
        if v <= x and (best is None or v > best):
            best = v
    if best is None:
        raise NoValueBelowError(f"{f.name} has no value <= {x} on words of length <= {n}")
    return best


def approx_chain(
    f: SeparatorEnumerator,
    x: Fraction,
    N: int,
    mode: str = "fast",
    budget: int = DEFAULT_ORACLE_BUDGET,
) -> ApproxChain:
    """Chain a_0..a_N; fast mode uses the proven closed form, oracle mode
    exhausts all words length by length.  Where both are defined they agree."""
    if not 0 <= x < 1:
        raise ValueError(f"point {x} outside [0, 1)")
    if N < 0:
        raise ValueError("chain depth must be nonnegative")
    if mode == "fast":
        values = []
        for n in range(N + 1):
            v = f.best_below_closed_form(x, n)
            if v is None:
                raise ValueError(
                    f"{f.name} has no closed-form chain at x={x}; use oracle mode"
                )
            values.append(v)
    elif mode == "oracle":
        k = f.k
        total = (k ** (N + 1) - 1) // (k - 1)
        if total > budget:
            raise OracleBudgetError(
                f"oracle chain needs {total} evaluations, budget is {budget}"
            )
        values = []
        best: Fraction | None = None
        for n in range(N + 1):
            for w in all_words(k, n, minlen=n):
                v = f.eval(w)
                if v <= x and (best is None or v > best):
                    best = v
            if best is None:
                raise NoValueBelowError(
                    f"{f.name} has no value <= {x} on words of length <= {n}"
                )
            values.append(best)
    else:
        raise ValueError(f"mode must be 'fast' or 'oracle', got {mode!r}")
    return ApproxChain(
        enumerator=f.description, x=x, values=tuple(values), k=f.k, mode=mode
    )


def scaled_chain(chain: ApproxChain) -> tuple[Fraction, ...]:
    return chain.scaled()
