"""Invertible synchronous Mealy machines.

One output symbol per input symbol, and every per-state output map is a
permutation of the alphabet.  Such machines act bijectively on each
length level and invert by reversing the per-state permutations in place,
so the round trip is structural rather than computed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .transducer import Fst
from .words import Word, check_alphabet, format_word, parse_word


@dataclass(frozen=True)
class MealyMachine:
    """delta[q][a] -> state, out[q][a] -> symbol; start state included.

    Construction is permissive so that invalid tables can be built and
    inspected; use validate() for the permutation check.  apply/invert
    require a valid machine.
    """

    k: int
    delta: tuple[tuple[int, ...], ...]
    out: tuple[tuple[int, ...], ...]
    start: int = 0
    name: str = "mealy"

    def __post_init__(self) -> None:
        check_alphabet(self.k)
        n = len(self.delta)
        if n == 0 or len(self.out) != n:
            raise ValueError("state tables are empty or mismatched")
        for q in range(n):
            if len(self.delta[q]) != self.k or len(self.out[q]) != self.k:
                raise ValueError(f"state {q}: need one entry per symbol")
            if not all(0 <= t < n for t in self.delta[q]):
                raise ValueError(f"state {q}: transition leaves the state set")
        if not 0 <= self.start < n:
            raise ValueError("start state out of range")

    @property
    def n_states(self) -> int:
        return len(self.delta)


def validate(M: MealyMachine) -> list[str]:
    """Permutation check per state; returns a report, empty when valid."""
    report = []
    for q in range(M.n_states):
        row = M.out[q]
        if sorted(row) != list(range(M.k)):
            report.append(f"state {q}: output map {list(row)} is not a permutation")
    return report


def require_valid(M: MealyMachine) -> MealyMachine:
    report = validate(M)
    if report:
        raise ValueError("invalid Mealy machine: " + "; ".join(report))
    return M


def step_word(M: MealyMachine, q: int, w: Word) -> tuple[Word, int]:
    """Push w through M starting at state q; returns (output, end state)."""
    out = bytearray(len(w))
    delta, lam = M.delta, M.out
    for i, a in enumerate(w):
        out[i] = lam[q][a]
        q = delta[q][a]
    return bytes(out), q


def apply(M: MealyMachine, w: Word) -> Word:
    """M(w), read left-to-right from the start state; length-preserving."""
    return step_word(M, M.start, w)[0]


def invert(M: MealyMachine) -> MealyMachine:
    """The machine undoing M: same states, per-state permutations reversed."""
    require_valid(M)
    delta = []
    out = []
    for q in range(M.n_states):
        inv = [0] * M.k
        for a in range(M.k):
            inv[M.out[q][a]] = a
        delta.append(tuple(M.delta[q][inv[b]] for b in range(M.k)))
        out.append(tuple(inv))
    return MealyMachine(
        k=M.k,
        delta=tuple(delta),
        out=tuple(out),
        start=M.start,
        name=f"{M.name}^-1",
    )


def mealy_identity(k: int) -> MealyMachine:
    return MealyMachine(
        k=k,
        delta=(tuple(0 for _ in range(k)),),
        out=(tuple(range(k)),),
        name="identity",
    )


def mealy_shift(k: int) -> MealyMachine:
    """Single-state derangement: a -> (a+1) mod k."""
    return MealyMachine(
        k=k,
        delta=(tuple(0 for _ in range(k)),),
        out=(tuple((a + 1) % k for a in range(k)),),
        name="shift",
    )


def mealy_carry_flip(k: int) -> MealyMachine:
    """Two states: identity output normally, +1 shift right after a max digit."""
    ident = tuple(range(k))
    shift = tuple((a + 1) % k for a in range(k))
    nxt = tuple(1 if a == k - 1 else 0 for a in range(k))
    return MealyMachine(k=k, delta=(nxt, nxt), out=(ident, shift), name="carry-flip")


SHIPPED_MEALY = {
    "identity": mealy_identity,
    "shift": mealy_shift,
    "carry-flip": mealy_carry_flip,
}


def random_mealy(k: int, n_states: int, rng: random.Random) -> MealyMachine:
    """Random valid machine: per-state random permutations and transitions."""
    delta = tuple(
        tuple(rng.randrange(n_states) for _ in range(k)) for _ in range(n_states)
    )
    out = []
    for _ in range(n_states):
        perm = list(range(k))
        rng.shuffle(perm)
        out.append(tuple(perm))
    return MealyMachine(k=k, delta=delta, out=tuple(out), name="random")


def as_fst(M: MealyMachine) -> Fst:
    """View a Mealy machine as a transducer with single-symbol outputs."""
    return Fst(
        k=M.k,
        delta=M.delta,
        out=tuple(tuple(bytes([b]) for b in row) for row in M.out),
        start=M.start,
        name=M.name,
    )


def format_mealy(M: MealyMachine) -> str:
    lines = [f"mealy k={M.k} states={M.n_states} start={M.start}"]
    for q in range(M.n_states):
        for a in range(M.k):
            sym = format_word(bytes([a]))
            emit = format_word(bytes([M.out[q][a]]))
            lines.append(f"{q} {sym} -> {M.delta[q][a]} emit {emit}")
    return "\n".join(lines) + "\n"


def parse_mealy(text: str) -> MealyMachine:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty machine description")
    header = lines[0].split()
    if not header or header[0] != "mealy":
        raise ValueError(f"expected 'mealy' header, got {lines[0]!r}")
    fields = dict(part.split("=", 1) for part in header[1:])
    k = int(fields["k"])
    n = int(fields["states"])
    start = int(fields.get("start", "0"))
    delta = [[None] * k for _ in range(n)]
    out = [[None] * k for _ in range(n)]
    for ln in lines[1:]:
        left, _, right = ln.partition("->")
        q_s, a_s = left.split()
        tgt, kw, emit = right.split()
        if kw != "emit":
            raise ValueError(f"malformed transition line {ln!r}")
        w = parse_word(emit, k)
        if len(w) != 1:
            raise ValueError("Mealy outputs must be single symbols")
        q = int(q_s)
        a = parse_word(a_s, k)[0]
        delta[q][a] = int(tgt)
        out[q][a] = w[0]
    for q in range(n):
        for a in range(k):
            if delta[q][a] is None:
                raise ValueError(f"missing transition for state {q} symbol {a}")
    return require_valid(
        MealyMachine(
            k=k,
            delta=tuple(tuple(row) for row in delta),
            out=tuple(tuple(row) for row in out),
            start=start,
        )
    )


def load_mealy(path) -> MealyMachine:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_mealy(fh.read())


def save_mealy(M: MealyMachine, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_mealy(M))
