"""Finite-state transducers with exact shortest-input information content.

A transducer reads one input symbol at a time, emits a (possibly empty)
output block per step, and never rejects.  ``k_info`` computes the length
of the shortest input producing a given target word exactly, by
breadth-first search over (state, matched-output-length) pairs.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .words import Word, check_alphabet, format_word, parse_word

INFINITY = math.inf


@dataclass(frozen=True)
class Fst:
    """Deterministic transducer: delta[q][a] -> state, out[q][a] -> word."""

    k: int
    delta: tuple[tuple[int, ...], ...]
    out: tuple[tuple[Word, ...], ...]
    start: int = 0
    name: str = "fst"

    def __post_init__(self) -> None:
        check_alphabet(self.k)
        n = len(self.delta)
        if n == 0:
            raise ValueError("transducer needs at least one state")
        if len(self.out) != n:
            raise ValueError("delta and out must cover the same states")
        for q in range(n):
            if len(self.delta[q]) != self.k or len(self.out[q]) != self.k:
                raise ValueError(f"state {q}: need one transition per symbol")
            for a in range(self.k):
                if not 0 <= self.delta[q][a] < n:
                    raise ValueError(f"transition ({q},{a}) leaves the state set")
                if any(d >= self.k for d in self.out[q][a]):
                    raise ValueError(f"output at ({q},{a}) uses digits >= {self.k}")
        if not 0 <= self.start < n:
            raise ValueError("start state out of range")

    @property
    def n_states(self) -> int:
        return len(self.delta)

    @property
    def max_output_len(self) -> int:
        return max(len(u) for row in self.out for u in row)


def run(T: Fst, pi: Word) -> Word:
    """Overall output of T on input pi (empty input gives empty output)."""
    q = T.start
    parts = []
    delta, out = T.delta, T.out
    for a in pi:
        parts.append(out[q][a])
        q = delta[q][a]
    return b"".join(parts)


def k_info(T: Fst, w: Word) -> int | float:
    """min{ |pi| : T(pi) = w }, or math.inf when w is not in T's range.

    BFS over nodes (q, i) where i counts output symbols matched so far;
    each edge consumes one input symbol, so BFS depth equals input length.
    """
    n = len(w)
    nw = n + 1
    start = T.start * nw
    dist = {start: 0}
    frontier = deque([start])
    delta, out, k = T.delta, T.out, T.k
    best = 0 if n == 0 else None  # empty input already produces the empty word
    if best is not None:
        return best
    while frontier:
        node = frontier.popleft()
        q, i = divmod(node, nw)
        d = dist[node]
        row_d, row_o = delta[q], out[q]
        for a in range(k):
            block = row_o[a]
            j = i + len(block)
            if j > n or w[i:j] != block:
                continue
            nxt = row_d[a] * nw + j
            if nxt not in dist:
                if j == n:
                    return d + 1
                dist[nxt] = d + 1
                frontier.append(nxt)
    return INFINITY


def make_identity(k: int) -> Fst:
    """1-state machine copying every symbol through."""
    return Fst(
        k=k,
        delta=(tuple(0 for _ in range(k)),),
        out=(tuple(bytes([a]) for a in range(k)),),
        name="identity",
    )


def make_zero_emitter(L: int, k: int = 2) -> Fst:
    """1-state machine emitting 0^L on every input symbol."""
    if L < 1:
        raise ValueError("block length must be >= 1")
    block = bytes(L)
    return Fst(
        k=k,
        delta=(tuple(0 for _ in range(k)),),
        out=(tuple(block for _ in range(k)),),
        name=f"zeros:{L}",
    )


def make_letter_permuter(perm: list[int] | tuple[int, ...], k: int | None = None) -> Fst:
    """1-state machine mapping each symbol a to perm[a]."""
    k = len(perm) if k is None else k
    if sorted(perm) != list(range(k)):
        raise ValueError(f"{perm} is not a permutation of 0..{k - 1}")
    return Fst(
        k=k,
        delta=(tuple(0 for _ in range(k)),),
        out=(tuple(bytes([perm[a]]) for a in range(k)),),
        name="permute",
    )


def compose_mealy_after(T: Fst, M) -> Fst:
    """Machine realizing pi -> M(T(pi)) via the product construction.

    States are pairs (T-state, M-state); each T output block is pushed
    symbol-by-symbol through M.  M must be a valid Mealy machine (its
    outputs are single symbols, so block lengths are preserved).
    """
    from .mealy import step_word  # local import to avoid a cycle

    nm = M.n_states
    n_states = T.n_states * nm
    delta = []
    out = []
    for p in range(T.n_states):
        for q in range(nm):
            drow = []
            orow = []
            for a in range(T.k):
                block, q2 = step_word(M, q, T.out[p][a])
                drow.append(T.delta[p][a] * nm + q2)
                orow.append(block)
            delta.append(tuple(drow))
            out.append(tuple(orow))
    return Fst(
        k=T.k,
        delta=tuple(delta),
        out=tuple(out),
        start=T.start * nm + M.start,
        name=f"{M.name}.{T.name}",
    )


def format_fst(T: Fst, tag: str = "fst") -> str:
    lines = [f"{tag} k={T.k} states={T.n_states} start={T.start}"]
    for q in range(T.n_states):
        for a in range(T.k):
            emit = format_word(T.out[q][a]) or "-"
            lines.append(f"{q} {format_word(bytes([a]))} -> {T.delta[q][a]} emit {emit}")
    return "\n".join(lines) + "\n"


def parse_fst(text: str, expect_tag: str = "fst") -> Fst:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty machine description")
    header = lines[0].split()
    if not header or header[0] != expect_tag:
        raise ValueError(f"expected '{expect_tag}' header, got {lines[0]!r}")
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
        q = int(q_s)
        a = parse_word(a_s, k)[0]
        delta[q][a] = int(tgt)
        out[q][a] = parse_word(emit, k)
    for q in range(n):
        for a in range(k):
            if delta[q][a] is None:
                raise ValueError(f"missing transition for state {q} symbol {a}")
    return Fst(
        k=k,
        delta=tuple(tuple(row) for row in delta),
        out=tuple(tuple(row) for row in out),
        start=start,
    )


def load_fst(path) -> Fst:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_fst(fh.read())


def save_fst(T: Fst, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_fst(T))
