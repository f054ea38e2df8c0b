"""Delimited and JSON output, plus figure rendering for report paths.

All CSV and JSON emitted here is byte-deterministic for a fixed
configuration and seed: rationals print as p/q, floats as their shortest
round-trip repr, JSON keys are sorted.  Figures are rendered to files
with the Agg backend; the delimited output stays the primary artifact.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

from .approx import ApproxChain
from .equidist import ResidueStats
from .kdim import RatioCurve
from .words import format_rational


def _num(x) -> str:
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, float):
        return "inf" if math.isinf(x) else repr(x)
    return str(x)


def chain_csv(chain: ApproxChain) -> str:
    lines = ["n,a_n,b_n,integer_flag"]
    for n, a, b, is_int in chain.rows():
        lines.append(f"{n},{_num(a)},{_num(b)},{int(is_int)}")
    return "\n".join(lines) + "\n"


def chain_json(chain: ApproxChain) -> dict:
    return {
        "enumerator": chain.enumerator,
        "x": _num(chain.x),
        "k": chain.k,
        "mode": chain.mode,
        "rows": [
            {"n": n, "a_n": _num(a), "b_n": _num(b), "integer": is_int}
            for n, a, b, is_int in chain.rows()
        ],
        "all_integer": chain.all_integer(),
    }


def equidist_csv(stats_list: list[ResidueStats]) -> str:
    lines = ["m,N,residue,count,frequency,deviation"]
    for st in stats_list:
        for r, count, freq, dev in st.rows():
            lines.append(f"{st.m},{st.N},{r},{count},{_num(freq)},{_num(dev)}")
    return "\n".join(lines) + "\n"


def curve_csv(curve: RatioCurve, labels: list[int] | None = None) -> str:
    lines = ["n,delta,logscale,K,ratio"]
    for i, row in enumerate(curve.rows):
        n = labels[i] if labels else i
        lines.append(
            f"{n},{_num(row.delta)},{_num(row.logscale)},{_num(row.K)},{_num(row.ratio)}"
        )
    return "\n".join(lines) + "\n"


def curve_json(curve: RatioCurve, labels: list[int] | None = None) -> dict:
    return {
        "enumerator": curve.enumerator,
        "transducer": curve.transducer,
        "x": _num(curve.x),
        "rows": [
            {
                "n": labels[i] if labels else i,
                "delta": _num(row.delta),
                "logscale": row.logscale,
                "K": "inf" if isinstance(row.K, float) and math.isinf(row.K) else row.K,
                "ratio": "inf" if math.isinf(row.ratio) else row.ratio,
            }
            for i, row in enumerate(curve.rows)
        ],
    }


def entropy_csv(rows: list[tuple[int, int, float]]) -> str:
    lines = ["m,N,entropy"]
    for m, N, h in rows:
        lines.append(f"{m},{N},{_num(h)}")
    return "\n".join(lines) + "\n"


def json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- figures ------------------------------------------------------------


def _axes():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_chain(chain: ApproxChain, path: str) -> None:
    plt = _axes()
    ns = list(range(len(chain.values)))
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(ns, [float(a) for a in chain.values], marker="o", ms=3, lw=1)
    ax.axhline(float(chain.x), color="crimson", lw=0.8, ls="--", label=f"x = {chain.x}")
    ax.set_xlabel("n")
    ax.set_ylabel("best value below x among names of length <= n")
    ax.set_title(f"{chain.enumerator}: approximation chain at x = {chain.x}")
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_curve(curve: RatioCurve, path: str, labels: list[int] | None = None) -> None:
    plt = _axes()
    xs = [row.logscale for row in curve.rows]
    ys = [row.ratio for row in curve.rows]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(xs, ys, marker="o", ms=3, lw=1)
    ax.set_xlabel("log_k(1/delta)")
    ax.set_ylabel("K / log_k(1/delta)")
    ax.set_title(f"{curve.transducer} on {curve.enumerator} at x = {curve.x}")
    ax.set_ylim(bottom=0)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_equidist(stats_list: list[ResidueStats], path: str, source: str = "") -> None:
    plt = _axes()
    fig, axes = plt.subplots(1, len(stats_list), figsize=(4 * len(stats_list), 3.6))
    if len(stats_list) == 1:
        axes = [axes]
    for ax, st in zip(axes, stats_list):
        rs = list(range(st.modulus))
        freqs = [float(st.frequency(r)) for r in rs]
        ax.bar(rs, freqs, color="steelblue")
        ax.axhline(1 / st.modulus, color="crimson", lw=0.8, ls="--")
        ax.set_title(f"mod {st.k}^{st.m}, N={st.N}, max dev {float(st.max_dev):.2e}")
        ax.set_xlabel("residue")
        ax.set_ylabel("frequency")
    if source:
        fig.suptitle(source)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
