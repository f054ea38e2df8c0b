"""Separator enumerators: standard grid, Mealy-relabeled, paired, near-linear."""

from __future__ import annotations

import os

from ..mealy import SHIPPED_MEALY, load_mealy
from .base import DEFAULT_PREIMAGE_LIMIT, PreimageLimitError, SeparatorEnumerator
from .nearlinear import NearLinearEnumerator, threshold_digits
from .pair import (
    BRANCHES,
    MidpointListing,
    PairEnumerator,
    PairFamily,
    WordClass,
    dense_listing_dn,
    dense_listing_far,
    pair_family,
)
from .standard import CoherentEnumerator, StdEnumerator

__all__ = [
    "BRANCHES",
    "CoherentEnumerator",
    "DEFAULT_PREIMAGE_LIMIT",
    "MidpointListing",
    "NearLinearEnumerator",
    "PairEnumerator",
    "PairFamily",
    "PreimageLimitError",
    "SeparatorEnumerator",
    "StdEnumerator",
    "WordClass",
    "dense_listing_dn",
    "dense_listing_far",
    "make_enumerator",
    "pair_family",
    "threshold_digits",
]


def make_enumerator(spec: str, k: int) -> SeparatorEnumerator:
    """Build an enumerator from its command-line name.

    Accepted: ``std``, ``nearlinear``, ``pair:f0``, ``pair:f1``, and
    ``coherent:<name-or-file>`` where the argument is a shipped machine
    name (identity, shift, carry-flip) or a Mealy machine file path.
    """
    if spec == "std":
        return StdEnumerator(k)
    if spec == "nearlinear":
        return NearLinearEnumerator(k)
    if spec.startswith("pair:"):
        return PairEnumerator(spec.split(":", 1)[1], k)
    if spec.startswith("coherent:"):
        arg = spec.split(":", 1)[1]
        if arg in SHIPPED_MEALY:
            return CoherentEnumerator(SHIPPED_MEALY[arg](k))
        if os.path.exists(arg):
            M = load_mealy(arg)
            if M.k != k:
                raise ValueError(f"machine file uses k={M.k}, requested k={k}")
            return CoherentEnumerator(M)
        raise ValueError(f"unknown Mealy machine {arg!r} (not shipped, not a file)")
    raise ValueError(f"unknown enumerator spec {spec!r}")
