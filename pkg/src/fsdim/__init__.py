"""fsdim: exact-arithmetic finite-state dimension toolkit.

Words over {0..k-1}, finite-state transducers with exact shortest-input
information content, invertible Mealy relabelings, separator enumerators
(standard, coherent, paired, near-linear), best-from-below approximation
chains, residue equidistribution statistics, and relativized
approximation-complexity ratio curves.
"""

from .approx import ApproxChain, approx_chain, best_below_bruteforce, scaled_chain
from .enumerator import (
    CoherentEnumerator,
    NearLinearEnumerator,
    PairEnumerator,
    PairFamily,
    SeparatorEnumerator,
    StdEnumerator,
    make_enumerator,
    pair_family,
)
from .equidist import (
    ResidueStats,
    equidist_report,
    floor_chain_residues,
    nearlinear_chain,
    nearlinear_residue_stream,
    residue_histogram,
)
from .kdim import (
    NoWitnessError,
    RatioCurve,
    family_upper_envelope,
    k_approx,
    pair_scales,
    nearlinear_scales,
    pair_structural_check,
    ratio_curve,
)
from .mealy import MealyMachine, apply, invert, validate
from .sequence import block_entropy, champernowne, cyclic_shift, permuted
from .transducer import (
    Fst,
    INFINITY,
    compose_mealy_after,
    k_info,
    make_identity,
    make_letter_permuter,
    make_zero_emitter,
    run,
)
from .words import (
    Alphabet,
    Word,
    expand_base_k,
    format_rational,
    format_word,
    grid,
    lenlex_rank,
    lenlex_unrank,
    parse_rational,
    parse_word,
    val,
)

__version__ = "0.1.0"
