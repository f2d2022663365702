"""Two-sided Gram-Schmidt biorthogonalization, deterministic and sketched."""

from ._core import (
    BiorthResult,
    LanczosResult,
    RBiorthResult,
    SketchOperator,
    biorth_loss,
    cond2,
    decaying_spectrum,
    gen_gaussian_pair,
    gen_ill_conditioned,
    gen_prescribed_spectrum,
    nonsym_lanczos,
    rand_nonsym_lanczos,
    randomized_two_sided_gs,
    ritz_values,
    sketch_biorth_error,
    two_sided_gs,
)

__all__ = [
    "BiorthResult",
    "LanczosResult",
    "RBiorthResult",
    "SketchOperator",
    "biorth_loss",
    "cond2",
    "decaying_spectrum",
    "gen_gaussian_pair",
    "gen_ill_conditioned",
    "gen_prescribed_spectrum",
    "nonsym_lanczos",
    "rand_nonsym_lanczos",
    "randomized_two_sided_gs",
    "ritz_values",
    "sketch_biorth_error",
    "two_sided_gs",
]
