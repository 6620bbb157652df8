"""superklr: exact computations in a quantized enveloping superalgebra half
and the bigraded dg quiver Hecke algebras that categorify it."""

from .scalars import (
    BiLaurent,
    BiRational,
    LaurentPoly,
    RationalQ,
    q_binom,
    q_fact,
    q_int,
    rank_over_Qq,
)

__all__ = [
    "BiLaurent",
    "BiRational",
    "LaurentPoly",
    "RationalQ",
    "q_binom",
    "q_fact",
    "q_int",
    "rank_over_Qq",
]
