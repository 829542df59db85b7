"""Real-rootedness of a five-term polynomial recurrence via banded Toeplitz
symbols, discriminants and the net of the symbol."""

from .polycore import (
    ComplexPoly,
    NoConvergence,
    RealPoly,
    RootPattern,
    RootSet,
    ZeroPolynomial,
    discriminant,
    find_roots,
    is_real_rooted,
    quartic_character,
    resultant,
)
from .recurrence import GammaZero, SymbolParams, generate_pn, generate_sequence

__version__ = "1.0.0"

__all__ = [
    "ComplexPoly",
    "GammaZero",
    "NoConvergence",
    "RealPoly",
    "RootPattern",
    "RootSet",
    "SymbolParams",
    "ZeroPolynomial",
    "discriminant",
    "find_roots",
    "generate_pn",
    "generate_sequence",
    "is_real_rooted",
    "quartic_character",
    "resultant",
]
