"""
Quotient onto the Steenrod algebra and its admissible basis
"""

import logging
from typing import List, Optional

from .adem_engine import AdemEngine, default_engine
from .enumeration import steenrod_words
from .errors import DomainError
from .modp_arith import PrimeLike, as_prime
from .op_terms import LinComb, OpLetter, OpWord, Side

logger = logging.getLogger(__name__)


def steenrodize(x: LinComb, engine: Optional[AdemEngine] = None) -> LinComb:
    """
    Send Q^s to Sq^-s (beta^e P^s to beta^e P^-s) and reduce to the
    admissible Steenrod basis. Q^0 / P^0 become the identity.
    """
    if x.side is not Side.B:
        raise DomainError("steenrodize takes side B combinations")
    mirrored = {
        tuple(OpLetter(e, -s) for e, s in letters): c for letters, c in x.raw_items()
    }
    return (engine or default_engine()).reduce(LinComb(x.prime, Side.A, mirrored))


def steenrod_basis(degree: int, p: PrimeLike = 2) -> List[OpWord]:
    """Admissible Steenrod words of the given cohomological degree"""
    prime = as_prime(p)
    if degree < 0:
        raise DomainError(f"degree must be nonnegative, got {degree}")
    return [OpWord(prime, Side.A, letters) for letters in steenrod_words(prime.value, degree)]


def milnor_dim(degree: int) -> int:
    """
    Number of monomials of the given degree in generators of degrees
    1, 3, 7, 15, ... (the mod 2 dual Steenrod algebra)
    """
    if degree < 0:
        raise DomainError(f"degree must be nonnegative, got {degree}")
    counts = [1] + [0] * degree
    part = 1
    while part <= degree:
        for total in range(part, degree + 1):
            counts[total] += counts[total - part]
        part = 2 * part + 1
    return counts[degree]
