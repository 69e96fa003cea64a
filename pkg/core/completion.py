"""
Excess-filtration stages of the completed operation algebra

A stage is the span of admissible side B words with excess at least a floor.
Raising the floor projects one stage onto the next; the projections are
surjective, and suspension kills products while keeping single operations.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Union

from .adem_engine import AdemEngine, default_engine
from .enumeration import admissible_words
from .errors import DomainError, InputError, InvalidWindowError, PrimeMismatchError
from .free_allowable import AlgebraElement, AlgebraMonomial, Factor, GeneratorSet
from .modp_arith import PrimeLike, as_prime
from .op_terms import Letters, LinComb, OpWord, Side, letters_excess

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WindowSpec:
    """
    Finite enumeration window for a completion stage

    Args:
        degree: Degree of the operations
        excess_floor: Lowest excess kept
        length_cap: Longest word kept (>= 1)
        weight: Keep only words of this weight (optional)
    """

    degree: int
    excess_floor: int
    length_cap: int
    weight: Optional[int] = None

    def __post_init__(self):
        if self.length_cap < 1:
            raise InvalidWindowError(f"length_cap must be at least 1, got {self.length_cap}")
        if self.weight is not None and self.weight < 1:
            raise InvalidWindowError(f"weight must be positive, got {self.weight}")

    def raised(self, steps: int = 1) -> "WindowSpec":
        return WindowSpec(self.degree, self.excess_floor + steps, self.length_cap, self.weight)


def _weight_length(weight, p, cap):
    """Word length carrying the given weight, None if no word of length <= cap has it"""
    length, value = 0, 1
    while value < weight:
        value *= p
        length += 1
    if value != weight:
        raise InvalidWindowError(f"weight {weight} is not a power of {p}")
    return length if 1 <= length <= cap else None


def completion_basis(w: WindowSpec, p: PrimeLike = 2) -> List[OpWord]:
    """Admissible side B words of the window, in canonical order"""
    prime = as_prime(p)
    if w.weight is None:
        words = admissible_words(prime.value, w.degree, w.excess_floor, w.length_cap)
    else:
        length = _weight_length(w.weight, prime.value, w.length_cap)
        if length is None:
            return []
        words = admissible_words(prime.value, w.degree, w.excess_floor, length, min_length=length)
    return [OpWord(prime, Side.B, letters) for letters in words]


@dataclass
class StructureMap:
    """Projection between two stages, with its surjectivity certificate"""

    prime: int
    source: WindowSpec
    target: WindowSpec
    images: Dict[OpWord, Optional[OpWord]] = field(default_factory=dict)
    unmatched: List[OpWord] = field(default_factory=list)

    @property
    def surjective(self) -> bool:
        return not self.unmatched

    def is_identity(self) -> bool:
        return all(image == word for word, image in self.images.items())

    def __call__(self, x: LinComb) -> LinComb:
        """Project a combination of source basis words"""
        if x.side is not Side.B or x.prime.value != self.prime:
            raise PrimeMismatchError("structure maps act on side B combinations at their prime")
        terms = {}
        for word, c in x.items():
            if word not in self.images:
                raise InputError(f"{word} is not a basis word of the source stage")
            image = self.images[word]
            if image is not None:
                terms[image] = int(c)
        return LinComb(self.prime, Side.B, terms)

    def to_document(self) -> dict:
        return {
            "source": _window_document(self.source),
            "target": _window_document(self.target),
            "images": [
                {"word": str(word), "image": None if image is None else str(image)}
                for word, image in sorted(self.images.items())
            ],
            "surjective": self.surjective,
        }


def _window_document(w: WindowSpec) -> dict:
    return {
        "degree": w.degree,
        "excess_floor": w.excess_floor,
        "length_cap": w.length_cap,
        "weight": w.weight,
    }


def structure_map(source: WindowSpec, target: Optional[WindowSpec] = None, p: PrimeLike = 2) -> StructureMap:
    """
    The projection from the source stage onto a shallower target stage
    (default: floor raised by one).

    Raises:
        InvalidWindowError: windows differ in degree, cap or weight, or the
            target floor lies below the source floor
    """
    prime = as_prime(p)
    target = target or source.raised()
    if (source.degree, source.length_cap, source.weight) != (target.degree, target.length_cap, target.weight):
        raise InvalidWindowError("structure maps need equal degree, length cap and weight")
    if target.excess_floor < source.excess_floor:
        raise InvalidWindowError(
            f"target floor {target.excess_floor} lies below source floor {source.excess_floor}"
        )

    source_basis = completion_basis(source, prime)
    target_basis = completion_basis(target, prime)
    images = {word: (word if word.excess() >= target.excess_floor else None) for word in source_basis}
    hit = {image for image in images.values() if image is not None}
    unmatched = [word for word in target_basis if word not in hit]
    if unmatched:
        logger.warning("structure map misses %d target words", len(unmatched))
    return StructureMap(prime.value, source, target, images, unmatched)


def excess_filtration(x: LinComb, engine: Optional[AdemEngine] = None) -> Union[int, float]:
    """Lowest excess among the words of reduce(x); infinite for 0 and the identity"""
    if x.side is not Side.B:
        raise DomainError("the excess filtration lives on side B")
    reduced = (engine or default_engine()).reduce(x)
    return min((letters_excess(letters, x.prime.value) for letters, _ in reduced.raw_items()), default=math.inf)


def truncate(x: LinComb, floor: int, engine: Optional[AdemEngine] = None) -> LinComb:
    """Image of reduce(x) in the stage of excess >= floor"""
    if x.side is not Side.B:
        raise DomainError("the excess filtration lives on side B")
    reduced = (engine or default_engine()).reduce(x)
    p = x.prime.value
    kept = {letters: c for letters, c in reduced.raw_items() if letters_excess(letters, p) >= floor}
    return LinComb(x.prime, Side.B, kept)


def suspension_image(x: AlgebraElement) -> AlgebraElement:
    """
    Map an element over one generator e of degree -n to the next stage,
    over e' of degree -(n-1): products die, a single factor Q^I e becomes
    Q^I e' when e(I) >= -(n-1) and dies otherwise.
    """
    generators = list(x.generators)
    used = {f.generator for m in x.monomials() for f, _ in m.factors}
    if len(generators) != 1 or len(used) > 1:
        raise InputError("suspension_image needs an element over a single generator")
    (e,) = generators
    shifted = GeneratorSet({e.name: e.degree + 1})
    e_next = shifted[e.name]
    p = x.prime.value

    terms: Dict[AlgebraMonomial, int] = {}
    for m, c in x.raw_items():
        if m.length() != 1:
            continue
        ((f, _),) = m.factors
        letters: Letters = f.letters
        if letters_excess(letters, p) < e_next.degree:
            continue
        terms[AlgebraMonomial(((Factor(letters, e_next, p), 1),))] = c
    return AlgebraElement(x.prime, shifted, terms)
