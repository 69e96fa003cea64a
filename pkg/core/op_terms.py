"""
Operation letters, words and linear combinations

Words are stored as tuples of OpLetter, leftmost letter acting last. A LinComb
is kept in canonical form: coefficients reduced mod p, zeros dropped, side A
words normalized (Sq^0 = P^0 = 1, negative indices annihilate).
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Iterator, Mapping, NamedTuple, Optional, Tuple, Union

from .errors import DomainError, InputError, PrimeMismatchError
from .modp_arith import FpScalar, Prime, PrimeLike, as_prime


class Side(str, Enum):
    """B = generalized (homological) operations, A = Steenrod (cohomological)"""

    B = "B"
    A = "A"

    def __str__(self):
        return self.value


class OpLetter(NamedTuple):
    """beta^bockstein P^index (Q^index / Sq^index at p = 2)"""

    bockstein: int
    index: int


Letters = Tuple[OpLetter, ...]


def validate_letter(letter, p: int, side: Side, allow_negative_a: bool = False) -> OpLetter:
    """Coerce to OpLetter and check the prime/side invariants"""
    letter = OpLetter(*letter)
    if letter.bockstein not in (0, 1):
        raise InputError(f"bockstein exponent must be 0 or 1, got {letter.bockstein}")
    if p == 2 and letter.bockstein:
        raise InputError("there is no separate Bockstein letter at p = 2")
    if side is Side.A and letter.index < 0 and not allow_negative_a:
        raise InputError(f"Steenrod letters need a nonnegative index, got {letter.index}")
    return letter


def letter_degree(letter: OpLetter, p: int, side: Side) -> int:
    eps, s = letter
    if p == 2:
        return s
    if side is Side.B:
        return 2 * s * (p - 1) - eps
    return 2 * s * (p - 1) + eps


def letters_degree(letters: Letters, p: int, side: Side) -> int:
    return sum(letter_degree(letter, p, side) for letter in letters)


def head_threshold(letter: OpLetter, p: int) -> int:
    """Lowest degree on which the letter does not vanish (side B)"""
    eps, s = letter
    return s if p == 2 else 2 * s - eps


def letters_excess(letters: Letters, p: int) -> Union[int, float]:
    if not letters:
        return math.inf
    return head_threshold(letters[0], p) - letters_degree(letters[1:], p, Side.B)


def pair_admissible(a: OpLetter, b: OpLetter, p: int, side: Side) -> bool:
    """True when no Adem relation applies to the adjacent pair (a, b)"""
    if side is Side.B:
        return a.index <= p * b.index - b.bockstein
    return a.index >= p * b.index + b.bockstein


def letters_admissible(letters: Letters, p: int, side: Side) -> bool:
    if side is Side.A:
        for letter in letters:
            if letter.index < 1 and letter != (1, 0):
                return False
    return all(pair_admissible(a, b, p, side) for a, b in zip(letters, letters[1:]))


def normalize_letters(letters: Letters, p: int, side: Side) -> Optional[Letters]:
    """Side A normal form: drop P^0 / Sq^0, annihilate negative indices (None)"""
    if side is Side.B:
        return letters
    if any(letter.index < 0 for letter in letters):
        return None
    return tuple(letter for letter in letters if letter != (0, 0))


def format_letter(letter: OpLetter, p: int, side: Side) -> str:
    eps, s = letter
    if p == 2:
        return f"Q^{s}" if side is Side.B else f"Sq^{s}"
    return f"b P^{s}" if eps else f"P^{s}"


def format_letters(letters: Letters, p: int, side: Side) -> str:
    if not letters:
        return "1"
    return " ".join(format_letter(letter, p, side) for letter in letters)


def sort_key(letters: Letters):
    """Canonical word order: by length, then lexicographic on (bockstein, index)"""
    return (len(letters), letters)


@dataclass(frozen=True)
class OpWord:
    """A finite word of operation letters; the empty word is the identity"""

    prime: Prime
    side: Side
    letters: Letters = ()

    def __post_init__(self):
        object.__setattr__(self, "prime", as_prime(self.prime))
        object.__setattr__(self, "side", Side(self.side))
        p = self.prime.value
        object.__setattr__(
            self, "letters", tuple(validate_letter(x, p, self.side) for x in self.letters)
        )

    @classmethod
    def of(cls, prime: PrimeLike, side, *letters) -> "OpWord":
        """OpWord.of(2, "B", 5, 1) or OpWord.of(3, "B", (1, 2), (0, 1))"""
        return cls(prime, side, tuple(x if isinstance(x, tuple) else (0, x) for x in letters))

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "OpWord") -> "OpWord":
        if not isinstance(other, OpWord):
            return NotImplemented
        if (self.prime, self.side) != (other.prime, other.side):
            raise PrimeMismatchError("cannot compose words at different primes or sides")
        return OpWord(self.prime, self.side, self.letters + other.letters)

    def degree(self) -> int:
        return letters_degree(self.letters, self.prime.value, self.side)

    def weight(self) -> int:
        if self.side is not Side.B:
            raise DomainError("weight is defined for power operations (side B) only")
        return self.prime.value ** len(self.letters)

    def excess(self) -> Union[int, float]:
        if self.side is not Side.B:
            raise DomainError("excess is defined for side B words only")
        return letters_excess(self.letters, self.prime.value)

    def is_admissible(self) -> bool:
        return letters_admissible(self.letters, self.prime.value, self.side)

    def sort_key(self):
        return sort_key(self.letters)

    def __lt__(self, other: "OpWord"):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return format_letters(self.letters, self.prime.value, self.side)


def degree(w: OpWord) -> int:
    return w.degree()


def weight(w: OpWord) -> int:
    return w.weight()


def excess(w: OpWord) -> Union[int, float]:
    return w.excess()


def is_admissible(w: OpWord) -> bool:
    return w.is_admissible()


class LinComb:
    """
    A finite F_p-linear combination of operation words in canonical form.

    Multiplication of two LinCombs is composition (concatenation of words,
    extended bilinearly).
    """

    __slots__ = ("prime", "side", "_terms")

    def __init__(self, prime: PrimeLike, side, terms: Optional[Mapping] = None):
        self.prime = as_prime(prime)
        self.side = Side(side)
        p = self.prime.value
        collected: Dict[Letters, int] = {}
        for word, coefficient in (terms or {}).items():
            if isinstance(word, OpWord):
                if (word.prime, word.side) != (self.prime, self.side):
                    raise PrimeMismatchError("word does not match the combination's prime/side")
                letters = word.letters
            else:
                letters = tuple(validate_letter(x, p, self.side, allow_negative_a=True) for x in word)
            letters = normalize_letters(letters, p, self.side)
            if letters is None:
                continue
            collected[letters] = (collected.get(letters, 0) + int(coefficient)) % p
        self._terms = {k: v for k, v in collected.items() if v}

    @classmethod
    def _trusted(cls, prime: Prime, side: Side, terms: Dict[Letters, int]) -> "LinComb":
        """Wrap an already-normalized dict of nonzero residues"""
        obj = cls.__new__(cls)
        obj.prime = prime
        obj.side = side
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls, prime: PrimeLike, side) -> "LinComb":
        return cls(prime, side)

    @classmethod
    def one(cls, prime: PrimeLike, side) -> "LinComb":
        return cls(prime, side, {(): 1})

    @classmethod
    def from_word(cls, word: OpWord, coefficient: int = 1) -> "LinComb":
        return cls(word.prime, word.side, {word: coefficient})

    # -- access ---------------------------------------------------------
    def raw_items(self) -> Iterator[Tuple[Letters, int]]:
        """(letters, residue) pairs in canonical order"""
        for letters in sorted(self._terms, key=sort_key):
            yield letters, self._terms[letters]

    def items(self) -> Iterator[Tuple[OpWord, FpScalar]]:
        for letters, c in self.raw_items():
            yield OpWord(self.prime, self.side, letters), FpScalar(c, self.prime)

    def words(self):
        return [w for w, _ in self.items()]

    def coefficient(self, word: Union[OpWord, Iterable]) -> FpScalar:
        letters = word.letters if isinstance(word, OpWord) else tuple(OpLetter(*x) for x in word)
        return FpScalar(self._terms.get(letters, 0), self.prime)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self.words())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    # -- arithmetic -----------------------------------------------------
    def _check(self, other: "LinComb"):
        if (self.prime, self.side) != (other.prime, other.side):
            raise PrimeMismatchError(
                f"cannot combine p={self.prime}/{self.side} with p={other.prime}/{other.side}"
            )

    def _combine(self, other: "LinComb", factor: int) -> "LinComb":
        self._check(other)
        p = self.prime.value
        terms = dict(self._terms)
        for letters, c in other._terms.items():
            value = (terms.get(letters, 0) + factor * c) % p
            if value:
                terms[letters] = value
            else:
                terms.pop(letters, None)
        return LinComb._trusted(self.prime, self.side, terms)

    def __add__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        return self._combine(other, 1)

    def __sub__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, factor: int) -> "LinComb":
        p = self.prime.value
        factor = int(factor) % p
        if not factor:
            return LinComb.zero(self.prime, self.side)
        return LinComb._trusted(
            self.prime, self.side, {k: v * factor % p for k, v in self._terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, (int, FpScalar)):
            return self.scale(int(other))
        if not isinstance(other, LinComb):
            return NotImplemented
        self._check(other)
        p = self.prime.value
        terms: Dict[Letters, int] = {}
        for left, a in self._terms.items():
            for right, b in other._terms.items():
                letters = normalize_letters(left + right, p, self.side)
                if letters is None:
                    continue
                terms[letters] = (terms.get(letters, 0) + a * b) % p
        return LinComb._trusted(self.prime, self.side, {k: v for k, v in terms.items() if v})

    def __rmul__(self, other):
        if isinstance(other, (int, FpScalar)):
            return self.scale(int(other))
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        return (self.prime, self.side, self._terms) == (other.prime, other.side, other._terms)

    def __hash__(self):
        return hash((self.prime.value, self.side, frozenset(self._terms.items())))

    # -- statistics -----------------------------------------------------
    def weight_components(self) -> Dict[int, "LinComb"]:
        """Split a side B combination by weight p^(word length)"""
        if self.side is not Side.B:
            raise DomainError("weight is defined for power operations (side B) only")
        parts: Dict[int, Dict[Letters, int]] = {}
        for letters, c in self._terms.items():
            parts.setdefault(self.prime.value ** len(letters), {})[letters] = c
        return {
            w: LinComb._trusted(self.prime, self.side, terms) for w, terms in sorted(parts.items())
        }

    # -- printing / documents ------------------------------------------
    def __str__(self):
        if not self._terms:
            return "0"
        p = self.prime.value
        parts = []
        for letters, c in self.raw_items():
            body = format_letters(letters, p, self.side)
            if not letters:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            else:
                parts.append(f"{c} {body}")
        return " + ".join(parts)

    def __repr__(self):
        return f"LinComb(p={self.prime}, side={self.side}, {self})"

    def to_document(self) -> dict:
        """Machine-readable form with fixed field names and ordering"""
        return {
            "prime": self.prime.value,
            "side": self.side.value,
            "terms": [
                {"coefficient": c, "word": [[letter.bockstein, letter.index] for letter in letters]}
                for letters, c in self.raw_items()
            ],
        }

    @classmethod
    def from_document(cls, doc: Mapping) -> "LinComb":
        terms: Dict[Letters, int] = {}
        for term in doc["terms"]:
            letters = tuple(OpLetter(int(b), int(i)) for b, i in term["word"])
            terms[letters] = terms.get(letters, 0) + int(term["coefficient"])
        return cls(int(doc["prime"]), doc["side"], terms)
