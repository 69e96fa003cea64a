"""
Free allowable algebra on graded generators

Elements are F_p-combinations of monomials in basis factors Q^K e, where K is
an admissible side B word and e a generator. A word applied to a generator is
a basis factor when its excess lies strictly above |e| (or sits on |e| under
a leading Bockstein at odd p); on the boundary it is the p-th power of its
tail, below it the word acts as zero.

At odd p the algebra is graded-commutative: odd-degree factors anticommute
and square to zero. At p = 2 it is a plain polynomial algebra.
"""

import logging
import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from .adem_engine import AdemEngine
from .enumeration import admissible_words
from .errors import InputError, InvalidWindowError, ParseError, PrimeMismatchError
from .grammar import GeneratorToken, letter_from_token, parse_terms
from .modp_arith import PrimeLike, as_prime, ceil_div, sign
from .op_terms import (
    Letters,
    LinComb,
    OpLetter,
    OpWord,
    Side,
    format_letters,
    letters_degree,
    letters_excess,
)

logger = logging.getLogger(__name__)

_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


@dataclass(frozen=True, order=True)
class Generator:
    name: str
    degree: int


class GeneratorSet:
    """Named graded generators; names are unique"""

    def __init__(self, generators: Union[Mapping[str, int], Iterable[Tuple[str, int]], None] = None):
        pairs = generators.items() if isinstance(generators, Mapping) else (generators or [])
        self._by_name: Dict[str, Generator] = {}
        for name, deg in pairs:
            if not isinstance(name, str) or not _IDENTIFIER.fullmatch(name):
                raise InputError(f"generator name must be an identifier, got {name!r}")
            if name in self._by_name:
                raise InputError(f"duplicate generator name {name!r}")
            self._by_name[name] = Generator(name, int(deg))

    @classmethod
    def from_strings(cls, specs: Iterable[str]) -> "GeneratorSet":
        """Build from "NAME:DEGREE" strings"""
        pairs = []
        for spec in specs:
            name, sep, deg = spec.partition(":")
            if not sep:
                raise InputError(f"generator must be given as NAME:DEGREE, got {spec!r}")
            try:
                pairs.append((name.strip(), int(deg)))
            except ValueError:
                raise InputError(f"generator degree must be an integer, got {deg!r}") from None
        return cls(pairs)

    def __getitem__(self, name: str) -> Generator:
        try:
            return self._by_name[name]
        except KeyError:
            raise InputError(f"unknown generator {name!r}") from None

    def __contains__(self, name):
        return name in self._by_name

    def __iter__(self):
        return iter(self._by_name.values())

    def __len__(self):
        return len(self._by_name)

    def __eq__(self, other):
        return isinstance(other, GeneratorSet) and self._by_name == other._by_name

    def __repr__(self):
        return "GeneratorSet(" + ", ".join(f"{g.name}:{g.degree}" for g in self) + ")"


@dataclass(frozen=True)
class Factor:
    """A basis factor Q^K e (K admissible, possibly empty)"""

    letters: Letters
    generator: Generator
    prime: int

    def degree(self) -> int:
        return letters_degree(self.letters, self.prime, Side.B) + self.generator.degree

    def sort_key(self):
        return (len(self.letters), self.letters, self.generator.name)

    def word(self) -> OpWord:
        return OpWord(self.prime, Side.B, self.letters)

    def __str__(self):
        if not self.letters:
            return self.generator.name
        return f"{format_letters(self.letters, self.prime, Side.B)} {self.generator.name}"


@dataclass(frozen=True)
class AlgebraMonomial:
    """Product of basis factors with positive exponents, in canonical factor order"""

    factors: Tuple[Tuple[Factor, int], ...] = ()

    def degree(self) -> int:
        return sum(f.degree() * e for f, e in self.factors)

    def length(self) -> int:
        return sum(e for _, e in self.factors)

    def is_unit(self) -> bool:
        return not self.factors

    def sort_key(self):
        return (
            self.degree(),
            self.length(),
            tuple((f.sort_key(), e) for f, e in self.factors),
        )

    def __str__(self):
        if not self.factors:
            return "1"
        return " ".join(str(f) for f, e in self.factors for _ in range(e))


UNIT = AlgebraMonomial()


def _monomial(counts: Dict[Factor, int]) -> AlgebraMonomial:
    return AlgebraMonomial(
        tuple(sorted(((f, e) for f, e in counts.items() if e), key=lambda fe: fe[0].sort_key()))
    )


def _multiply_monomials(a: AlgebraMonomial, b: AlgebraMonomial, p: int):
    """(sign, product) or None when the product vanishes"""
    counts: Dict[Factor, int] = {}
    for f, e in a.factors + b.factors:
        counts[f] = counts.get(f, 0) + e
    if p == 2:
        return 1, _monomial(counts)
    odd = [f.sort_key() for f, e in a.factors + b.factors if f.degree() % 2]
    if len(set(odd)) < len(odd):
        return None
    inversions = sum(1 for i in range(len(odd)) for j in range(i + 1, len(odd)) if odd[i] > odd[j])
    return sign(inversions), _monomial(counts)


class AlgebraElement:
    """A finite F_p-combination of algebra monomials"""

    __slots__ = ("prime", "generators", "_terms")

    def __init__(self, prime: PrimeLike, generators: GeneratorSet, terms: Optional[Mapping] = None):
        self.prime = as_prime(prime)
        self.generators = generators
        p = self.prime.value
        self._terms: Dict[AlgebraMonomial, int] = {}
        for m, c in (terms or {}).items():
            value = (self._terms.get(m, 0) + int(c)) % p
            if value:
                self._terms[m] = value
            else:
                self._terms.pop(m, None)

    def raw_items(self):
        for m in sorted(self._terms, key=AlgebraMonomial.sort_key):
            yield m, self._terms[m]

    def monomials(self) -> List[AlgebraMonomial]:
        return [m for m, _ in self.raw_items()]

    def coefficient(self, m: AlgebraMonomial) -> int:
        return self._terms.get(m, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def _check(self, other):
        if self.prime != other.prime:
            raise PrimeMismatchError(f"cannot combine elements at p={self.prime} and p={other.prime}")

    def _combine(self, other, factor):
        self._check(other)
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms.get(m, 0) + factor * c
        return AlgebraElement(self.prime, self.generators, terms)

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self._combine(other, 1)

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, factor: int) -> "AlgebraElement":
        return AlgebraElement(
            self.prime, self.generators, {m: c * int(factor) for m, c in self._terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check(other)
        p = self.prime.value
        terms: Dict[AlgebraMonomial, int] = {}
        for a, x in self._terms.items():
            for b, y in other._terms.items():
                product = _multiply_monomials(a, b, p)
                if product is None:
                    continue
                s, m = product
                terms[m] = terms.get(m, 0) + s * x * y
        return AlgebraElement(self.prime, self.generators, terms)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise InputError("negative powers are not defined")
        result = AlgebraElement(self.prime, self.generators, {UNIT: 1})
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.prime == other.prime and self._terms == other._terms

    def __hash__(self):
        return hash((self.prime.value, frozenset(self._terms.items())))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.raw_items():
            if m.is_unit():
                parts.append(str(c))
            elif c == 1:
                parts.append(str(m))
            else:
                parts.append(f"{c} {m}")
        return " + ".join(parts)

    def __repr__(self):
        return f"AlgebraElement(p={self.prime}, {self})"

    def to_document(self) -> dict:
        return {
            "prime": self.prime.value,
            "terms": [
                {
                    "coefficient": c,
                    "monomial": [
                        {
                            "word": [[x.bockstein, x.index] for x in f.letters],
                            "generator": f.generator.name,
                            "exponent": e,
                        }
                        for f, e in m.factors
                    ],
                }
                for m, c in self.raw_items()
            ],
        }


class FreeAllowableAlgebra:
    """
    The free allowable algebra on a generator set, with the operation action

    Args:
        generators: GeneratorSet, mapping name -> degree, or (name, degree) pairs
        prime: Working prime
        engine: AdemEngine used to rewrite letter-on-factor compositions
    """

    def __init__(self, generators, prime: PrimeLike = 2, engine: Optional[AdemEngine] = None):
        self.generators = generators if isinstance(generators, GeneratorSet) else GeneratorSet(generators)
        self.prime = as_prime(prime)
        self.engine = engine or AdemEngine()
        self._letter_memo: Dict[Tuple[OpLetter, AlgebraMonomial], AlgebraElement] = {}
        self._value_memo: Dict[Tuple[Letters, Generator], AlgebraElement] = {}

    # -- constructors ---------------------------------------------------
    def zero(self) -> AlgebraElement:
        return AlgebraElement(self.prime, self.generators)

    def one(self) -> AlgebraElement:
        return AlgebraElement(self.prime, self.generators, {UNIT: 1})

    def element(self, terms: Mapping[AlgebraMonomial, int]) -> AlgebraElement:
        return AlgebraElement(self.prime, self.generators, terms)

    def _factor_element(self, letters: Letters, generator: Generator) -> AlgebraElement:
        f = Factor(letters, generator, self.prime.value)
        return self.element({AlgebraMonomial(((f, 1),)): 1})

    def generator(self, name: str) -> AlgebraElement:
        return self._factor_element((), self.generators[name])

    # -- basis factors --------------------------------------------------
    def is_basis_factor(self, letters: Letters, generator: Generator) -> bool:
        if not letters:
            return True
        e = letters_excess(letters, self.prime.value)
        if e > generator.degree:
            return True
        return self.prime.value != 2 and e == generator.degree and letters[0].bockstein == 1

    def _value(self, letters: Letters, generator: Generator) -> AlgebraElement:
        """Value of an admissible word on a generator"""
        key = (letters, generator)
        cached = self._value_memo.get(key)
        if cached is not None:
            return cached
        if self.is_basis_factor(letters, generator):
            value = self._factor_element(letters, generator)
        elif letters_excess(letters, self.prime.value) == generator.degree:
            value = self._value(letters[1:], generator) ** self.prime.value
        else:
            value = self.zero()
        self._value_memo[key] = value
        return value

    def value(self, word: Union[OpWord, LinComb], generator: str) -> AlgebraElement:
        """Evaluate an operation (any word or combination, side B) on a generator"""
        op = word if isinstance(word, LinComb) else LinComb.from_word(word)
        return self.apply_op(op, self.generator(generator))

    # -- the action -----------------------------------------------------
    def _apply_to_factor(self, letter: OpLetter, f: Factor) -> AlgebraElement:
        composite = LinComb(self.prime, Side.B, {(letter,) + f.letters: 1})
        result = self.zero()
        for letters, c in self.engine.reduce(composite).raw_items():
            result = result + self._value(letters, f.generator).scale(c)
        return result

    def _apply_letter(self, letter: OpLetter, m: AlgebraMonomial) -> AlgebraElement:
        key = (letter, m)
        cached = self._letter_memo.get(key)
        if cached is not None:
            return cached

        if m.is_unit():
            result = self.one() if letter == (0, 0) else self.zero()
        else:
            f, e = m.factors[0]
            rest = AlgebraMonomial(((f, e - 1),) + m.factors[1:] if e > 1 else m.factors[1:])
            if rest.is_unit():
                result = self._apply_to_factor(letter, f)
            else:
                result = self._cartan(letter, f, rest)
        self._letter_memo[key] = result
        return result

    def _cartan(self, letter: OpLetter, f: Factor, rest: AlgebraMonomial) -> AlgebraElement:
        p = self.prime.value
        eps, s = letter
        df, dr = f.degree(), rest.degree()
        single = AlgebraMonomial(((f, 1),))
        result = self.zero()
        if p == 2:
            for i in range(df, s - dr + 1):
                left = self._apply_letter(OpLetter(0, i), single)
                if left:
                    result = result + left * self._apply_letter(OpLetter(0, s - i), rest)
            return result

        for i in range(ceil_div(df, 2), s - ceil_div(dr, 2) + 1):
            j = s - i
            if not eps:
                left = self._apply_letter(OpLetter(0, i), single)
                if left:
                    result = result + left * self._apply_letter(OpLetter(0, j), rest)
                continue
            left = self._apply_letter(OpLetter(1, i), single)
            if left:
                result = result + left * self._apply_letter(OpLetter(0, j), rest)
            left = self._apply_letter(OpLetter(0, i), single)
            if left:
                term = left * self._apply_letter(OpLetter(1, j), rest)
                result = result + term.scale(sign(df))
        return result

    def apply_letter(self, letter, x: AlgebraElement) -> AlgebraElement:
        letter = OpLetter(*letter)
        result = self.zero()
        for m, c in x.raw_items():
            result = result + self._apply_letter(letter, m).scale(c)
        return result

    def apply_op(self, op: LinComb, x: AlgebraElement) -> AlgebraElement:
        """Evaluate a side B combination of words on an element"""
        if op.side is not Side.B or op.prime != self.prime or x.prime != self.prime:
            raise PrimeMismatchError(
                f"cannot apply p={op.prime}/{op.side} operations to an element at p={x.prime}"
            )
        result = self.zero()
        for letters, c in op.raw_items():
            value = x
            for letter in reversed(letters):
                value = self.apply_letter(letter, value)
                if not value:
                    break
            result = result + value.scale(c)
        return result

    # -- enumeration ----------------------------------------------------
    def basis_factors(self, low: int, high: int, length_cap: int) -> List[Factor]:
        """Basis factors with degree in [low, high] and word length <= length_cap"""
        p = self.prime.value
        factors = []
        for g in self.generators:
            for total in range(low, high + 1):
                if total == g.degree:
                    factors.append(Factor((), g, p))
                for letters in admissible_words(p, total - g.degree, g.degree, length_cap):
                    if self.is_basis_factor(letters, g):
                        factors.append(Factor(letters, g, p))
        factors.sort(key=Factor.sort_key)
        return factors

    def basis(self, degree: int, length_cap: int, product_cap: Optional[int] = None) -> List[AlgebraMonomial]:
        """
        All monomials of the given degree in basis factors with word length at
        most length_cap (and at most product_cap factors when given).

        Raises:
            InvalidWindowError: bad caps, or a generator of degree <= 0 without product_cap
        """
        if length_cap < 0:
            raise InvalidWindowError("length_cap must be nonnegative")
        if product_cap is not None and product_cap < 0:
            raise InvalidWindowError("product_cap must be nonnegative")
        p = self.prime.value
        if any(g.degree <= 0 for g in self.generators) and product_cap is None:
            raise InvalidWindowError(
                "generators of degree <= 0 give infinitely many monomials; pass product_cap"
            )

        lowest = min((min(g.degree, g.degree * p**length_cap) for g in self.generators), default=1)
        if product_cap is None:
            high, cap = degree, max(degree, 0)
        else:
            high = degree - (product_cap - 1) * min(lowest, 0) if product_cap else degree
            cap = product_cap
        factors = self.basis_factors(lowest, high, length_cap) if self.generators else []

        found: List[AlgebraMonomial] = []

        def extend(index, remaining, count, chosen):
            if remaining == 0:
                found.append(AlgebraMonomial(tuple(chosen)))
            if index == len(factors) or count == cap:
                return
            for k in range(index, len(factors)):
                f = factors[k]
                d = f.degree()
                top = cap - count
                if p != 2 and d % 2:
                    top = min(top, 1)
                for e in range(1, top + 1):
                    if lowest >= 0 and d * e > remaining:
                        break
                    extend(k + 1, remaining - d * e, count + e, chosen + [(f, e)])

        extend(0, degree, 0, [])
        found.sort(key=AlgebraMonomial.sort_key)
        logger.debug("free basis in degree %d: %d monomials", degree, len(found))
        return found

    # -- parsing --------------------------------------------------------
    def parse(self, text: str) -> AlgebraElement:
        """
        Parse an element: letters before a generator act on it, juxtaposed
        factors multiply.
        """
        p = self.prime.value
        total = self.zero()
        for term in parse_terms(text):
            value = self.one()
            pending: List[OpLetter] = []
            for token in term.factors:
                if isinstance(token, GeneratorToken):
                    if token.name not in self.generators:
                        raise ParseError(f"unknown generator {token.name!r}", text, token.position)
                    op = LinComb(self.prime, Side.B, {tuple(pending): 1})
                    value = value * self.apply_op(op, self.generator(token.name))
                    pending = []
                else:
                    pending.append(letter_from_token(token, p, Side.B, text))
            if pending:
                raise ParseError("operation letters must be followed by a generator", text, len(text))
            total = total + value.scale(term.sign * term.coefficient)
        return total


def apply_op(op: LinComb, x: AlgebraElement, algebra: Optional[FreeAllowableAlgebra] = None) -> AlgebraElement:
    algebra = algebra or FreeAllowableAlgebra(x.generators, x.prime)
    return algebra.apply_op(op, x)


def free_basis(
    V,
    degree: int,
    length_cap: int,
    prime: PrimeLike = 2,
    product_cap: Optional[int] = None,
) -> List[AlgebraMonomial]:
    return FreeAllowableAlgebra(V, prime).basis(degree, length_cap, product_cap)
