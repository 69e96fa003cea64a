"""
Symmetric-group and family arithmetic, by brute force on small Σ_n

Permutations act on {1, ..., n}; the product a * b applies b first, then a.
"""

import itertools
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from functools import reduce
from typing import FrozenSet, Iterable, List, Optional, Tuple

import pyparsing as pp

from .config import MAX_DOUBLE_COSET_PRIME, MAX_SYMMETRIC_DEGREE
from .errors import DomainError, FalsifiedHypothesisError, InputError, ParseError
from .modp_arith import PrimeLike, as_prime

logger = logging.getLogger(__name__)

_CYCLE = pp.Group(pp.Suppress("(") + pp.ZeroOrMore(pp.common.integer) + pp.Suppress(")"))
_CYCLES = pp.ZeroOrMore(_CYCLE)


class Permutation:
    """A bijection of {1..n}, stored as the tuple of images"""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise InputError(f"{images} is not a permutation of 1..{len(images)}")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def from_cycles(cls, text: str, n: int) -> "Permutation":
        """Parse cycle notation such as "(1 2)(3 4)" on {1..n}"""
        try:
            cycles = _CYCLES.parse_string(text, parse_all=True)
        except pp.ParseException as e:
            raise ParseError(f"bad cycle notation: {e.msg}", text, e.loc) from None
        images = list(range(1, n + 1))
        seen = set()
        for cycle in cycles:
            cycle = list(cycle)
            for x in cycle:
                if not 1 <= x <= n or x in seen:
                    raise InputError(f"cycle {tuple(cycle)} is not valid on 1..{n}")
                seen.add(x)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a - 1] = b
        return cls(images)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.n != self.n:
            raise InputError("permutations act on different sets")
        return Permutation(self.images[j - 1] for j in other.images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(inv)

    def conjugate(self, x: "Permutation") -> "Permutation":
        """x self x^-1"""
        return x * self * x.inverse()

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, start=1))

    def cycles(self) -> List[Tuple[int, ...]]:
        seen, result = set(), []
        for start in range(1, self.n + 1):
            if start in seen or self(start) == start:
                continue
            cycle, i = [], start
            while i not in seen:
                seen.add(i)
                cycle.append(i)
                i = self(i)
            result.append(tuple(cycle))
        return result

    def order(self) -> int:
        return reduce(math.lcm, (len(c) for c in self.cycles()), 1)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.images < other.images

    def __str__(self):
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def __repr__(self):
        return f"Permutation({self})"


def symmetric_elements(n: int) -> List[Permutation]:
    if n > MAX_SYMMETRIC_DEGREE:
        raise DomainError(f"brute force over Σ_{n} is capped at n = {MAX_SYMMETRIC_DEGREE}")
    return [Permutation(images) for images in itertools.permutations(range(1, n + 1))]


def _symmetric_generators(n: int) -> Tuple[Permutation, ...]:
    if n < 2:
        return ()
    transposition = Permutation([2, 1] + list(range(3, n + 1)))
    cycle = Permutation(list(range(2, n + 1)) + [1])
    return (transposition, cycle)


class Subgroup:
    """Subgroup of Σ_n generated by the given permutations (closed by BFS)"""

    def __init__(self, n: int, generators: Iterable[Permutation] = ()):
        if n < 1:
            raise InputError("n must be positive")
        self.n = n
        self.generators = tuple(generators)
        for g in self.generators:
            if g.n != n:
                raise InputError(f"generator {g} does not act on 1..{n}")
        self.elements: FrozenSet[Permutation] = self._closure()

    @classmethod
    def from_elements(cls, n: int, elements: Iterable[Permutation]) -> "Subgroup":
        """
        Subgroup with the given elements, which must already be closed under
        composition. Keeps a small generating set instead of every element.
        """
        elements = frozenset(elements)
        if len(elements) == math.factorial(n):
            group = cls.__new__(cls)
            group.n = n
            group.generators = _symmetric_generators(n)
            group.elements = elements
            return group

        generators: List[Permutation] = []
        closed = {Permutation.identity(n)}
        for x in sorted(elements):
            if x in closed:
                continue
            generators.append(x)
            queue = deque(closed)
            while queue:
                y = queue.popleft()
                for g in generators:
                    z = g * y
                    if z not in closed:
                        closed.add(z)
                        queue.append(z)
        group = cls.__new__(cls)
        group.n = n
        group.generators = tuple(generators)
        group.elements = frozenset(closed)
        return group

    @classmethod
    def trivial(cls, n: int) -> "Subgroup":
        return cls(n)

    @classmethod
    def cyclic(cls, n: int) -> "Subgroup":
        """⟨(1 2 ... n)⟩"""
        return cls(n, [Permutation(list(range(2, n + 1)) + [1])])

    @classmethod
    def symmetric(cls, n: int) -> "Subgroup":
        return cls(n, _symmetric_generators(n))

    def _closure(self):
        identity = Permutation.identity(self.n)
        elements = {identity}
        queue = deque([identity])
        while queue:
            x = queue.popleft()
            for g in self.generators:
                y = g * x
                if y not in elements:
                    elements.add(y)
                    queue.append(y)
        return frozenset(elements)

    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x: Permutation):
        return x in self.elements

    def __iter__(self):
        return iter(sorted(self.elements))

    def __eq__(self, other):
        return isinstance(other, Subgroup) and (self.n, self.elements) == (other.n, other.elements)

    def __hash__(self):
        return hash((self.n, self.elements))

    def orbits(self) -> List[Tuple[int, ...]]:
        """Orbit partition of {1..n}, each block sorted, blocks by smallest point"""
        remaining = set(range(1, self.n + 1))
        blocks = []
        while remaining:
            start = min(remaining)
            block, queue = {start}, deque([start])
            while queue:
                i = queue.popleft()
                for g in self.generators:
                    j = g(i)
                    if j not in block:
                        block.add(j)
                        queue.append(j)
            remaining -= block
            blocks.append(tuple(sorted(block)))
        return blocks

    def conjugate(self, x: Permutation) -> "Subgroup":
        """x H x^-1"""
        return Subgroup(self.n, [g.conjugate(x) for g in self.generators])

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup.from_elements(self.n, self.elements & other.elements)

    def normalizer(self) -> "Subgroup":
        """N_{Σ_n}(H), by testing every x in Σ_n"""
        members = [
            x for x in symmetric_elements(self.n)
            if all(g.conjugate(x) in self.elements for g in self.generators)
        ]
        return Subgroup.from_elements(self.n, members)

    def left_cosets(self, group: "Subgroup") -> List[Permutation]:
        """Representatives of group / self (smallest element of each coset)"""
        covered, representatives = set(), []
        for x in sorted(group.elements):
            if x in covered:
                continue
            representatives.append(x)
            covered.update(x * h for h in self.elements)
        return representatives

    def __str__(self):
        gens = ", ".join(str(g) for g in self.generators) or "()"
        return f"⟨{gens}⟩ ≤ Σ_{self.n}"

    def __repr__(self):
        return f"Subgroup({self})"


def orbits(H: Subgroup) -> List[Tuple[int, ...]]:
    return H.orbits()


def gamma_fixed_dim(H: Subgroup) -> int:
    """Dimension of the H-fixed part of the reduced permutation representation"""
    return len(H.orbits()) - 1


def in_family_T(H: Subgroup) -> bool:
    """True when H does not act transitively"""
    return len(H.orbits()) > 1


def gcd_binomials(n: int) -> int:
    """gcd of binom(n, k) for 0 < k < n"""
    if n < 2:
        raise DomainError(f"gcd_binomials needs n >= 2, got {n}")
    return reduce(math.gcd, (math.comb(n, k) for k in range(1, n)))


@dataclass
class WeylGroup:
    """W(H) = N(H) / H inside Σ_n"""

    n: int
    subgroup: Subgroup
    normalizer: Subgroup
    representatives: List[Permutation] = field(default_factory=list)

    @property
    def order(self) -> int:
        return len(self.representatives)

    def to_document(self) -> dict:
        return {
            "n": self.n,
            "subgroup_order": self.subgroup.order(),
            "normalizer_order": self.normalizer.order(),
            "order": self.order,
            "representatives": [str(x) for x in self.representatives],
        }


def weyl_group(n: int, H: Subgroup) -> WeylGroup:
    if n > MAX_SYMMETRIC_DEGREE:
        raise DomainError(f"Weyl groups are computed for n <= {MAX_SYMMETRIC_DEGREE}, got {n}")
    if H.n != n:
        raise InputError(f"subgroup acts on 1..{H.n}, not 1..{n}")
    N = H.normalizer()
    representatives = H.left_cosets(N)
    logger.debug("Weyl group of %s: |N| = %d, |W| = %d", H, N.order(), len(representatives))
    return WeylGroup(n, H, N, representatives)


def double_cosets(H: Subgroup, K: Optional[Subgroup] = None) -> List[FrozenSet[Permutation]]:
    """The double cosets H x K partitioning Σ_n"""
    K = K or H
    seen, result = set(), []
    for x in symmetric_elements(H.n):
        if x in seen:
            continue
        coset = frozenset(h * x * k for h in H.elements for k in K.elements)
        seen |= coset
        result.append(coset)
    return result


@dataclass
class DoubleCosetReport:
    prime: int
    checked: int
    double_cosets: int
    holds: bool = True

    def to_document(self) -> dict:
        return {
            "prime": self.prime,
            "checked": self.checked,
            "double_cosets": self.double_cosets,
            "holds": self.holds,
        }


def double_coset_check(p: PrimeLike) -> DoubleCosetReport:
    """
    For H = C_p in Σ_p, check H ∩ xHx^-1 = 1 for every x outside N(H)

    Raises:
        FalsifiedHypothesisError: some intersection is nontrivial
    """
    prime = as_prime(p).value
    if prime > MAX_DOUBLE_COSET_PRIME:
        raise DomainError(f"double coset scans are capped at p = {MAX_DOUBLE_COSET_PRIME}")
    H = Subgroup.cyclic(prime)
    N = H.normalizer()
    checked = 0
    for x in symmetric_elements(prime):
        if x in N:
            continue
        checked += 1
        if len(H.intersection(H.conjugate(x))) != 1:
            raise FalsifiedHypothesisError(f"H ∩ xHx^-1 is nontrivial for x = {x} at p = {prime}")
    count = len(double_cosets(H))
    logger.info("double coset check at p=%d: %d elements, %d double cosets", prime, checked, count)
    return DoubleCosetReport(prime, checked, count)


def op_pattern(p: PrimeLike, k: int) -> int:
    """Dimension of the weight p operations in degree k: 1 when k = 0, -1 mod 2(p-1)"""
    q = as_prime(p).value
    if q == 2:
        return 1
    period = 2 * (q - 1)
    return 1 if k % period in (0, period - 1) else 0
