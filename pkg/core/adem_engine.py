"""
Adem rewriting - reduces linear combinations of operation words to the
admissible basis
"""

import heapq
import logging
from typing import Callable, Dict, Optional, Tuple

from .config import DEFAULT_STEP_BUDGET, STRATEGIES
from .errors import DomainError, InputError, StepBudgetExceeded
from .modp_arith import PrimeLike, as_prime, binom_residue, ceil_div, sign
from .op_terms import (
    Letters,
    LinComb,
    OpLetter,
    Side,
    letter_degree,
    normalize_letters,
    pair_admissible,
    validate_letter,
)

logger = logging.getLogger(__name__)

Expansion = Tuple[Tuple[Letters, int], ...]
StepCallback = Callable[[Letters, Letters], None]


def _power_pair(r, s):
    """Q^r Q^s with r > 2s (side B, p = 2)"""
    terms = []
    # r > 2s puts every i >= ceil(r/2) above s, so the top i-s-1 is
    # nonnegative and binom(i-s-1, 2i-r) vanishes once 2i-r > i-s-1, i.e. past
    # i = r-s-1; below ceil(r/2) the bottom is negative
    for i in range(ceil_div(r, 2), r - s):
        c = binom_residue(i - s - 1, 2 * i - r, 2)
        if c:
            terms.append(((OpLetter(0, r + s - i), OpLetter(0, i)), c))
    return terms


def _odd_pair(left, right, p):
    """
    beta^e1 P^r beta^e2 P^s on side B, inadmissible (r > p s - e2)

    A Bockstein on the left letter is applied formally to every term of the
    right-hand side; terms that would pick up a double Bockstein are dropped.
    """
    e1, r = left
    e2, s = right
    terms = []
    # Every sum starts where its bottom argument turns nonnegative. There i > s
    # (i >= s for the middle sum), so the top argument is nonnegative and the
    # binomial vanishes once the bottom exceeds the top: past
    # r-(p-1)s-1 when e2 = 0, past r-(p-1)s when e2 = 1.
    if e2 == 0:
        for i in range(ceil_div(r, p), r - (p - 1) * s):
            c = sign(r + i) * binom_residue((p - 1) * (i - s) - 1, p * i - r, p) % p
            if c:
                terms.append(((OpLetter(e1, r + s - i), OpLetter(0, i)), c))
        return terms

    top = r - (p - 1) * s
    if not e1:
        for i in range(ceil_div(r, p), top + 1):
            c = sign(r + i) * binom_residue((p - 1) * (i - s), p * i - r, p) % p
            if c:
                terms.append(((OpLetter(1, r + s - i), OpLetter(0, i)), c))
    for i in range(ceil_div(r + 1, p), top + 1):
        c = -sign(r + i) * binom_residue((p - 1) * (i - s) - 1, p * i - r - 1, p) % p
        if c:
            terms.append(((OpLetter(e1, r + s - i), OpLetter(1, i)), c))
    return terms


def _mirror(letters):
    return tuple(OpLetter(e, -s) for e, s in letters)


def expand_pair(left: OpLetter, right: OpLetter, p: int, side: Side) -> Expansion:
    """
    Raw Adem expansion of an inadmissible pair as (letters, residue) pairs.

    Side A relations are the side B relations read through s -> -s; the
    resulting words are not yet side A normalized.
    """
    if side is Side.A:
        left, right = OpLetter(left.bockstein, -left.index), OpLetter(right.bockstein, -right.index)
    terms = _power_pair(left.index, right.index) if p == 2 else _odd_pair(left, right, p)
    if side is Side.A:
        terms = [(_mirror(letters), c) for letters, c in terms]
    collected: Dict[Letters, int] = {}
    for letters, c in terms:
        collected[letters] = (collected.get(letters, 0) + c) % p
    return tuple((letters, c) for letters, c in collected.items() if c)


def moment(letters: Letters, p: int, side: Side) -> int:
    """
    Termination measure: sum of position times letter degree.

    Positions count from the innermost letter on side B and from the
    outermost letter on side A; every Adem step lowers the measure.
    """
    return _moment(tuple(OpLetter(*x) for x in letters), p, Side(side))


def _moment(letters: Letters, p: int, side: Side) -> int:
    degrees = [letter_degree(x, p, side) for x in letters]
    if side is Side.B:
        degrees.reverse()
    return sum(j * d for j, d in enumerate(degrees, start=1))


class _StepCounter:
    def __init__(self, budget):
        self.budget = budget
        self.steps = 0

    def tick(self):
        self.steps += 1
        if self.steps > self.budget:
            raise StepBudgetExceeded(self.budget, self.steps)


def _accumulate(terms: Dict[Letters, int], letters: Letters, c: int, p: int):
    value = (terms.get(letters, 0) + c) % p
    if value:
        terms[letters] = value
    else:
        terms.pop(letters, None)


class AdemEngine:
    """
    Memoized Adem rewriting with a per-term step budget.

    A word is reduced by growing an admissible word one letter at a time:
    "leftmost" appends letters on the right, "rightmost" prepends them on the
    left, and each enlarged word is settled by rewriting its inadmissible
    pairs (leftmost or rightmost pair first). Settling processes words in
    decreasing moment order, so every intermediate word is rewritten once
    with its coefficients already collected. Normal forms of whole words are
    kept in the rewrite cache.
    """

    def __init__(self, shared_cache=None, step_budget=DEFAULT_STEP_BUDGET, strategy="leftmost"):
        """
        Initialize the engine

        Args:
            shared_cache: RewriteCache instance (optional, defaults to the shared one)
            step_budget: Rewrite steps allowed per input term
            strategy: "leftmost" or "rightmost" inadmissible pair first
        """
        if shared_cache is not None:
            self.cache = shared_cache
        else:
            from .caching import SharedRewriteCache

            self.cache = SharedRewriteCache.get_cache()
        if strategy not in STRATEGIES:
            raise InputError(f"strategy must be one of {STRATEGIES}, got {strategy!r}")
        if step_budget < 1:
            raise InputError("step budget must be positive")
        self.step_budget = step_budget
        self.strategy = strategy

    @classmethod
    def from_config(cls, config, shared_cache=None):
        if shared_cache is None and config.cache_dir is not None:
            from .caching import RewriteCache

            shared_cache = RewriteCache(cache_dir=config.cache_dir)
        return cls(shared_cache, step_budget=config.step_budget, strategy=config.strategy)

    def _expansion(self, left, right, p, side):
        cached = self.cache.get(p, side.value, left, right)
        if cached is not None:
            return cached
        return self.cache.put(p, side.value, left, right, expand_pair(left, right, p, side))

    def adem_step(self, a, b, prime: PrimeLike, side) -> LinComb:
        """Expansion of the inadmissible adjacent pair (a, b) as a LinComb"""
        prime = as_prime(prime)
        side = Side(side)
        p = prime.value
        a = validate_letter(a, p, side, allow_negative_a=True)
        b = validate_letter(b, p, side, allow_negative_a=True)
        if pair_admissible(a, b, p, side):
            raise DomainError(f"no Adem relation applies to the admissible pair {tuple(a)}, {tuple(b)}")
        return LinComb(prime, side, dict(self._expansion(a, b, p, side)))

    @staticmethod
    def _find_pair(letters, p, side, strategy):
        positions = range(len(letters) - 1)
        if strategy == "rightmost":
            positions = reversed(positions)
        for k in positions:
            if not pair_admissible(letters[k], letters[k + 1], p, side):
                return k
        return None

    def _settle(self, letters, p, side, strategy, counter, on_step) -> Expansion:
        """Normal form of one word, rewriting in decreasing moment order"""
        if self._find_pair(letters, p, side, strategy) is None:
            return ((letters, 1),)
        cached = self.cache.get_normal_form(p, side.value, strategy, letters)
        if cached is not None:
            return cached

        result: Dict[Letters, int] = {}
        pending: Dict[Letters, int] = {letters: 1}
        heap = [(-_moment(letters, p, side), letters)]
        while heap:
            _, word = heapq.heappop(heap)
            c = pending.pop(word, 0)
            if not c:
                continue
            k = self._find_pair(word, p, side, strategy)
            if k is None:
                _accumulate(result, word, c, p)
                continue
            known = self.cache.get_normal_form(p, side.value, strategy, word)
            if known is not None:
                for w, d in known:
                    _accumulate(result, w, c * d, p)
                continue

            counter.tick()
            for pair, coefficient in self._expansion(word[k], word[k + 1], p, side):
                new = normalize_letters(word[:k] + pair + word[k + 2 :], p, side)
                if new is None:
                    continue
                if on_step is not None:
                    on_step(word, new)
                if new not in pending:
                    heapq.heappush(heap, (-_moment(new, p, side), new))
                pending[new] = (pending.get(new, 0) + c * coefficient) % p

        return self.cache.put_normal_form(p, side.value, strategy, letters, tuple(result.items()))

    def _normal_form(self, letters, p, side, strategy, counter, on_step) -> Expansion:
        if len(letters) <= 2:
            return self._settle(letters, p, side, strategy, counter, on_step)
        cached = self.cache.get_normal_form(p, side.value, strategy, letters)
        if cached is not None:
            return cached

        if strategy == "rightmost":
            current: Dict[Letters, int] = {letters[-1:]: 1}
            for letter in reversed(letters[:-1]):
                grown: Dict[Letters, int] = {}
                for tail, c in current.items():
                    for w, d in self._settle((letter,) + tail, p, side, strategy, counter, on_step):
                        _accumulate(grown, w, c * d, p)
                current = grown
        else:
            current = {letters[:1]: 1}
            for letter in letters[1:]:
                grown = {}
                for head, c in current.items():
                    for w, d in self._settle(head + (letter,), p, side, strategy, counter, on_step):
                        _accumulate(grown, w, c * d, p)
                current = grown

        return self.cache.put_normal_form(p, side.value, strategy, letters, tuple(current.items()))

    def reduce(
        self,
        x: LinComb,
        strategy: Optional[str] = None,
        on_step: Optional[StepCallback] = None,
    ) -> LinComb:
        """
        Rewrite x to the admissible basis

        Args:
            x: Combination to reduce
            strategy: Override the engine's pair selection
            on_step: Called with (old letters, new letters) for every produced term

        Raises:
            StepBudgetExceeded: More than step_budget * len(x) rewrite steps
        """
        strategy = strategy or self.strategy
        if strategy not in STRATEGIES:
            raise InputError(f"strategy must be one of {STRATEGIES}, got {strategy!r}")
        p = x.prime.value
        side = x.side
        counter = _StepCounter(self.step_budget * max(len(x), 1))

        result: Dict[Letters, int] = {}
        for letters, c in x.raw_items():
            for w, d in self._normal_form(letters, p, side, strategy, counter, on_step):
                _accumulate(result, w, c * d, p)

        if counter.steps > counter.budget // 2:
            logger.warning("reduction used %d of %d rewrite steps", counter.steps, counter.budget)
        logger.debug("reduced %d terms to %d in %d steps", len(x), len(result), counter.steps)
        return LinComb._trusted(x.prime, side, result)


_default_engine = None


def default_engine() -> AdemEngine:
    global _default_engine
    if _default_engine is None:
        _default_engine = AdemEngine()
    return _default_engine


def adem_step(a, b, prime: PrimeLike, side) -> LinComb:
    return default_engine().adem_step(a, b, prime, side)


def reduce(x: LinComb, strategy: Optional[str] = None, on_step: Optional[StepCallback] = None) -> LinComb:
    return default_engine().reduce(x, strategy=strategy, on_step=on_step)
