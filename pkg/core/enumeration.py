"""
Exhaustive enumeration of admissible words

Side B words are built from the innermost letter outwards. Two facts keep the
search finite:

* for an admissible word of excess >= e, every letter k satisfies
  head(k) >= e + |tail(k)|, hence letter degree >= (p-1)(e + |tail|);
  the smallest total degree reachable from a tail of degree T after m more
  letters is f^m(T) with f(T) = pT + (p-1)e (increasing in T);
* admissibility bounds s_j <= p^(k-j) s_k, so the largest total degree
  reachable from letter k is bounded by its index.
"""

import logging
from typing import List

from .modp_arith import ceil_div
from .op_terms import Letters, OpLetter, Side, head_threshold, letter_degree, sort_key

logger = logging.getLogger(__name__)


def _letter_options(p):
    return (0,) if p == 2 else (0, 1)


def _min_total(tail_degree, remaining, p, floor):
    """Smallest total degree reachable after `remaining` more letters"""
    total = tail_degree
    for _ in range(remaining):
        total = p * total + (p - 1) * floor
    return total


def _max_added(index, remaining, p):
    """Upper bound for the degree the `remaining` outer letters can add"""
    unit = 1 if p == 2 else 2 * (p - 1)
    return sum(unit * index * p**t for t in range(1, remaining + 1))


def admissible_words(p: int, degree: int, excess_floor: int, max_length: int, min_length: int = 1) -> List[Letters]:
    """
    All admissible side B words with the given degree, excess >= excess_floor
    and min_length <= length <= max_length, in canonical order.
    """
    found: List[Letters] = []
    for length in range(max(min_length, 1), max_length + 1):
        found.extend(_words_of_length(p, degree, excess_floor, length))
    if min_length <= 0 and degree == 0:
        found.append(())
    found.sort(key=sort_key)
    logger.debug(
        "enumerated %d admissible words (p=%d, degree=%d, floor=%d, cap=%d)",
        len(found), p, degree, excess_floor, max_length,
    )
    return found


def _words_of_length(p, degree, floor, length):
    results = []

    def place(position, inner, tail_degree, letters):
        # position counts from the left (1 = outermost), letters holds positions > position
        remaining = position - 1
        lowest_index = ceil_div(floor + tail_degree, 1 if p == 2 else 2)
        for eps in _letter_options(p):
            s = lowest_index
            while True:
                letter = OpLetter(eps, s)
                if inner is not None and not s <= p * inner.index - inner.bockstein:
                    break
                if head_threshold(letter, p) < floor + tail_degree:
                    s += 1
                    continue
                total = tail_degree + letter_degree(letter, p, Side.B)
                if _min_total(total, remaining, p, floor) > degree:
                    break
                if remaining == 0:
                    if total == degree:
                        results.append((letter,) + letters)
                elif total + _max_added(s, remaining, p) >= degree:
                    place(position - 1, letter, total, (letter,) + letters)
                s += 1

    place(length, None, 0, ())
    return results


def steenrod_words(p: int, degree: int) -> List[Letters]:
    """All admissible side A words of the given cohomological degree"""
    if degree < 0:
        return []
    results: List[Letters] = []

    def extend(remaining, bound, letters):
        # bound: largest index allowed for the next (inner) letter, None = unbounded
        if remaining == 0:
            results.append(letters)
            return
        for eps in _letter_options(p):
            top = remaining if bound is None else bound(eps)
            for s in range(top, -1, -1):
                letter = OpLetter(eps, s)
                if s == 0 and letter != (1, 0):
                    continue
                d = letter_degree(letter, p, Side.A)
                if d > remaining:
                    continue
                extend(remaining - d, lambda e, s=s: (s - e) // p, letters + (letter,))

    extend(degree, None, ())
    results.sort(key=sort_key)
    return results
