"""
Prime-field scalars and binomial coefficients modulo p
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .errors import DomainError, InputError


def is_prime(n):
    """Trial-division primality test (the primes used here are small)"""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def prime_power_base(n):
    """Return p if n = p^m with m >= 1, otherwise None"""
    if n < 2:
        return None
    p = next(k for k in range(2, n + 1) if n % k == 0)
    while n % p == 0:
        n //= p
    return p if n == 1 else None


@dataclass(frozen=True)
class Prime:
    """A prime number, validated at construction"""

    value: int

    def __post_init__(self):
        if not isinstance(self.value, int) or not is_prime(self.value):
            raise InputError(f"{self.value!r} is not a prime")

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __str__(self):
        return str(self.value)


PrimeLike = Union[Prime, int]


def as_prime(p: PrimeLike) -> Prime:
    return p if isinstance(p, Prime) else Prime(int(p))


@dataclass(frozen=True)
class FpScalar:
    """An element of the field with p elements; the residue is always reduced"""

    residue: int
    prime: Prime

    def __post_init__(self):
        object.__setattr__(self, "residue", self.residue % self.prime.value)

    def _coerce(self, other):
        if isinstance(other, FpScalar):
            if other.prime != self.prime:
                raise InputError(f"cannot combine F_{self.prime} and F_{other.prime} scalars")
            return other.residue
        if isinstance(other, int):
            return other
        return None

    def __add__(self, other):
        r = self._coerce(other)
        return NotImplemented if r is None else FpScalar(self.residue + r, self.prime)

    __radd__ = __add__

    def __sub__(self, other):
        r = self._coerce(other)
        return NotImplemented if r is None else FpScalar(self.residue - r, self.prime)

    def __rsub__(self, other):
        r = self._coerce(other)
        return NotImplemented if r is None else FpScalar(r - self.residue, self.prime)

    def __mul__(self, other):
        r = self._coerce(other)
        return NotImplemented if r is None else FpScalar(self.residue * r, self.prime)

    __rmul__ = __mul__

    def __neg__(self):
        return FpScalar(-self.residue, self.prime)

    def inverse(self):
        if self.residue == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return FpScalar(pow(self.residue, -1, self.prime.value), self.prime)

    def __eq__(self, other):
        if isinstance(other, FpScalar):
            return self.prime == other.prime and self.residue == other.residue
        if isinstance(other, int):
            return self.residue == other % self.prime.value
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.prime.value))

    def __bool__(self):
        return self.residue != 0

    def __int__(self):
        return self.residue

    def __str__(self):
        return str(self.residue)


@lru_cache(maxsize=65536)
def _binom_residue(a, b, p):
    if b < 0:
        return 0
    if a >= 0:
        return _lucas(a, b, p)
    # coefficient of t^b in (1+t)^a for a < 0
    sign = -1 if b % 2 else 1
    return (sign * _lucas(b - a - 1, b, p)) % p


def _lucas(a, b, p):
    result = 1
    while b:
        a, a_digit = divmod(a, p)
        b, b_digit = divmod(b, p)
        if b_digit > a_digit:
            return 0
        result = result * math.comb(a_digit, b_digit) % p
    return result


def binom_residue(a: int, b: int, p: int) -> int:
    """Integer residue of binom_mod_p, for the hot paths of the rewrite engine"""
    return _binom_residue(a, b, p)


def binom_mod_p(a: int, b: int, p: PrimeLike) -> FpScalar:
    """
    Coefficient of t^b in the power series (1+t)^a, reduced mod p.

    Zero for b < 0; the ordinary binomial for a >= 0; (-1)^b binom(b-a-1, b)
    for a < 0.
    """
    prime = as_prime(p)
    return FpScalar(_binom_residue(a, b, prime.value), prime)


def lucas_check(a: int, b: int, p: PrimeLike) -> FpScalar:
    """Product over base-p digits of binom(a_i, b_i), reduced mod p"""
    prime = as_prime(p)
    if a < 0 or b < 0:
        raise DomainError("lucas_check needs nonnegative arguments")
    return FpScalar(_lucas(a, b, prime.value), prime)


def sign(n: int) -> int:
    """(-1)^n for any integer n"""
    return -1 if n % 2 else 1


def ceil_div(a: int, b: int) -> int:
    """Ceiling of a / b for b > 0, correct for negative a"""
    return -((-a) // b)


