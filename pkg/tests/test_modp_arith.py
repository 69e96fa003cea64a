"""Unit tests for prime-field arithmetic"""

import math

import pytest

from core.errors import DomainError, InputError
from core.modp_arith import (
    FpScalar,
    Prime,
    binom_mod_p,
    ceil_div,
    is_prime,
    lucas_check,
    prime_power_base,
    sign,
)


class TestPrime:
    """Tests for Prime validation"""

    @pytest.mark.parametrize("value", [2, 3, 5, 7, 11, 101])
    def test_accepts_primes(self, value):
        assert Prime(value).value == value

    @pytest.mark.parametrize("value", [-3, 0, 1, 4, 9, 15])
    def test_rejects_non_primes(self, value):
        with pytest.raises(InputError):
            Prime(value)

    def test_is_prime_small_range(self):
        assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]

    @pytest.mark.parametrize("n,expected", [(2, 2), (8, 2), (9, 3), (12, None), (1, None), (49, 7)])
    def test_prime_power_base(self, n, expected):
        assert prime_power_base(n) == expected


class TestFpScalar:
    """Tests for F_p arithmetic"""

    def test_residue_reduced(self):
        assert FpScalar(7, Prime(3)).residue == 1
        assert FpScalar(-1, Prime(5)).residue == 4

    def test_arithmetic(self):
        p = Prime(3)
        a = FpScalar(2, p)
        assert a + 2 == 1
        assert a * a == 1
        assert -a == 1
        assert 1 - a == 2

    def test_inverse(self):
        p = Prime(7)
        for r in range(1, 7):
            assert FpScalar(r, p) * FpScalar(r, p).inverse() == 1

    def test_zero_has_no_inverse(self):
        with pytest.raises(ZeroDivisionError):
            FpScalar(0, Prime(5)).inverse()

    def test_mixed_primes_rejected(self):
        with pytest.raises(InputError):
            FpScalar(1, Prime(2)) + FpScalar(1, Prime(3))


class TestBinomials:
    """Tests for binom_mod_p and lucas_check"""

    @pytest.mark.parametrize(
        "a,b,p,expected",
        [(4, 2, 2, 0), (-1, 3, 2, 1), (-3, 2, 3, 0), (5, 2, 3, 1), (3, -1, 5, 0), (-1, 2, 3, 1)],
    )
    def test_examples(self, a, b, p, expected):
        assert binom_mod_p(a, b, p) == expected

    def test_negative_upper_matches_power_series(self):
        # (1+t)^a (1+t)^-a = 1
        for p in (2, 3, 5):
            for a in range(1, 8):
                for n in range(1, 10):
                    total = sum(
                        int(binom_mod_p(a, k, p)) * int(binom_mod_p(-a, n - k, p)) for k in range(n + 1)
                    )
                    assert total % p == 0

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_lucas_agrees_with_binomial(self, p):
        for a in range(0, 30):
            for b in range(0, 30):
                assert lucas_check(a, b, p) == math.comb(a, b) % p
                assert lucas_check(a, b, p) == binom_mod_p(a, b, p)

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_large_arguments(self, p):
        for a in (-2000, -517, 388, 1999):
            for b in (0, 1, 250, 641, 1500):
                sign = -1 if a < 0 and b % 2 else 1
                top = a if a >= 0 else b - a - 1
                assert binom_mod_p(a, b, p) == sign * math.comb(top, b) % p

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_lucas_p_choose_one(self, p):
        assert lucas_check(p, 1, p) == 0

    def test_lucas_rejects_negative(self):
        with pytest.raises(DomainError):
            lucas_check(-1, 2, 3)


class TestHelpers:
    """Tests for sign and ceil_div"""

    def test_sign(self):
        assert [sign(n) for n in (-2, -1, 0, 1, 2)] == [1, -1, 1, -1, 1]

    @pytest.mark.parametrize("a,b,expected", [(3, 2, 2), (4, 2, 2), (-3, 2, -1), (-4, 3, -1), (0, 5, 0)])
    def test_ceil_div(self, a, b, expected):
        assert ceil_div(a, b) == expected
