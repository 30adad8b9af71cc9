from fractions import Fraction

import pytest

from orbita.numtheory import (
    NOT_S_INTEGER,
    S_INTEGER_NOT_UNIT,
    S_UNIT,
    ZERO,
    Factorization,
    FactorizationBudgetError,
    PlaceSet,
    factor,
    is_prime,
    s_membership,
    vp,
)


@pytest.mark.parametrize(
    "n,expected",
    [
        (0, False),
        (1, False),
        (2, True),
        (3, True),
        (4, False),
        (97, True),
        (561, False),  # Carmichael
        (2047, False),  # 23 * 89, strong pseudoprime base 2
        (1000003, True),
        (2**61 - 1, True),  # Mersenne
        (2**61 + 1, False),
        (-7, False),
    ],
)
def test_is_prime(n, expected):
    assert is_prime(n) == expected


def test_factor_small_values():
    assert factor(65536) == Factorization(1, ((2, 16),))
    assert factor(-84) == Factorization(-1, ((2, 2), (3, 1), (7, 1)))
    assert factor(1) == Factorization(1, ())
    assert factor(-1) == Factorization(-1, ())
    assert factor(9973) == Factorization(1, ((9973, 1),))


def test_factor_rejects_zero():
    with pytest.raises(ValueError):
        factor(0)


def test_factor_value_roundtrip():
    for n in (2, -2, 360, -360, 2**40 + 1, 10**12 + 39):
        f = factor(n)
        assert f.value() == n
        for p, e in f.factors:
            assert is_prime(p) and e >= 1


def test_factor_semiprime_beyond_trial_division():
    p, q = 1000003, 1000033
    f = factor(p * q)
    assert f.factors == ((p, 1), (q, 1))


def test_factor_large_prime_power():
    f = factor(1000003**3)
    assert f.factors == ((1000003, 3),)


def test_factor_bit_budget():
    with pytest.raises(FactorizationBudgetError) as info:
        factor(1 << 5000, max_bits=4096)
    assert info.value.n == 1 << 5000


def test_factorization_primes_property():
    assert factor(360).primes == (2, 3, 5)


@pytest.mark.parametrize(
    "x,p,v",
    [
        (12, 2, 2),
        (12, 3, 1),
        (7, 5, 0),
        (Fraction(5, 8), 2, -3),
        (Fraction(-5, 8), 2, -3),
        (Fraction(9, 14), 3, 2),
        (Fraction(1), 997, 0),
    ],
)
def test_vp(x, p, v):
    assert vp(x, p) == v


def test_vp_rejects_zero_and_composite_modulus():
    with pytest.raises(ValueError):
        vp(0, 2)
    with pytest.raises(ValueError):
        vp(12, 4)


class TestPlaceSet:
    def test_of_sorts_and_dedups(self):
        S = PlaceSet.of(5, 2, 2)
        assert S.finite_primes == (2, 5)
        assert S.s == 3

    def test_rejects_composites(self):
        with pytest.raises(ValueError):
            PlaceSet.of(6)

    def test_contains(self):
        S = PlaceSet.of(2, 3)
        assert 2 in S and 3 in S and 5 not in S

    def test_str(self):
        assert str(PlaceSet.of(3, 2)) == "{inf,2,3}"
        assert str(PlaceSet.of()) == "{inf}"


@pytest.mark.parametrize(
    "x,primes,expected",
    [
        (0, (2,), ZERO),
        (Fraction(1, 2), (2,), S_UNIT),
        (Fraction(-8), (2,), S_UNIT),
        (6, (2,), S_INTEGER_NOT_UNIT),
        (Fraction(3, 2), (2,), S_INTEGER_NOT_UNIT),
        (Fraction(1, 3), (2,), NOT_S_INTEGER),
        (Fraction(5, 6), (2, 3), S_INTEGER_NOT_UNIT),
        (Fraction(6, 5), (2, 3), NOT_S_INTEGER),
        (1, (), S_UNIT),
        (-1, (), S_UNIT),
        (2, (), S_INTEGER_NOT_UNIT),
    ],
)
def test_s_membership(x, primes, expected):
    assert s_membership(x, PlaceSet.of(*primes)) == expected


def test_s_membership_avoids_factoring():
    # classification must work even when the S-free part is far too big to factor
    huge = Fraction(2**60 * ((1 << 4200) + 1))
    assert s_membership(huge, PlaceSet.of(2)) == S_INTEGER_NOT_UNIT
