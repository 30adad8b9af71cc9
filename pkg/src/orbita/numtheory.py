"""Exact integer/rational arithmetic: valuations, factoring, place sets, membership.

Every operation here is pure and exact. Factorization is deterministic
(fixed trial-division table, fixed-parameter Brent rho) and refuses loudly
when its budget runs out instead of returning a partial answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

Rational = Fraction

__all__ = [
    "Rational",
    "Factorization",
    "FactorizationBudgetError",
    "PlaceSet",
    "is_prime",
    "factor",
    "vp",
    "s_membership",
    "ZERO",
    "S_UNIT",
    "S_INTEGER_NOT_UNIT",
    "NOT_S_INTEGER",
]

DEFAULT_FACTOR_BITS = 4096

# s_membership classification labels
ZERO = "zero"
S_UNIT = "S-unit"
S_INTEGER_NOT_UNIT = "S-integer-not-unit"
NOT_S_INTEGER = "not-S-integer"


def _sieve(limit: int) -> tuple[int, ...]:
    flags = bytearray([1]) * limit
    flags[0:2] = b"\x00\x00"
    for i in range(2, int(limit**0.5) + 1):
        if flags[i]:
            flags[i * i :: i] = b"\x00" * len(flags[i * i :: i])
    return tuple(i for i in range(limit) if flags[i])


# read-only prime table shared by all callers (the only module-level state)
_SMALL_PRIMES = _sieve(3000)

# Miller-Rabin with these bases is a proof for n < 3.317e24; beyond that the
# same test is a strong-probable-prime check (fine for our input sizes).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FactorizationBudgetError(Exception):
    """Complete factorization could not be certified within the budget.

    Carries the unfactored cofactor and whatever factors were already
    certified, so callers can report precisely what is known.
    """

    def __init__(self, n: int, cofactor: int, partial: tuple[tuple[int, int], ...]):
        self.n = n
        self.cofactor = cofactor
        self.partial = partial
        super().__init__(
            f"factorization incomplete for {n}: unfactored cofactor {cofactor}"
        )


@dataclass(frozen=True)
class Factorization:
    """Signed prime factorization with strictly increasing primes."""

    sign: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            raise ValueError("primes must be strictly increasing")
        if any(e <= 0 for _, e in self.factors):
            raise ValueError("exponents must be positive")

    def value(self) -> int:
        v = self.sign
        for p, e in self.factors:
            v *= p**e
        return v

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


def _brent_rho(n: int, c: int, max_iter: int) -> int | None:
    """One Brent-cycle rho run with increment c; returns a proper factor or None."""
    if n % 2 == 0:
        return 2
    y, m = 2, 128
    g = r = q = 1
    x = ys = y
    spent = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        spent += r
        k = 0
        while k < r and g == 1:
            ys = y
            step = min(m, r - k)
            for _ in range(step):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            spent += step
            g = gcd(q, n)
            k += m
        if g == 1 and spent > max_iter:
            return None
        r *= 2
    if g == n:
        # gcd batching overshot; replay the last window one step at a time
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
    return g if g != n else None


# per-composite rho iteration allowance; generous for factors up to ~2^40
_RHO_ITER = 1 << 21
_RHO_INCREMENTS = (1, 3, 5, 7, 11, 2, 4, 6)


def factor(n: int, max_bits: int = DEFAULT_FACTOR_BITS) -> Factorization:
    """Complete deterministic factorization of a nonzero integer.

    Raises FactorizationBudgetError (never returns a partial answer) when
    |n| exceeds max_bits or the rho stage exhausts its iteration budget.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    sign = 1 if n > 0 else -1
    m = abs(n)
    if m.bit_length() > max_bits:
        raise FactorizationBudgetError(n, m, ())
    found: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        if p * p > m:
            break
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
    # m is now 1, prime, or has no prime factor below the table limit
    stack = [m] if m > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        g = None
        for c in _RHO_INCREMENTS:
            g = _brent_rho(m, c, _RHO_ITER)
            if g is not None and 1 < g < m:
                break
            g = None
        if g is None:
            partial = tuple(sorted(found.items()))
            raise FactorizationBudgetError(n, m, partial)
        stack.append(g)
        stack.append(m // g)
    return Factorization(sign, tuple(sorted(found.items())))


def vp(x: Rational | int, p: int) -> int:
    """p-adic valuation of a nonzero rational, normalized so vp(p) = 1."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of 0 is undefined at this layer")

    def _ival(n: int) -> int:
        v = 0
        while n % p == 0:
            n //= p
            v += 1
        return v

    return _ival(x.numerator) - _ival(x.denominator)


@dataclass(frozen=True)
class PlaceSet:
    """Finite set of places of Q: the archimedean place plus listed primes."""

    finite_primes: tuple[int, ...]
    includes_archimedean: bool = True

    def __post_init__(self):
        if not self.includes_archimedean:
            raise ValueError("the archimedean place is always included")
        ps = self.finite_primes
        if list(ps) != sorted(set(ps)):
            raise ValueError("finite primes must be sorted and duplicate-free")
        for p in ps:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")

    @classmethod
    def of(cls, *primes: int) -> "PlaceSet":
        return cls(tuple(sorted(set(primes))))

    @property
    def s(self) -> int:
        """Cardinality of the place set (archimedean place counts)."""
        return 1 + len(self.finite_primes)

    def __contains__(self, p: int) -> bool:
        return p in self.finite_primes

    def __str__(self) -> str:
        inner = ",".join(["inf"] + [str(p) for p in self.finite_primes])
        return "{" + inner + "}"


def _strip_primes(n: int, primes: tuple[int, ...]) -> int:
    n = abs(n)
    for p in primes:
        while n % p == 0:
            n //= p
    return n


def s_membership(x: Rational | int, S: PlaceSet) -> str:
    """Classify x as zero, S-unit, S-integer-not-unit, or not-S-integer.

    Needs no factorization: divide the S-primes out of numerator and
    denominator and look at what is left.
    """
    x = Fraction(x)
    if x == 0:
        return ZERO
    if _strip_primes(x.denominator, S.finite_primes) != 1:
        return NOT_S_INTEGER
    if _strip_primes(x.numerator, S.finite_primes) != 1:
        return S_INTEGER_NOT_UNIT
    return S_UNIT
