"""Brute-force S-unit equation enumeration inside exponent boxes.

Everything here is certified only within the declared box |a_i| <= B of
exponent vectors (signs enumerated separately): reports say "within box",
never "all solutions". Counts are compared in log-space against the
corresponding subgroup-rank bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import bounds as _bounds
from .numtheory import PlaceSet, Rational

__all__ = [
    "EnumerationCapError",
    "UnitEquationProblem",
    "UnitEquationReport",
    "TwoWaysReport",
    "ThreeTermReport",
    "DEFAULT_CAP",
    "box_units",
    "is_box_s_unit",
    "solve_unit_equation",
    "two_way_representations",
    "count_three_term",
]

# candidate-count ceiling; beyond this the scan refuses instead of hanging
DEFAULT_CAP = 4_000_000


class EnumerationCapError(Exception):
    """The requested box is too large to scan; explicit refusal."""

    def __init__(self, candidates: int, cap: int):
        self.candidates = candidates
        self.cap = cap
        super().__init__(f"enumeration of {candidates} candidates exceeds cap {cap}")


@dataclass(frozen=True)
class UnitEquationProblem:
    """An S-unit equation instance truncated to an exponent box."""

    S: PlaceSet
    bound: int

    def __post_init__(self):
        if self.bound < 1:
            raise ValueError("exponent bound must be positive")

    @property
    def rank(self) -> int:
        """Rank of the S-unit group modulo torsion {+-1}."""
        return len(self.S.finite_primes)

    @property
    def box_size(self) -> int:
        """Number of S-units with all exponents in the box."""
        return 2 * (2 * self.bound + 1) ** self.rank


def box_units(S: PlaceSet, B: int) -> list[Fraction]:
    """All S-units with exponent vector in [-B, B]^rank, in a fixed scan order."""
    primes = S.finite_primes
    out: list[Fraction] = []
    for exps in product(range(-B, B + 1), repeat=len(primes)):
        num = 1
        den = 1
        for p, e in zip(primes, exps):
            if e >= 0:
                num *= p**e
            else:
                den *= p**-e
        val = Fraction(num, den)
        out.append(val)
        out.append(-val)
    return out


def is_box_s_unit(x: Rational, S: PlaceSet, B: int) -> bool:
    """True when x = +-(product of S-primes) with every exponent in [-B, B]."""
    x = Fraction(x)
    if x == 0:
        return False
    num, den = abs(x.numerator), x.denominator
    for p in S.finite_primes:
        e = 0
        while num % p == 0:
            num //= p
            e += 1
        while den % p == 0:
            den //= p
            e -= 1
        if abs(e) > B:
            return False
    return num == 1 and den == 1


@dataclass(frozen=True)
class UnitEquationReport:
    """Solutions of u + v = 1 found within the box, with the rank-based bound."""

    problem: UnitEquationProblem
    solutions: tuple[tuple[Fraction, Fraction], ...]
    gamma_rank: int
    ln_bound: _bounds.BoundValue

    @property
    def count(self) -> int:
        return len(self.solutions)

    @property
    def bound_ok(self) -> bool:
        assert self.ln_bound.exact is not None
        return self.count <= self.ln_bound.exact


def solve_unit_equation(
    S: PlaceSet, B: int, cap: int = DEFAULT_CAP
) -> UnitEquationReport:
    """All (u, v) with u + v = 1 and both coordinates S-units in the box.

    One-sided scan: enumerate u over the box and test v = 1 - u, which is
    exhaustive because every solution's u coordinate lies in the box. The
    reported bound is the power-of-two solution bound at subgroup rank
    r = 2(s-1), where pairs (u, v) range over the square of the unit group.
    """
    problem = UnitEquationProblem(S, B)
    if problem.box_size > cap:
        raise EnumerationCapError(problem.box_size, cap)
    sols = []
    for u in box_units(S, B):
        v = 1 - u
        if v == 0:
            continue
        if is_box_s_unit(v, S, B):
            sols.append((u, v))
    sols.sort()
    r = 2 * (S.s - 1)
    return UnitEquationReport(
        problem=problem,
        solutions=tuple(sols),
        gamma_rank=r,
        ln_bound=_bounds.evaluate_bound(_bounds.beukers_schlickewei(r)),
    )


@dataclass(frozen=True)
class TwoWaysReport:
    """Unordered S-unit pairs summing to T within the box."""

    T: Fraction
    problem: UnitEquationProblem
    representations: tuple[tuple[Fraction, Fraction], ...]

    @property
    def two_ways(self) -> bool:
        """True when T splits in at least two essentially different ways."""
        return len(self.representations) >= 2


def two_way_representations(
    T: Rational, S: PlaceSet, B: int, cap: int = DEFAULT_CAP
) -> TwoWaysReport:
    """All unordered pairs {u, v} of box S-units with u + v = T.

    Pairs are distinct as sets, so {u, v} and {v, u} count once; the
    "two essentially different ways" predicate is simply >= 2 pairs.
    """
    T = Fraction(T)
    problem = UnitEquationProblem(S, B)
    if problem.box_size > cap:
        raise EnumerationCapError(problem.box_size, cap)
    seen: set[tuple[Fraction, Fraction]] = set()
    for u in box_units(S, B):
        v = T - u
        if v == 0:
            continue
        if is_box_s_unit(v, S, B):
            pair = (u, v) if u <= v else (v, u)
            seen.add(pair)
    return TwoWaysReport(T=T, problem=problem, representations=tuple(sorted(seen)))


@dataclass(frozen=True)
class ThreeTermReport:
    """Nondegenerate solution count of a1 x1 + a2 x2 + a3 x3 = 1 in the box."""

    problem: UnitEquationProblem
    coefficients: tuple[Fraction, Fraction, Fraction]
    count: int
    gamma_rank: int
    ln_bound: _bounds.BoundValue

    @property
    def bound_ok(self) -> bool:
        if self.count == 0:
            return True
        return _bounds.compare(self.count, self.ln_bound) == _bounds.SATISFIED


def count_three_term(
    S: PlaceSet, a, B: int, cap: int = DEFAULT_CAP
) -> ThreeTermReport:
    """Count ordered box S-unit triples solving the three-term unit equation.

    A solution is nondegenerate when no proper subsum of a_i x_i vanishes;
    only those are counted, matching the hypothesis of the rank-based bound
    e^((6n)^(3n) (r+1)) at n = 3, r = 3(s-1).
    """
    coeffs = tuple(Fraction(c) for c in a)
    if len(coeffs) != 3 or any(c == 0 for c in coeffs):
        raise ValueError("need exactly three nonzero coefficients")
    problem = UnitEquationProblem(S, B)
    candidates = problem.box_size**2
    if candidates > cap:
        raise EnumerationCapError(candidates, cap)
    a1, a2, a3 = coeffs
    units = box_units(S, B)
    count = 0
    for x1 in units:
        t1 = a1 * x1
        for x2 in units:
            t2 = a2 * x2
            rest = 1 - t1 - t2
            if rest == 0:
                continue
            x3 = rest / a3
            if not is_box_s_unit(x3, S, B):
                continue
            t3 = rest
            # no vanishing proper subsum
            if t1 + t2 == 0 or t1 + t3 == 0 or t2 + t3 == 0:
                continue
            count += 1
    r = 3 * (S.s - 1)
    return ThreeTermReport(
        problem=problem,
        coefficients=coeffs,
        count=count,
        gamma_rank=r,
        ln_bound=_bounds.evaluate_bound(_bounds.ess(3, r)),
    )
