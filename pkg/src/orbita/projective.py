"""Canonical points of the projective line over Q and p-adic logarithmic distance.

Points are stored in canonical coprime integer coordinates [x:y] with y > 0,
or y = 0 and x = 1 for the point at infinity. With both points canonical the
distance reduces to the valuation of the cross term x1*y2 - x2*y1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, inf, isinf

from .numtheory import Rational, factor, vp

__all__ = [
    "ProjectivePoint",
    "INFINITE_DISTANCE",
    "canonical_point",
    "from_pair",
    "parse_point",
    "log_distance",
    "relevant_primes",
]

# distance value for equal points; compares above every integer
INFINITE_DISTANCE = inf


@dataclass(frozen=True, order=False)
class ProjectivePoint:
    """Point [x:y] in canonical coprime coordinates."""

    x: int
    y: int

    def __post_init__(self):
        if self.x == 0 and self.y == 0:
            raise ValueError("(0,0) is not a projective point")
        if gcd(abs(self.x), abs(self.y)) != 1:
            raise ValueError("coordinates must be coprime")
        if self.y < 0 or (self.y == 0 and self.x != 1):
            raise ValueError("coordinates must be sign-canonical")

    @property
    def is_infinity(self) -> bool:
        return self.y == 0

    def affine(self) -> Fraction | float:
        """The affine value x/y, or inf for [1:0]."""
        if self.y == 0:
            return inf
        return Fraction(self.x, self.y)

    def __str__(self) -> str:
        return f"[{self.x}:{self.y}]"


def from_pair(x: Rational | int, y: Rational | int) -> ProjectivePoint:
    """Canonical point from any homogeneous pair of rationals, not both zero."""
    xf, yf = Fraction(x), Fraction(y)
    if xf == 0 and yf == 0:
        raise ValueError("(0,0) is not a projective point")
    scale = xf.denominator * yf.denominator
    a = int(xf * scale)
    b = int(yf * scale)
    g = gcd(abs(a), abs(b))
    a //= g
    b //= g
    if b < 0 or (b == 0 and a < 0):
        a, b = -a, -b
    return ProjectivePoint(a, b)


def canonical_point(a) -> ProjectivePoint:
    """Affine-to-projective embedding: a -> [a:1], infinity -> [1:0].

    Accepts an exact rational (Fraction or int) or the infinity symbol
    (float("inf")); finite floats are rejected to keep arithmetic exact.
    """
    if isinstance(a, float):
        if isinf(a):
            return ProjectivePoint(1, 0)
        raise TypeError("finite floats are not exact; pass a Fraction")
    af = Fraction(a)
    return ProjectivePoint(af.numerator, af.denominator)


def parse_point(text: str) -> ProjectivePoint:
    """Point syntax: "a/b", an integer, "inf", or "[x:y]"."""
    t = text.strip()
    if t in ("inf", "Inf", "INF", "oo"):
        return ProjectivePoint(1, 0)
    if t.startswith("[") and t.endswith("]"):
        body = t[1:-1]
        parts = body.split(":")
        if len(parts) != 2:
            raise ValueError(f"bad projective point syntax: {text!r}")
        try:
            return from_pair(int(parts[0].strip()), int(parts[1].strip()))
        except ValueError as exc:
            raise ValueError(f"bad projective point {text!r}: {exc}") from None
    try:
        return canonical_point(Fraction(t))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad point syntax {text!r}: {exc}") from None


def cross_term(P: ProjectivePoint, Q: ProjectivePoint) -> int:
    return P.x * Q.y - Q.x * P.y


def log_distance(P: ProjectivePoint, Q: ProjectivePoint, p: int) -> int | float:
    """p-adic logarithmic distance; +infinity exactly when P = Q.

    In canonical coprime coordinates min(vp(x), vp(y)) vanishes for both
    points, so the distance is vp of the cross term. Always nonnegative.
    """
    c = cross_term(P, Q)
    if c == 0:
        return INFINITE_DISTANCE
    v = vp(c, p)
    assert v >= 0, "coprime canonical coordinates force a nonnegative distance"
    return v


def relevant_primes(P: ProjectivePoint, Q: ProjectivePoint) -> list[tuple[int, int]]:
    """All (p, log_distance) pairs with positive distance, via factoring the cross term.

    Requires P != Q; propagates the factorization budget error.
    """
    c = cross_term(P, Q)
    if c == 0:
        raise ValueError("relevant_primes requires distinct points")
    if c in (1, -1):
        return []
    return [(p, e) for p, e in factor(c).factors]
