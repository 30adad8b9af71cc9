"""Rational maps of the projective line as pairs of integer binary forms.

A map is stored as a canonical model (F, G): two degree-d integer forms with
joint content 1, sign-canonical leading coefficient, and nonzero resultant.
The expression parser accepts rational functions of z and homogenizes them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .forms import (
    Form,
    add_forms,
    content,
    evaluate_form,
    form_degree,
    multiply_forms,
    resultant,
    scale_form,
    substitute_forms,
)
from .numtheory import factor, vp
from .projective import ProjectivePoint, from_pair

__all__ = [
    "RationalMap",
    "MoebiusTransform",
    "MapSyntaxError",
    "BitBudgetError",
    "make_map",
    "parse_map",
    "map_to_expr",
    "evaluate",
    "bad_primes",
    "good_reduction_at",
    "make_moebius",
    "moebius_order",
    "conjugate",
    "compose_maps",
    "iterate_map",
]

DEFAULT_COEFF_BITS = 4096


class MapSyntaxError(ValueError):
    """Expression syntax error with a 0-based position."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at index {position})")


class BitBudgetError(Exception):
    """A size budget (coefficient bits or form degree) was exceeded."""

    def __init__(self, observed: int, limit: int, what: str = "coefficient size"):
        self.observed = observed
        self.limit = limit
        super().__init__(f"{what} {observed} exceeds budget {limit}")


# eager resultants make huge-degree models impractical; refuse them loudly
MAX_DEGREE = 128


@dataclass(frozen=True)
class RationalMap:
    """Canonical model of a degree-d rational self-map of the projective line."""

    F: Form
    G: Form

    def __post_init__(self):
        if len(self.F) != len(self.G):
            raise ValueError("F and G must have equal degree")
        d = form_degree(self.F)
        if d < 1:
            raise ValueError("degree-0 constant maps are rejected")
        joint = gcd(content(self.F), content(self.G))
        if joint != 1:
            raise ValueError("coefficients must have joint content 1")
        lead = next((c for c in self.G if c), None)
        if lead is None:
            lead = next(c for c in self.F if c)
        if lead < 0:
            raise ValueError("leading sign must be canonical")
        res = resultant(self.F, self.G)
        if res == 0:
            raise ValueError("resultant must be nonzero (F, G share a root)")
        object.__setattr__(self, "_res", res)

    @property
    def degree(self) -> int:
        return form_degree(self.F)

    @property
    def res(self) -> int:
        """Resultant of the canonical model (cached at construction)."""
        return self._res  # type: ignore[attr-defined]

    def __str__(self) -> str:
        return map_to_expr(self)


def make_map(F, G) -> RationalMap:
    """Normalize a raw coefficient pair (content 1, canonical sign) and validate."""
    F = tuple(int(c) for c in F)
    G = tuple(int(c) for c in G)
    joint = gcd(content(F), content(G))
    if joint == 0:
        raise ValueError("zero map")
    if joint > 1:
        F = tuple(c // joint for c in F)
        G = tuple(c // joint for c in G)
    lead = next((c for c in G if c), None)
    if lead is None:
        lead = next((c for c in F if c), None)
    if lead is not None and lead < 0:
        F = scale_form(F, -1)
        G = scale_form(G, -1)
    return RationalMap(F, G)


# ---------------------------------------------------------------------------
# univariate polynomial helpers over Q (ascending coefficients, no trailing 0)


def _pnorm(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _padd(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return _pnorm(out)


def _pneg(a):
    return [-x for x in a]


def _pmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pnorm(out)


def _pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        k = len(a) - len(b)
        c = a[-1] / b[-1]
        q[k] = c
        for i, y in enumerate(b):
            a[k + i] -= c * y
        _pnorm(a)  # leading term cancels, so the loop strictly shrinks a
    return _pnorm(q), a


def _pgcd(a, b):
    a, b = list(a), list(b)
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [x / lead for x in a]  # monic
    return a


# ---------------------------------------------------------------------------
# expression parser: recursive descent over the grammar
#   expr   := ['+'|'-'] term (('+'|'-') term)*
#   term   := factor (('*'|'/') factor)*
#   factor := base ('^' uint)?
#   base   := 'z' | rational | '(' expr ')'
#   rational := uint ('/' uint)?
# The optional leading sign is a superset of the published grammar. Rational
# literals bind greedily, so "1/2^3" is (1/2)^3 by the factor rule.


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str | None:
        self._skip_ws()
        if self.pos >= len(self.text):
            return None
        ch = self.text[self.pos]
        return "-" if ch == "−" else ch  # typographic minus alias

    def take(self) -> str:
        ch = self.peek()
        if ch is None:
            raise MapSyntaxError("unexpected end of expression", self.pos)
        self.pos += 1
        return ch

    def expect(self, ch: str):
        got = self.peek()
        if got != ch:
            raise MapSyntaxError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def _uint(self) -> int:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise MapSyntaxError("expected an unsigned integer", start)
        return int(self.text[start : self.pos])

    # rational function values: (num, den) coefficient lists over Q

    def expr(self):
        ch = self.peek()
        neg = False
        if ch in ("+", "-"):
            self.take()
            neg = ch == "-"
        value = self.term()
        if neg:
            value = (_pneg(value[0]), value[1])
        while True:
            ch = self.peek()
            if ch not in ("+", "-"):
                return value
            self.take()
            rhs = self.term()
            n1, d1 = value
            n2, d2 = rhs
            if ch == "-":
                n2 = _pneg(n2)
            value = (_padd(_pmul(n1, d2), _pmul(n2, d1)), _pmul(d1, d2))

    def term(self):
        value = self.factor()
        while True:
            ch = self.peek()
            if ch not in ("*", "/"):
                return value
            at = self.pos
            self.take()
            rhs = self.factor()
            n1, d1 = value
            n2, d2 = rhs
            if ch == "*":
                value = (_pmul(n1, n2), _pmul(d1, d2))
            else:
                if not n2:
                    raise MapSyntaxError("division by the zero function", at)
                value = (_pmul(n1, d2), _pmul(d1, n2))

    def factor(self):
        value = self.base()
        if self.peek() == "^":
            self.take()
            k = self._uint()
            n, d = [Fraction(1)], [Fraction(1)]
            for _ in range(k):
                n = _pmul(n, value[0])
                d = _pmul(d, value[1])
            value = (n, d)
        return value

    def base(self):
        ch = self.peek()
        if ch is None:
            raise MapSyntaxError("unexpected end of expression", self.pos)
        if ch == "z":
            self.take()
            return ([Fraction(0), Fraction(1)], [Fraction(1)])
        if ch == "(":
            self.take()
            value = self.expr()
            self.expect(")")
            return value
        if ch.isdigit():
            num = self._uint()
            den = 1
            # greedy rational literal: consume '/' only when a uint follows
            save = self.pos
            if self.peek() == "/":
                self.take()
                nxt = self.peek()
                if nxt is not None and nxt.isdigit():
                    den = self._uint()
                    if den == 0:
                        raise MapSyntaxError("zero denominator in rational literal", save)
                else:
                    self.pos = save
            return ([Fraction(num, den)], [Fraction(1)])
        raise MapSyntaxError(f"unexpected character {ch!r}", self.pos)


def parse_map(text: str) -> RationalMap:
    """Parse a rational function of z into a canonical model.

    Common polynomial factors are removed over Q before homogenization, so
    the resulting model always has nonzero resultant.
    """
    parser = _Parser(text)
    num, den = parser.expr()
    if parser.peek() is not None:
        raise MapSyntaxError("trailing input", parser.pos)
    if not den:
        raise MapSyntaxError("zero denominator", 0)
    g = _pgcd(num, den)
    if len(g) > 1:
        num, _ = _pdivmod(num, g)
        den, _ = _pdivmod(den, g)
        num, den = _pnorm(num), _pnorm(den)
    d = max(len(num), len(den)) - 1
    if d < 1:
        raise MapSyntaxError("constant maps are rejected", 0)
    if d > MAX_DEGREE:
        raise BitBudgetError(d, MAX_DEGREE, "map degree")

    def homogenize(poly) -> list[Fraction]:
        # descending X powers: coefficient of X^(d-j) Y^j
        out = [Fraction(0)] * (d + 1)
        for i, c in enumerate(poly):
            out[d - i] = c
        return out

    Fq = homogenize(num)
    Gq = homogenize(den)
    scale = 1
    for c in Fq + Gq:
        scale = scale * c.denominator // gcd(scale, c.denominator)
    F = [int(c * scale) for c in Fq]
    G = [int(c * scale) for c in Gq]
    return make_map(F, G)


def _poly_str(coeffs_desc: list[int]) -> str:
    d = len(coeffs_desc) - 1
    parts: list[str] = []
    for i, c in enumerate(coeffs_desc):
        if c == 0:
            continue
        k = d - i
        mag = abs(c)
        if k == 0:
            body = str(mag)
        elif k == 1:
            body = "z" if mag == 1 else f"{mag}*z"
        else:
            body = f"z^{k}" if mag == 1 else f"{mag}*z^{k}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    if not parts:
        return "0"
    return " ".join(parts)


def map_to_expr(m: RationalMap) -> str:
    """Canonical printable expression; parsing it back gives the same model."""
    num = _poly_str(list(m.F))
    den = _poly_str(list(m.G))
    if den == "1":
        return num
    return f"({num})/({den})"


def evaluate(m: RationalMap, P: ProjectivePoint) -> ProjectivePoint:
    """Image of a point; never (0,0) because the resultant is nonzero."""
    return from_pair(evaluate_form(m.F, P.x, P.y), evaluate_form(m.G, P.x, P.y))


def bad_primes(m: RationalMap) -> list[int]:
    """Primes dividing the resultant of the canonical model.

    Good reduction holds at every prime not listed; the list may strictly
    contain the bad set of a minimal model (documented superset semantics).
    """
    return list(factor(m.res).primes)


def good_reduction_at(m: RationalMap, p: int) -> bool:
    return vp(m.res, p) == 0


@dataclass(frozen=True)
class MoebiusTransform:
    """Invertible 2x2 integer matrix up to scaling, content 1, sign-canonical."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.det == 0:
            raise ValueError("determinant must be nonzero")
        if gcd(gcd(abs(self.a), abs(self.b)), gcd(abs(self.c), abs(self.d))) != 1:
            raise ValueError("entries must have content 1")
        lead = next(v for v in (self.a, self.b, self.c, self.d) if v)
        if lead < 0:
            raise ValueError("leading sign must be canonical")

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @classmethod
    def identity(cls) -> "MoebiusTransform":
        return cls(1, 0, 0, 1)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def apply(self, P: ProjectivePoint) -> ProjectivePoint:
        return from_pair(self.a * P.x + self.b * P.y, self.c * P.x + self.d * P.y)

    def compose(self, other: "MoebiusTransform") -> "MoebiusTransform":
        a, b, c, d = self.entries()
        e, f, g, h = other.entries()
        return make_moebius(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> "MoebiusTransform":
        return make_moebius(self.d, -self.b, -self.c, self.a)

    def as_map(self) -> RationalMap:
        return make_map((self.a, self.b), (self.c, self.d))

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


def make_moebius(a: int, b: int, c: int, d: int) -> MoebiusTransform:
    """Normalize entries (content 1, canonical sign) and validate."""
    g = gcd(gcd(abs(a), abs(b)), gcd(abs(c), abs(d)))
    if g == 0:
        raise ValueError("zero matrix")
    if g > 1:
        a, b, c, d = a // g, b // g, c // g, d // g
    lead = next(v for v in (a, b, c, d) if v)
    if lead < 0:
        a, b, c, d = -a, -b, -c, -d
    return MoebiusTransform(a, b, c, d)


def moebius_order(A: MoebiusTransform, cap: int = 12) -> int | None:
    """Least k <= cap with A^k scalar, or None when the order exceeds the cap.

    Scalar matrices normalize to the identity, so the test is plain equality.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    acc = A
    for k in range(1, cap + 1):
        if acc == MoebiusTransform.identity():
            return k
        acc = acc.compose(A)
    return None


def conjugate(m: RationalMap, A: MoebiusTransform) -> RationalMap:
    """The conjugated model A o m o A^(-1), content-normalized.

    For det A = +-1 the resultant (hence the bad-prime set) is preserved.
    """
    a, b, c, d = A.entries()
    # substitute the unnormalized inverse (adjugate) into both forms
    u: Form = (d, -b)
    v: Form = (-c, a)
    Fs = substitute_forms(m.F, u, v)
    Gs = substitute_forms(m.G, u, v)
    F2 = add_forms(scale_form(Fs, a), scale_form(Gs, b))
    G2 = add_forms(scale_form(Fs, c), scale_form(Gs, d))
    return make_map(F2, G2)


def compose_maps(outer: RationalMap, inner: RationalMap,
                 max_bits: int = DEFAULT_COEFF_BITS) -> RationalMap:
    """Formal composition outer(inner), content-normalized, budget-guarded."""
    d = outer.degree * inner.degree
    if d > MAX_DEGREE:
        raise BitBudgetError(d, MAX_DEGREE, "composite degree")
    F = substitute_forms(outer.F, inner.F, inner.G)
    G = substitute_forms(outer.G, inner.F, inner.G)
    m = make_map(F, G)
    worst = max(abs(c).bit_length() for c in m.F + m.G)
    if worst > max_bits:
        raise BitBudgetError(worst, max_bits)
    return m


def iterate_map(m: RationalMap, k: int, max_bits: int = DEFAULT_COEFF_BITS) -> RationalMap:
    """k-fold composite of m with itself (k >= 1)."""
    if k < 1:
        raise ValueError("k must be positive")
    acc = m
    for _ in range(k - 1):
        acc = compose_maps(m, acc, max_bits)
    return acc
