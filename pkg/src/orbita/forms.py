"""Integer binary forms in (X, Y) and exact Sylvester resultants.

A form of degree d is a tuple of d+1 integers (c_0, ..., c_d) meaning
c_0 X^d + c_1 X^(d-1) Y + ... + c_d Y^d. Leading coefficients may be zero;
the tuple length fixes the formal degree.
"""

from __future__ import annotations

from math import gcd

Form = tuple[int, ...]

__all__ = [
    "Form",
    "form_degree",
    "evaluate_form",
    "add_forms",
    "scale_form",
    "multiply_forms",
    "power_form",
    "substitute_forms",
    "content",
    "resultant",
]


def form_degree(f: Form) -> int:
    return len(f) - 1


def evaluate_form(f: Form, x, y):
    """f(x, y), exact; accepts ints or Fractions."""
    d = form_degree(f)
    acc = 0
    for i, c in enumerate(f):
        if c:
            acc += c * x ** (d - i) * y**i
    return acc


def add_forms(f: Form, g: Form) -> Form:
    if len(f) != len(g):
        raise ValueError("forms must have the same formal degree")
    return tuple(a + b for a, b in zip(f, g))


def scale_form(f: Form, c: int) -> Form:
    return tuple(c * a for a in f)


def multiply_forms(f: Form, g: Form) -> Form:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] += a * b
    return tuple(out)


def power_form(f: Form, k: int) -> Form:
    if k < 0:
        raise ValueError("negative power")
    out: Form = (1,)
    for _ in range(k):
        out = multiply_forms(out, f)
    return out


def substitute_forms(f: Form, u: Form, v: Form) -> Form:
    """f(u(X,Y), v(X,Y)) for forms u, v of equal degree e; result degree d*e."""
    if len(u) != len(v):
        raise ValueError("substituted forms must have equal degree")
    d = form_degree(f)
    # precompute u^(d-i) * v^i
    upow = [power_form(u, d - i) for i in range(d + 1)]
    vpow = [power_form(v, i) for i in range(d + 1)]
    e = form_degree(u)
    out = [0] * (d * e + 1)
    for i, c in enumerate(f):
        if c:
            term = multiply_forms(upow[i], vpow[i])
            for j, t in enumerate(term):
                out[j] += c * t
    return tuple(out)


def content(f: Form) -> int:
    g = 0
    for c in f:
        g = gcd(g, abs(c))
    return g


def _bareiss_det(m: list[list[int]]) -> int:
    """Fraction-free determinant; exact over the integers."""
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division is the Bareiss invariant
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def resultant(F: Form, G: Form) -> int:
    """Determinant of the 2d x 2d Sylvester matrix of two degree-d forms.

    Zero iff F and G share a projective root over the algebraic closure.
    """
    d = form_degree(F)
    if form_degree(G) != d:
        raise ValueError("resultant requires forms of equal degree")
    if d < 1:
        raise ValueError("degree must be at least 1")
    n = 2 * d
    rows: list[list[int]] = []
    for shift in range(d):
        rows.append([0] * shift + list(F) + [0] * (d - 1 - shift))
    for shift in range(d):
        rows.append([0] * shift + list(G) + [0] * (d - 1 - shift))
    assert all(len(r) == n for r in rows)
    return _bareiss_det(rows)
