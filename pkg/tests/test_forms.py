from fractions import Fraction

import pytest

from orbita.forms import (
    add_forms,
    content,
    evaluate_form,
    form_degree,
    multiply_forms,
    power_form,
    resultant,
    scale_form,
    substitute_forms,
)


def test_degree_and_evaluation():
    f = (1, 0, -1)  # X^2 - Y^2
    assert form_degree(f) == 2
    assert evaluate_form(f, 3, 2) == 5
    assert evaluate_form(f, Fraction(1, 2), 1) == Fraction(-3, 4)


def test_arithmetic():
    f = (1, 1)  # X + Y
    g = (1, -1)  # X - Y
    assert add_forms(f, g) == (2, 0)
    assert scale_form(f, 3) == (3, 3)
    assert multiply_forms(f, g) == (1, 0, -1)
    assert power_form(f, 3) == (1, 3, 3, 1)


def test_substitute():
    # (X + Y) o (u, v) = u + v
    h = substitute_forms((1, 1), (1, 0, 0), (0, 0, 1))  # u = X^2, v = Y^2
    assert h == (1, 0, 1)
    # X*Y o (X^2, Y^2) = X^2 Y^2
    assert substitute_forms((0, 1, 0), (1, 0, 0), (0, 0, 1)) == (0, 0, 1, 0, 0)


def test_content():
    assert content((6, -4, 10)) == 2
    assert content((0, 0, 7)) == 7
    assert content((0,) * 3) == 0


def test_resultant_direct_2x2():
    # res(aX + bY, cX + dY) = ad - bc, degree-1 Sylvester is 2x2
    assert resultant((2, 3), (5, 7)) == 2 * 7 - 3 * 5


def test_resultant_hand_cofactor_4x4():
    # F = X^2 - Y^2, G = X^2 + Y^2; 4x4 Sylvester expanded by hand gives 4
    assert resultant((1, 0, -1), (1, 0, 1)) == 4


def test_resultant_of_split_forms_is_cross_product():
    # res(prod(u_i X - v_i Y), prod(w_j X - z_j Y)) = prod(v_i w_j - u_i z_j)
    first = [(1, -2), (3, 5)]
    second = [(2, 1), (1, -7)]
    F = multiply_forms((first[0][0], -first[0][1]), (first[1][0], -first[1][1]))
    G = multiply_forms((second[0][0], -second[0][1]), (second[1][0], -second[1][1]))
    expected = 1
    for u, v in first:
        for w, z in second:
            expected *= v * w - u * z
    assert resultant(F, G) == expected


def test_resultant_vanishes_on_common_root():
    # both vanish at [1:1]
    F = multiply_forms((1, -1), (1, 2))
    G = multiply_forms((1, -1), (3, 1))
    assert resultant(F, G) == 0


def test_resultant_quadratic_example():
    # res(16X^2 - 29Y^2, 16Y^2) = 16^2 * res(F, Y)^2 = 16^4
    assert resultant((16, 0, -29), (0, 0, 16)) == 65536


def test_resultant_sl2_invariance():
    # substituting a determinant-1 change of variables preserves the resultant
    F = (2, -1, 3)
    G = (1, 4, -5)
    a, b, c, d = 2, 3, 1, 2  # det 1
    u = (a, b)
    v = (c, d)
    F2 = substitute_forms(F, u, v)
    G2 = substitute_forms(G, u, v)
    assert resultant(F2, G2) == resultant(F, G)


def test_resultant_requires_equal_degree():
    with pytest.raises(ValueError):
        resultant((1, 0), (1, 0, 0))
