from fractions import Fraction

import pytest

from orbita.maps import (
    MAX_DEGREE,
    BitBudgetError,
    MapSyntaxError,
    MoebiusTransform,
    RationalMap,
    bad_primes,
    compose_maps,
    conjugate,
    evaluate,
    good_reduction_at,
    iterate_map,
    make_map,
    make_moebius,
    map_to_expr,
    moebius_order,
    parse_map,
)
from orbita.projective import ProjectivePoint, canonical_point, from_pair


class TestParsing:
    def test_polynomial(self):
        m = parse_map("z^2 - 1")
        assert m.F == (1, 0, -1)
        assert m.G == (0, 0, 1)

    def test_rational_coefficients_cleared(self):
        m = parse_map("z^2 - 29/16")
        assert m.F == (16, 0, -29)
        assert m.G == (0, 0, 16)
        assert m.res == 65536

    def test_quotient(self):
        m = parse_map("(z^2 - 1)/z")
        assert m.F == (1, 0, -1)
        assert m.G == (0, 1, 0)

    def test_reciprocal(self):
        m = parse_map("1/z")
        assert m.F == (0, 1)
        assert m.G == (1, 0)

    def test_unary_minus_and_minus_sign_alias(self):
        m = parse_map("− z^2 + 1")
        assert m.F == (-1, 0, 1)

    def test_common_factor_cancelled(self):
        m = parse_map("(z^2 - z)/(z - 1)")  # z(z-1)/(z-1) = z
        assert (m.F, m.G) == ((1, 0), (0, 1))

    def test_greedy_rational_literal(self):
        # "1/2^3" binds the exponent to the literal: (1/2)^3
        m = parse_map("z + 1/2^3")
        assert evaluate(m, canonical_point(0)) == canonical_point(Fraction(1, 8))

    def test_power_binds_tighter_than_product(self):
        m = parse_map("2*z^2")
        assert evaluate(m, canonical_point(3)) == canonical_point(18)

    def test_nested_parens(self):
        m = parse_map("((z + 1)^2 - (z - 1)^2)/4")  # = z
        assert (m.F, m.G) == ((1, 0), (0, 1))

    def test_division_by_zero_function(self):
        with pytest.raises(MapSyntaxError):
            parse_map("z/(z - z)")

    def test_constant_rejected(self):
        with pytest.raises(ValueError):
            parse_map("3/4")
        with pytest.raises(ValueError):
            parse_map("(z + 1)/(z + 1)")

    @pytest.mark.parametrize(
        "text", ["", "z +", "z^", "(z", "z)", "z^-2", "w + 1", "z**2", "1/2/", "z^2^3", "^2"]
    )
    def test_syntax_errors(self, text):
        with pytest.raises(MapSyntaxError):
            parse_map(text)

    def test_power_of_power_needs_parens(self):
        m = parse_map("(z^2)^3")
        assert m.F == (1,) + (0,) * 6
        # while z^1/2 is (z^1)/2 by the factor grammar
        assert parse_map("z^1/2") == parse_map("z/2")

    def test_syntax_error_carries_position(self):
        with pytest.raises(MapSyntaxError) as info:
            parse_map("z + @")
        assert info.value.position == 4

    def test_degree_budget(self):
        with pytest.raises(BitBudgetError):
            parse_map(f"z^{MAX_DEGREE + 1}")


def _roundtrip_corpus():
    fixed = [
        "z",
        "-z",
        "z + 1",
        "z - 1",
        "1/z",
        "-1/z",
        "z^2",
        "z^2 - 1",
        "z^2 - 29/16",
        "z^2 + z + 1",
        "(z^2 - 1)/z",
        "(z^2 + 1)/(z^2 - 1)",
        "-1/(z + 1)",
        "z^3 - 2*z",
        "(2*z + 3)/(5*z - 7)",
        "z^2/2 + 1/2",
        "7/(3*z^2 + 1)",
        "(z - 1)*(z + 1)/z",
        "z^4 + 1/16",
        "1/z^2",
        "(z^3 + z)/(z^2 - 4)",
        "3*z^5 - z^2 + 1/3",
        "z*(z - 1)*(z - 2)",
        "(z^2 - 2)/(2*z)",
        "2/3*z^2 - 5/7",
    ]
    generated = []
    for a in (1, -2, 3):
        for b in (0, 1, -5):
            for c in (1, 2, 7):
                for d in (1, -1, 4):
                    num = f"{a}*z^2 {'-' if b < 0 else '+'} {abs(b)}"
                    den = f"{c}*z {'-' if d < 0 else '+'} {abs(d)}"
                    generated.append(f"({num})/({den})")
    return fixed + generated[: 100 - len(fixed)]


@pytest.mark.parametrize("text", _roundtrip_corpus())
def test_print_parse_roundtrip(text):
    m = parse_map(text)
    again = parse_map(map_to_expr(m))
    assert again == m


class TestModel:
    def test_content_normalized(self):
        m = make_map((2, 0, -2), (0, 0, 4))
        assert (m.F, m.G) == ((1, 0, -1), (0, 0, 2))

    def test_sign_canonical(self):
        m1 = make_map((1, 0, -1), (0, 0, 1))
        m2 = make_map((-1, 0, 1), (0, 0, -1))
        assert m1 == m2

    def test_degenerate_rejected(self):
        with pytest.raises(ValueError):
            make_map((1, -1), (2, -2))  # common root => resultant 0
        with pytest.raises(ValueError):
            RationalMap((2, 0), (0, 2))  # content 2

    def test_degree_mismatch_rejected(self):
        with pytest.raises(ValueError):
            RationalMap((1, 0), (0, 0, 1))


class TestEvaluation:
    def test_affine_and_infinity(self):
        m = parse_map("(z^2 - 1)/z")
        assert evaluate(m, canonical_point(1)) == canonical_point(0)
        assert evaluate(m, canonical_point(0)) == ProjectivePoint(1, 0)
        # at infinity the top-degree coefficients dominate
        assert evaluate(m, ProjectivePoint(1, 0)) == ProjectivePoint(1, 0)

    def test_result_is_canonical(self):
        m = parse_map("z^2")
        Q = evaluate(m, from_pair(2, 6))  # [1:3] -> [1:9]
        assert (Q.x, Q.y) == (1, 9)

    def test_matches_affine_formula(self):
        m = parse_map("(2*z + 3)/(5*z - 7)")
        z = Fraction(11, 4)
        expected = (2 * z + 3) / (5 * z - 7)
        assert evaluate(m, canonical_point(z)) == canonical_point(expected)


class TestReduction:
    def test_bad_primes_of_quadratic(self):
        assert bad_primes(parse_map("z^2 - 29/16")) == [2]
        assert bad_primes(parse_map("z^2 - 1")) == []

    def test_good_reduction_at(self):
        m = parse_map("z^2 - 29/16")
        assert not good_reduction_at(m, 2)
        assert good_reduction_at(m, 3)


class TestMoebius:
    def test_normalization(self):
        A = make_moebius(-2, 0, 0, -2)
        assert A == MoebiusTransform(1, 0, 0, 1)

    def test_apply_and_inverse(self):
        A = make_moebius(1, -2, 0, 1)
        P = canonical_point(7)
        assert A.apply(P) == canonical_point(5)
        assert A.inverse().apply(A.apply(P)) == P

    def test_compose_matches_apply(self):
        A = make_moebius(2, 1, 1, 1)
        B = make_moebius(1, -3, 0, 1)
        P = canonical_point(Fraction(4, 3))
        assert A.compose(B).apply(P) == A.apply(B.apply(P))

    def test_as_map_agrees(self):
        A = make_moebius(2, 1, 1, 1)
        m = A.as_map()
        P = canonical_point(Fraction(-5, 2))
        assert evaluate(m, P) == A.apply(P)

    def test_order(self):
        assert moebius_order(make_moebius(1, 0, 0, 1)) == 1
        assert moebius_order(make_moebius(0, 1, -1, 0)) == 2  # z -> -1/z
        assert moebius_order(make_moebius(0, 1, 1, 0)) == 2  # z -> 1/z
        assert moebius_order(make_moebius(1, -1, 1, 0)) == 3  # z -> 1 - 1/z
        assert moebius_order(make_moebius(1, 1, 0, 1)) is None  # translation

    def test_singular_rejected(self):
        with pytest.raises(ValueError):
            make_moebius(1, 2, 2, 4)


class TestConjugation:
    def test_translation_conjugate(self):
        # with A = z - 2: A o (z^2) o A^{-1} = (z+2)^2 - 2 = z^2 + 4z + 2
        m = parse_map("z^2")
        A = make_moebius(1, -2, 0, 1)
        m2 = conjugate(m, A)
        assert m2 == parse_map("z^2 + 4*z + 2")

    def test_pointwise_equivariance(self):
        m = parse_map("(z^2 - 1)/z")
        A = make_moebius(2, 1, 1, 1)
        for z in (0, 1, Fraction(3, 5), Fraction(-7, 2)):
            P = canonical_point(z)
            assert evaluate(m2 := conjugate(m, A), A.apply(P)) == A.apply(evaluate(m, P))
        assert m2.degree == m.degree

    def test_unimodular_conjugation_preserves_resultant_size(self):
        m = parse_map("z^2 - 2")
        A = make_moebius(1, -2, 0, 1)
        assert abs(conjugate(m, A).res) == abs(m.res)


class TestComposition:
    def test_iterate_quadratic(self):
        m = parse_map("z^2 - 1")
        m2 = iterate_map(m, 2)
        assert m2 == parse_map("(z^2 - 1)^2 - 1")
        for z in (0, 2, Fraction(1, 3)):
            P = canonical_point(z)
            assert evaluate(m2, P) == evaluate(m, evaluate(m, P))

    def test_iterate_identity_power(self):
        m = parse_map("1/z")
        assert iterate_map(m, 2) == parse_map("z")

    def test_compose_degree_guard(self):
        m = parse_map("z^16")
        with pytest.raises(BitBudgetError):
            compose_maps(m, parse_map(f"z^{MAX_DEGREE // 16 + 1}"))

    def test_iterate_coefficient_budget(self):
        m = parse_map("z^2 + 12345678901234567890123456789")
        with pytest.raises(BitBudgetError):
            iterate_map(m, 8, max_bits=256)
