import pytest

from circdet.polyring import (
    InexactDivisionError,
    IntPoly,
    ParseError,
    cyclotomic,
    divisors,
    euler_phi,
    geometric_sum,
    parse_poly,
    poly_divmod,
    poly_exact_div,
    poly_mul_mod,
    reduce_cyclic,
    render_poly,
    resultant,
    resultant_sylvester,
)


class TestParse:
    def test_monomials(self):
        assert parse_poly("1 - x + x^3").coeffs == (1, -1, 0, 1)

    def test_list_form_matches(self):
        assert parse_poly("[1,-1,0,1]") == parse_poly("1 - x + x^3")

    def test_zero(self):
        assert parse_poly("0").coeffs == ()
        assert parse_poly("0").is_zero()

    def test_coefficients_and_like_terms(self):
        assert parse_poly("3x^2 - 2x^2 + 4*x - 1").coeffs == (-1, 4, 1)

    def test_leading_minus(self):
        assert parse_poly("-x").coeffs == (0, -1)

    @pytest.mark.parametrize("bad", ["", "x^", "1 +", "x^-2", "y", "1 +* x", "(x+1)"])
    def test_rejects(self, bad):
        with pytest.raises(ParseError):
            parse_poly(bad)

    @pytest.mark.parametrize("text", ["1 - x + x^3", "-x", "x^14 + 1", "2 - 3x^2 + x^7", "0"])
    def test_render_round_trip(self, text):
        P = parse_poly(text)
        assert parse_poly(render_poly(P)) == P


class TestArithmetic:
    def test_mul_mod_wraps(self):
        assert poly_mul_mod(parse_poly("x^14"), parse_poly("x"), 15) == IntPoly([1])

    def test_mul_mod_identity(self):
        G = parse_poly("3 + x^17 - x^30")
        assert poly_mul_mod(IntPoly([1]), G, 15) == reduce_cyclic(G, 15)

    def test_mul_mod_no_folding(self):
        assert poly_mul_mod(cyclotomic(3), cyclotomic(5), 15) == cyclotomic(3) * cyclotomic(5)

    def test_exact_div_geometric(self):
        assert poly_exact_div(parse_poly("x^5 - 1"), parse_poly("x - 1")) == geometric_sum(5)

    def test_exact_div_phi15(self):
        q = poly_exact_div(parse_poly("x^15 - 1"), cyclotomic(15))
        expected = poly_exact_div(parse_poly("x^3 - 1") * parse_poly("x^5 - 1"), parse_poly("x - 1"))
        assert q == expected

    def test_exact_div_rejects_remainder(self):
        with pytest.raises(InexactDivisionError):
            poly_exact_div(parse_poly("x^2 + 1"), parse_poly("x - 1"))

    def test_divmod_identity(self):
        F, D = parse_poly("3 + 2x - x^4 + 7x^6"), parse_poly("x^2 + x + 1")
        q, r = poly_divmod(F, D)
        assert q * D + r == F and r.degree < D.degree

    def test_geometric_sum_negative_k(self):
        # (x^-2 - 1)/(x - 1) = -(x^-1 + x^-2) = -(x^14 + x^13) mod x^15 - 1
        assert geometric_sum(-2, 15) == parse_poly("-x^13 - x^14")


class TestCyclotomic:
    def test_small(self):
        assert cyclotomic(1) == parse_poly("x - 1")
        assert cyclotomic(3) == parse_poly("x^2 + x + 1")

    def test_phi15_by_division(self):
        num = parse_poly("x^15 - 1") * parse_poly("x - 1")
        den = parse_poly("x^3 - 1") * parse_poly("x^5 - 1")
        assert cyclotomic(15) == poly_exact_div(num, den)
        assert cyclotomic(15).degree == 8

    @pytest.mark.parametrize("n", [1, 2, 6, 12, 15, 30, 105])
    def test_product_over_divisors(self, n):
        acc = IntPoly([1])
        for d in divisors(n):
            acc = acc * cyclotomic(d)
        assert acc == parse_poly(f"x^{n} - 1")
        assert cyclotomic(n).degree == euler_phi(n)


class TestResultant:
    @pytest.mark.parametrize("m,expected", [(5, 81), (3, 25), (2, 1)])
    def test_cyclotomic_pairs(self, m, expected):
        assert resultant(cyclotomic(15), cyclotomic(m)) == expected

    def test_against_sylvester(self):
        pairs = [("x^3 - 2x + 7", "2x^2 + 5"), ("x^4 + 1", "x^3 - x - 1"), ("3x^5 - x + 2", "x^2 - 4")]
        for a, b in pairs:
            A, B = parse_poly(a), parse_poly(b)
            assert resultant(A, B) == resultant_sylvester(A, B)

    def test_common_root(self):
        assert resultant(parse_poly("x^2 - 1"), parse_poly("x - 1")) == 0

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            resultant(IntPoly(), parse_poly("x"))
