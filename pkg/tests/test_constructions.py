import pytest

from circdet.constructions import (
    CertificateError,
    InvalidParameters,
    WitnessCertificate,
    compose_witness,
    cyclotomic_product,
    fixed_witness,
    kn2_witness,
    minus_x,
    negate,
    shift_construction,
    witness_3power,
    witness_3sq_5sq,
    witness_good_form,
    witness_p3m,
    witness_registry,
)
from circdet.cyclonorm import norm_profile
from circdet.goodbad import canonical_form
from circdet.numberfield import find_norm_element, find_prime_element
from circdet.polyring import IntPoly, parse_poly


def test_certificate_refuses_wrong_claim():
    with pytest.raises(CertificateError):
        WitnessCertificate(15, parse_poly("-x"), 1)


def test_certificate_reduces_mod_xn_minus_1():
    cert = WitnessCertificate(15, parse_poly("x^16"), 1)
    assert cert.poly == parse_poly("x")
    assert len(cert.coefficients()) == 15


@pytest.mark.parametrize("name", sorted(witness_registry()))
def test_registry_entries_verify(name):
    n, text, claimed = witness_registry()[name]
    cert = fixed_witness(name)
    assert cert.value == claimed == norm_profile(parse_poly(text), n).total


def test_fixed_values():
    assert fixed_witness("35_7cubed").value == 343
    assert fixed_witness("55_11cubed").value == 1331
    assert fixed_witness("55_5cubed").value == 125
    with pytest.raises(KeyError):
        fixed_witness("nope")


class TestCubes:
    @pytest.mark.parametrize("p,m,value", [(5, 1, 125), (5, -1, -125), (7, 2, 686), (11, 4, 1331 * 4)])
    def test_p3m(self, p, m, value):
        cert = witness_p3m(p, m)
        assert cert.n == 3 * p and cert.value == value

    def test_p3m_rejects(self):
        with pytest.raises(InvalidParameters):
            witness_p3m(5, 3)
        with pytest.raises(InvalidParameters):
            witness_p3m(9, 1)

    @pytest.mark.parametrize("p,m,variant,value", [(5, 1, "F3", 81), (5, 2, "F4", 54), (5, 7, "F3", 567), (7, -4, "F3", -324)])
    def test_3power(self, p, m, variant, value):
        assert witness_3power(p, m, variant).value == value

    def test_3power_rejects(self):
        with pytest.raises(InvalidParameters):
            witness_3power(5, 5, "F3")
        with pytest.raises(InvalidParameters):
            witness_3power(5, 3, "F4")
        with pytest.raises(InvalidParameters):
            witness_3power(5, 1, "F9")


class TestShift:
    def test_identity_shift(self):
        F = parse_poly("2 + x - x^4")
        cert = shift_construction(F, 15, 1, 0)
        assert cert.value == norm_profile(F, 15).total

    def test_multiplies_by_16(self):
        F = parse_poly("1 - x") + IntPoly([1] * 15)  # F(1) = 15, M = 225
        G = parse_poly("x")  # F(1) = 1, M = 1
        assert shift_construction(G, 15, 1, 1).value == 16
        assert shift_construction(F, 15, 1, 1).value == 225 * (15 + 15) // 15

    def test_7_power_family(self):
        F = fixed_witness("35_7cubed").poly
        assert F(1) == 7
        for m, t in ((1, 1), (2, 1), (3, 2)):
            k = m * 7**t - 5
            assert shift_construction(F, 35, k, 1).value == m * 7 ** (t + 3)

    def test_rejects_noncoprime_k(self):
        with pytest.raises(InvalidParameters):
            shift_construction(parse_poly("x"), 15, 3, 0)


class TestComposition:
    def test_negate(self):
        assert negate(witness_p3m(5, 1)).value == -125
        assert compose_witness([minus_x(15), witness_p3m(5, 1)], 15).value == -125

    def test_multiplicative(self):
        a = witness_good_form(canonical_form(find_norm_element(31), "first"), "three")
        assert compose_witness([a, cyclotomic_product(7, 15)], 15).value == 9 * 217

    def test_unit_absorbed(self):
        unit = WitnessCertificate(15, parse_poly("x^7"), 1)
        assert compose_witness([witness_p3m(5, 1), unit], 15).value == 125

    def test_modulus_mismatch(self):
        with pytest.raises(InvalidParameters):
            compose_witness([minus_x(15), minus_x(21)], 15)

    def test_cyclotomic_product(self):
        assert cyclotomic_product(-77, 15).value == -77
        with pytest.raises(InvalidParameters):
            cyclotomic_product(6, 15)

    def test_kn2(self):
        assert kn2_witness(-3, 15).value == -675


class TestSquaresTimesPrime:
    @pytest.mark.parametrize("p", [7, 11, 13, 37, 41, 43, 71, 97, 101, 103])
    def test_values(self, p):
        three, five = witness_3sq_5sq(p)
        assert (three.value, five.value) == (9 * p, 25 * p)

    def test_wrong_class(self):
        with pytest.raises(InvalidParameters):
            witness_3sq_5sq(31)

    def test_good_forms(self):
        for p in (31, 151):
            xi = find_norm_element(p)
            assert witness_good_form(canonical_form(xi, "first"), "three").value == 9 * p
            assert witness_good_form(canonical_form(xi, "second"), "five").value == 25 * p

    def test_good_form_two_to_the_fourth(self):
        xi = find_prime_element(2, 15)
        assert abs(xi.norm()) == 16
        assert witness_good_form(canonical_form(xi, "first"), "three").value == 144

    def test_bad_form_rejected(self):
        form = canonical_form(find_norm_element(61), "first")
        assert form.tag == "bad"
        with pytest.raises(InvalidParameters):
            witness_good_form(form, "three")

    def test_form_mismatch(self):
        form = canonical_form(find_norm_element(31), "first")
        with pytest.raises(InvalidParameters):
            witness_good_form(form, "five")
