import pytest

from circdet.cyclonorm import norm_d
from circdet.numberfield import (
    ResidueClassError,
    canonical_rep_mod15,
    eisenstein_rep,
    find_norm_element,
    find_prime_element,
    half_integer_power,
    norm3,
    quad_feasibility,
    rep_norm5,
    splitting_data,
)
from circdet.polyring import IntPoly


class TestEisenstein:
    @pytest.mark.parametrize("p,rep", [(7, (3, 1)), (13, (4, 1)), (31, (6, 1))])
    def test_rule(self, p, rep):
        assert eisenstein_rep(p) == rep
        assert norm3(*rep) == p

    def test_conjugates_have_same_norm(self):
        # (4, 3) and (6, 5) are the conjugate representations of 13 and 31
        assert norm3(4, 3) == 13 and norm3(6, 5) == 31

    def test_wrong_class(self):
        with pytest.raises(ResidueClassError):
            eisenstein_rep(11)

    def test_canonical_31(self):
        rep = canonical_rep_mod15(31)
        assert (rep.a, rep.b) == (1, 0)
        assert norm_d(rep.first_poly(), 3) == 31

    def test_canonical_7(self):
        rep = canonical_rep_mod15(7)
        assert (rep.a, rep.b, rep.A, rep.B) == (3, 1, 0, 0)
        assert (rep.c, rep.d) == (2, 3)
        assert norm_d(rep.second_poly(), 3) == 7

    def test_canonical_19(self):
        rep = canonical_rep_mod15(19)
        assert (rep.a, rep.b) == (2, 0) and norm_d(rep.first_poly(), 3) == 19

    def test_canonical_all_small(self):
        for p in (7, 13, 19, 31, 37, 43, 61, 67, 73, 79, 97, 103, 109, 127, 139, 151, 157, 163):
            rep = canonical_rep_mod15(p)
            assert norm_d(rep.first_poly(), 3) == p


class TestNorm5:
    def test_eleven(self):
        rep = rep_norm5(11)
        assert rep.sign == 1 and rep.g == IntPoly()

    @pytest.mark.parametrize("p", [41, 71, 101, 131, 191, 251])
    def test_verified(self, p):
        rep = rep_norm5(p)
        assert norm_d(rep.element(), 5) == p
        assert norm_d(rep.element_5p(), 5) == 5 * p

    def test_wrong_class(self):
        with pytest.raises(ResidueClassError):
            rep_norm5(31)


class TestLattice:
    @pytest.mark.parametrize("p", [31, 61, 151])
    def test_norm_elements(self, p):
        assert abs(find_norm_element(p).norm()) == p

    def test_norm_element_class(self):
        with pytest.raises(ResidueClassError):
            find_norm_element(7)

    @pytest.mark.parametrize("p,e", [(2, 4), (7, 4), (11, 2), (19, 2), (29, 2), (17, 4)])
    def test_prime_elements(self, p, e):
        assert abs(find_prime_element(p, 15).norm()) == p**e


class TestSplitting:
    @pytest.mark.parametrize("p,f,count", [(31, 1, 8), (11, 2, 4), (2, 4, 2), (19, 2, 4), (29, 2, 4), (7, 4, 2)])
    def test_data(self, p, f, count):
        s = splitting_data(p)
        assert (s.f, s.count, s.norm_exponent) == (f, count, f)

    @pytest.mark.parametrize("p", [3, 5])
    def test_ramified(self, p):
        with pytest.raises(ValueError, match="ramifies"):
            splitting_data(p)


class TestMisc:
    def test_quad_feasibility(self):
        assert quad_feasibility(7, 5) is False
        assert quad_feasibility(3, 5) is False
        with pytest.raises(ValueError):
            quad_feasibility(7, 3)

    def test_half_integer_power(self):
        assert half_integer_power(1) == (3, 1)
        assert half_integer_power(2) == (7, 3)
        assert half_integer_power(4) == (47, 21)
        for k in range(1, 30):
            a, b = half_integer_power(k)
            assert a * a - 5 * b * b == 4
