import pytest

from circdet.cyclonorm import (
    UNIT_TABLES,
    CycloElement,
    UnknownConductorError,
    circulant_det,
    is_reciprocal,
    is_skew_reciprocal,
    norm_d,
    norm_profile,
    reduce_mod_cyclotomic,
    unit_check,
    verify_replacements,
    verify_unit_table,
)
from circdet.intmat import det
from circdet.polyring import IntPoly, cyclotomic, parse_poly


def circulant(F, n):
    c = [0] * n
    for i, v in enumerate(F.coeffs):
        c[i % n] += v
    return [[c[(j - i) % n] for j in range(n)] for i in range(n)]


class TestElements:
    def test_reduce_x15(self):
        assert reduce_mod_cyclotomic(parse_poly("x^15"), 15) == CycloElement.one(15)

    def test_reduce_x2_mod_phi3(self):
        assert reduce_mod_cyclotomic(parse_poly("x^2"), 3).coords == (-1, -1)

    def test_phi5_residue_multiplies_back(self):
        e = reduce_mod_cyclotomic(cyclotomic(5), 15)
        assert not e.is_zero()
        assert (e * CycloElement.one(15)) == e
        assert e.norm() == 81

    def test_conjugate_preserves_norm(self):
        e = CycloElement.from_poly("2 - x + x^3", 15)
        for k in (2, 4, 7, 8, 11, 13, 14):
            assert e.conjugate(k).norm() == e.norm()

    def test_unit_inverse(self):
        u = CycloElement.from_poly("x + 1", 15)
        assert u * u.inverse() == CycloElement.one(15)

    def test_exact_div_rejects(self):
        with pytest.raises(ValueError):
            CycloElement.one(15).exact_div(CycloElement.from_poly("2", 15))

    def test_wrong_length(self):
        with pytest.raises(ValueError):
            CycloElement(15, (1, 2))


class TestNorms:
    def test_norm_d_small(self):
        assert norm_d(parse_poly("x - 1"), 3) == 3
        assert norm_d(parse_poly("x + 2"), 5) == 11  # Phi_5(-2)
        assert norm_d(parse_poly("x"), 1) == 1

    def test_zero_residue(self):
        assert norm_d(cyclotomic(15), 15) == 0

    @pytest.mark.parametrize("method", ["matrix", "resultant", "auto"])
    def test_methods_agree(self, method):
        F = parse_poly("3 - x + 2x^4 - x^9 + x^11")
        for d in (3, 5, 7, 15, 29, 35, 47, 97):
            assert norm_d(F, d, method) == norm_d(F, d, "resultant")

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            norm_d(parse_poly("x"), 5, "guess")

    def test_fixed_profiles(self):
        assert norm_profile(parse_poly("-x"), 15).total == -1
        assert norm_profile(parse_poly("1 - x") + IntPoly([1] * 15), 15).total == 225
        assert norm_profile(parse_poly("1 + x^3 + x^5 + x^7 + x^10"), 35).total == 125

    def test_profile_matches_circulant(self):
        F = parse_poly("1 + 2x - x^3 + x^5")
        for n in (4, 6, 9, 15):
            assert circulant_det(F, n) == det(circulant(F, n))

    def test_profile_keys(self):
        prof = norm_profile(parse_poly("2 + x"), 15)
        assert list(prof.norms) == [1, 3, 5, 15]
        assert prof.as_dict()["norms"]["15"] == prof.norms[15]


class TestUnits:
    def test_reciprocity(self):
        assert is_reciprocal(parse_poly("x + 1"))
        assert is_skew_reciprocal(parse_poly("x - 1"))
        assert not is_reciprocal(parse_poly("x + 2"))

    def test_unit_check(self):
        assert unit_check(parse_poly("x + 1"), 15)["is_unit"]
        info = unit_check(parse_poly("x - 1"), 15)
        assert info["is_unit"] and info["is_skew_reciprocal"]
        assert not unit_check(parse_poly("x - 1"), 3)["is_unit"]

    def test_table_rows(self):
        names = {r["name"] for r in verify_unit_table(15)}
        assert {"x - 1", "x + 1", "x^3 + 1"} <= names
        assert "x + 1" in {r["name"] for r in verify_unit_table(5)}
        assert {"Phi5", "Phi7", "Phi11"} <= {r["name"] for r in verify_unit_table(39)}

    @pytest.mark.parametrize("n", sorted(UNIT_TABLES))
    def test_all_tables_pass(self, n):
        assert all(r["ok"] for r in verify_unit_table(n))

    def test_x_minus_1_not_unit_for_prime_conductor(self):
        assert norm_d(parse_poly("x - 1"), 5) == 5

    def test_unknown_conductor(self):
        with pytest.raises(UnknownConductorError):
            verify_unit_table(17)

    @pytest.mark.parametrize("n", sorted(UNIT_TABLES))
    def test_replacement_identities(self, n):
        assert all(verify_replacements(n))
