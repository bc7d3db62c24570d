from hypothesis import given, settings
from hypothesis import strategies as st

from circdet.cyclonorm import CycloElement, norm_d, norm_profile
from circdet.goodbad import element_tag
from circdet.membership import decide_s15, divisibility_ok
from circdet.polyring import (
    IntPoly,
    parse_poly,
    poly_divmod,
    poly_mul_mod,
    reduce_cyclic,
    render_poly,
    resultant,
    resultant_sylvester,
)

coeffs = st.lists(st.integers(-6, 6), min_size=1, max_size=9)
polys = coeffs.map(IntPoly).filter(lambda P: not P.is_zero())
conductors = st.sampled_from([3, 4, 5, 7, 8, 9, 12, 15, 21, 35])


@given(polys)
def test_render_parse_round_trip(P):
    assert parse_poly(render_poly(P)) == P


@given(polys, coeffs)
def test_divmod_by_monic(F, low):
    D = IntPoly(low) + IntPoly.monomial(len(low))
    q, r = poly_divmod(F, D)
    assert q * D + r == F
    assert r.is_zero() or r.degree < D.degree


@given(polys, polys)
def test_resultant_matches_sylvester(F, G):
    assert resultant(F, G) == resultant_sylvester(F, G)


@given(polys, polys, st.integers(1, 20))
def test_mul_mod_commutes_with_reduction(F, G, n):
    assert poly_mul_mod(F, G, n) == reduce_cyclic(F * G, n)


@given(polys, polys, conductors)
def test_norm_multiplicative(F, G, d):
    assert norm_d(F * G, d) == norm_d(F, d) * norm_d(G, d)


@given(polys, conductors)
def test_matrix_and_resultant(F, d):
    assert norm_d(F, d, "matrix") == norm_d(F, d, "resultant")


@given(polys, st.integers(0, 14), st.sampled_from([2, 4, 7, 8, 11, 13, 14]))
def test_shift_and_conjugation_invariance(F, s, k):
    base = abs(norm_profile(F, 15).total)
    assert abs(norm_profile(IntPoly.monomial(s) * F, 15).total) == base
    assert norm_d(CycloElement.from_poly(F, 15).conjugate(k).to_poly(), 15) == norm_d(F, 15)


@settings(max_examples=60, deadline=None)
@given(coeffs.map(IntPoly), coeffs.map(IntPoly))
def test_tag_parity(F, G):
    a, b = CycloElement.from_poly(F, 15), CycloElement.from_poly(G, 15)
    if any(e.norm() % 3 == 0 or e.norm() % 5 == 0 for e in (a, b)):
        return
    ta, tb = element_tag(a), element_tag(b)
    assert element_tag(a * b) == ("bad" if ta == tb else "good")


@settings(max_examples=200, deadline=None)
@given(st.integers(-(10**6), 10**6))
def test_s15_verdicts_are_certified(v):
    verdict = decide_s15(v)
    if verdict.member:
        assert verdict.witness.value == v
        assert divisibility_ok(15, v)
    elif verdict.member is False:
        assert verdict.reason in ("div_violation", "no_qualifying_prime")
