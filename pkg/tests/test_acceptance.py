"""One test per reproduction criterion; each prints a PASS/FAIL line."""

import pytest

from circdet.acceptance import CHECKS, reference_tags, run_check

# frozen reference lists of p = 1 mod 15, p <= 5000
GOOD = (
    31, 151, 181, 421, 601, 661, 691, 751, 811, 1051, 1171, 1231, 1291, 1321, 1531, 1621, 1741,
    1831, 1861, 2221, 2281, 2371, 2521, 2551, 2971, 3061, 3181, 3271, 3301, 3361, 3391, 3511,
    3691, 4051, 4111, 4201, 4231, 4561, 4621, 4831, 4951,
)
BAD = (
    61, 211, 241, 271, 331, 541, 571, 631, 991, 1021, 1201, 1381, 1471, 1801, 1951, 2011, 2131,
    2161, 2251, 2311, 2341, 2671, 2791, 2851, 3001, 3121, 3331, 3541, 3571, 3631, 3931, 4021,
    4261, 4441, 4591, 4651, 4801, 4861,
)

RESULTS = {}


def _run(number, **kwargs):
    res = run_check(number, **kwargs)
    RESULTS[number] = res.line()
    print(res.line())
    for extra in res.detail[1:]:
        print("   ", extra)
    assert res.ok, res.detail
    assert res.within_limit, f"took {res.seconds:.1f}s, limit {res.limit}s"
    return res


def test_reference_lists_frozen():
    tags = reference_tags()
    assert len(GOOD) == 41 and len(BAD) == 38
    assert tags == dict(sorted({**{p: "good" for p in GOOD}, **{p: "bad" for p in BAD}}.items()))


def test_criterion_1_fixed_witnesses():
    _run(1)


def test_criterion_2_cube_families():
    _run(2)


def test_criterion_3_nine_and_twentyfive_p():
    _run(3)


def test_criterion_4_good_bad_lists():
    _run(4)


def test_criterion_5_good_prime_witnesses():
    _run(5)


def test_criterion_6_prime_power_tags():
    _run(6)


@pytest.mark.slow
def test_criterion_7_exhaustive_search():
    _run(7)


def test_criterion_8_property_suites():
    _run(8)


def test_criterion_9_unit_tables():
    _run(9)


def test_every_criterion_has_a_test():
    assert sorted(CHECKS) == list(range(1, 10))
