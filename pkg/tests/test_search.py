import io
import itertools
import random

import numpy as np
import pytest

from circdet.cyclonorm import circulant_det
from circdet.intmat import det
from circdet.membership import decide_sp
from circdet.polyring import IntPoly
from circdet.search import (
    SearchRecord,
    _is_bracelet,
    batch_det,
    batch_norms,
    bounded_form_search,
    bracelets,
    consistency_report,
    enumerate_values,
    iter_records,
)


def canonical(vec):
    n = len(vec)
    rots = [tuple(vec[i:] + vec[:i]) for i in range(n)]
    rev = list(reversed(vec))
    rots += [tuple(rev[i:] + rev[:i]) for i in range(n)]
    return min(rots)


class TestBracelets:
    @pytest.mark.parametrize("n,k,count", [(4, 2, 6), (5, 3, 39), (6, 2, 13), (6, 3, 92)])
    def test_counts(self, n, k, count):
        assert sum(1 for _ in bracelets(n, k)) == count

    @pytest.mark.parametrize("n,k", [(5, 3), (6, 2), (7, 3)])
    def test_one_per_orbit(self, n, k):
        reps = list(bracelets(n, k))
        assert reps == sorted(reps)
        orbits = {canonical(list(v)) for v in itertools.product(range(k), repeat=n)}
        assert set(reps) == orbits

    def test_is_bracelet(self):
        assert _is_bracelet((0, 0, 1, 1, 2))
        assert not _is_bracelet((0, 2, 1, 1))


class TestBatchNorms:
    def test_batch_det_matches(self):
        rng = np.random.default_rng(5)
        mats = rng.integers(-3, 4, size=(500, 6, 6))
        mats[::7, 2] = 0  # singular cases
        mats[::11, :, 1] = mats[::11, :, 0]
        got = batch_det(mats)
        for m, d in zip(mats, got):
            assert det(m.tolist()) == int(d)

    def test_batch_norms_match_scalar(self):
        rng = random.Random(3)
        vecs = np.array([[rng.randint(-2, 2) for _ in range(15)] for _ in range(200)])
        from circdet.cyclonorm import norm_d

        for d in (1, 3, 5, 15):
            got = batch_norms(vecs, d)
            for v, g in zip(vecs, got):
                assert g == norm_d(IntPoly(int(c) for c in v), d)

    def test_large_entries_fall_back(self):
        vecs = np.array([[10**5, -(10**5), 3, 1, 0, 0, 7]], dtype=np.int64)
        from circdet.cyclonorm import norm_d

        assert batch_norms(vecs, 7)[0] == norm_d(IntPoly(int(c) for c in vecs[0]), 7)


class TestEnumeration:
    def test_small_n3(self):
        recs = list(iter_records(3, 2))
        for r in recs:
            assert r.value == circulant_det(IntPoly(r.coeffs), 3)
            assert decide_sp(r.value, 3).member
        assert consistency_report(recs, 3).ok

    def test_symmetry_invariance(self):
        rng = random.Random(11)
        for _ in range(100):
            vec = [rng.randint(-1, 1) for _ in range(9)]
            base = abs(circulant_det(IntPoly(vec), 9))
            s = rng.randrange(9)
            rot = vec[s:] + vec[:s]
            assert abs(circulant_det(IntPoly(rot), 9)) == base
            assert abs(circulant_det(IntPoly(rot[::-1]), 9)) == base

    def test_ndjson_round_trip(self):
        buf = io.StringIO()
        summary = enumerate_values(5, 1, buf)
        lines = buf.getvalue().splitlines()
        assert len(lines) == summary.records and not summary.partial
        recs = [SearchRecord.from_json(line) for line in lines]
        assert recs[0].to_json() == lines[0]
        assert [r.coeffs for r in recs] == sorted(r.coeffs for r in recs)

    def test_deterministic(self):
        a, b = io.StringIO(), io.StringIO()
        enumerate_values(6, 1, a)
        enumerate_values(6, 1, b)
        assert a.getvalue() == b.getvalue()

    def test_parallel_matches_serial(self):
        a, b = io.StringIO(), io.StringIO()
        enumerate_values(7, 1, a, workers=1)
        enumerate_values(7, 1, b, workers=2)
        assert a.getvalue() == b.getvalue()

    def test_budget(self):
        buf = io.StringIO()
        summary = enumerate_values(9, 1, buf, budget=50)
        assert summary.partial and summary.records == 50
        assert len(buf.getvalue().splitlines()) == 50

    def test_invalid(self):
        with pytest.raises(ValueError):
            enumerate_values(0, 1)


class TestConsistency:
    def test_empty(self):
        rep = consistency_report([], 15)
        assert rep.ok and rep.records == 0 and rep.as_dict()["distinct_values"] == 0

    def test_planted_fault(self):
        fake = SearchRecord(15, (0,) * 15, 9, {1: 9, 3: 1, 5: 1, 15: 1})
        rep = consistency_report([fake], 15)
        assert not rep.ok
        assert rep.forbidden_hits and rep.rejected

    def test_planted_divisibility(self):
        fake = SearchRecord(15, (0,) * 15, 45, {1: 45, 3: 1, 5: 1, 15: 1})
        assert consistency_report([fake], 15).divisibility_violations

    def test_planted_oracle_mismatch(self):
        fake = SearchRecord(15, (0,) * 15, 7, {1: 2, 3: 1, 5: 1, 15: 1})
        assert consistency_report([fake], 15).oracle_mismatches

    def test_prefix_of_15(self):
        recs = list(iter_records(15, 1, budget=3000))
        rep = consistency_report(recs, 15)
        assert rep.ok


class TestFormSearch:
    def test_31_good(self):
        hit = bounded_form_search(31, 3)
        assert hit is not None and hit[0] == "good"

    def test_61_not_good(self):
        hit = bounded_form_search(61, 2)
        assert hit is None or hit[0] == "bad"

    def test_residue_gate(self):
        with pytest.raises(ValueError):
            bounded_form_search(7, 2)

    def test_agrees_with_classifier(self):
        from circdet.goodbad import classify_prime

        for p in (31, 61, 151, 181, 211, 241, 271, 331):
            hit = bounded_form_search(p, 2)
            if hit is not None:
                assert hit[0] == classify_prime(p)
