"""Exhaustive enumeration of circulant determinants over small coefficient boxes.

Coefficient vectors are enumerated up to rotation and reversal (|M_n| is
invariant under both), i.e. one bracelet per orbit, in lexicographic order.
Each record's norms come from batched integer determinants; the total is
re-derived independently as Res(x^n - 1, F).
"""

from __future__ import annotations

import json
import multiprocessing as mp
import os
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import prod
from typing import IO, Iterable, Iterator

import numpy as np

from .cyclonorm import _power_table
from .polyring import IntPoly, cyclotomic, divisors, euler_phi, resultant_coeffs

WORKERS_ENV = "CIRCDET_WORKERS"
DEFAULT_BUDGET = 2_000_000
FORBIDDEN_15 = frozenset({3, 5, 9, 15, 25, 45, 75})
_SHARD_DEPTH = 3


class BudgetExceeded(RuntimeError):
    pass


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# bracelets


def _is_bracelet(a: tuple[int, ...]) -> bool:
    """a is a necklace (least rotation); check it is also <= every rotation of its reversal."""
    r = a[::-1]
    n = len(a)
    for i in range(n):
        if r[i:] + r[:i] < a:
            return False
    return True


def _fkm(a: list[int], t: int, p: int, n: int, k: int, out: list) -> None:
    if t > n:
        if n % p == 0:
            vec = tuple(a[1:])
            if _is_bracelet(vec):
                out.append(vec)
        return
    a[t] = a[t - p]
    _fkm(a, t + 1, p, n, k, out)
    for j in range(a[t - p] + 1, k):
        a[t] = j
        _fkm(a, t + 1, t, n, k, out)


def _shard_states(n: int, k: int) -> list[tuple[tuple[int, ...], int]]:
    """Recursion states (prefix, p) after fixing the first few entries, in FKM order."""
    depth = min(_SHARD_DEPTH, n)
    states = []

    def walk(a: list[int], t: int, p: int) -> None:
        if t > depth:
            states.append((tuple(a[1 : depth + 1]), p))
            return
        a[t] = a[t - p]
        walk(a, t + 1, p)
        for j in range(a[t - p] + 1, k):
            a[t] = j
            walk(a, t + 1, t)

    walk([0] * (n + 1), 1, 1)
    return states


def shard_bracelets(n: int, k: int, state: tuple[tuple[int, ...], int]) -> list[tuple[int, ...]]:
    prefix, p = state
    a = [0] * (n + 1)
    a[1 : len(prefix) + 1] = prefix
    out: list[tuple[int, ...]] = []
    _fkm(a, len(prefix) + 1, p, n, k, out)
    return out


def bracelets(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Lexicographically least representatives of k-ary bracelets of length n."""
    for state in _shard_states(n, k):
        yield from shard_bracelets(n, k, state)


# ---------------------------------------------------------------------------
# batched exact norms


def batch_det(a: np.ndarray) -> np.ndarray:
    """Determinants of a stack of integer matrices by Bareiss elimination, per-matrix pivoting."""
    a = a.copy()
    B, n, _ = a.shape
    if n == 0:
        return np.ones(B, dtype=a.dtype)
    sign = np.ones(B, dtype=a.dtype)
    prev = np.ones(B, dtype=a.dtype)
    singular = np.zeros(B, dtype=bool)
    idx = np.arange(B)
    for k in range(n - 1):
        col = a[:, k:, k] != 0
        has = col.any(axis=1)
        singular |= ~has
        piv = np.argmax(col, axis=1) + k
        swap = (piv != k) & has
        if swap.any():
            rows = idx[swap]
            saved = a[rows, k].copy()
            a[rows, k] = a[rows, piv[swap]]
            a[rows, piv[swap]] = saved
            sign[swap] *= -1
        akk = a[:, k, k].copy()
        akk[~has] = 1
        sub = a[:, k + 1 :, k + 1 :] * akk[:, None, None] - a[:, k + 1 :, k : k + 1] * a[:, k : k + 1, k + 1 :]
        a[:, k + 1 :, k + 1 :] = sub // prev[:, None, None]
        prev = akk
    out = sign * a[:, n - 1, n - 1]
    out[singular] = 0
    return out


@lru_cache(maxsize=None)
def _reduction_matrix(n: int, d: int) -> np.ndarray:
    """n x phi(d): row i = coordinates of x^i mod Phi_d."""
    return np.array(_power_table(d, max(n, 2 * euler_phi(d)))[:n], dtype=np.int64)


@lru_cache(maxsize=None)
def _shift_matrices(d: int) -> np.ndarray:
    """Stack T_j (j < phi(d)) of multiplication by x^j on the power basis of Z[w_d]."""
    m = euler_phi(d)
    table = np.array(_power_table(d, 2 * m), dtype=np.int64)
    T = np.zeros((m, m, m), dtype=np.int64)
    for j in range(m):
        for i in range(m):
            T[j, :, i] = table[i + j]
    return T


_INT64_SAFE = 2.0**62


def batch_norms(vectors: np.ndarray, d: int) -> list[int]:
    """Exact N_d for each row of an integer coefficient matrix."""
    if d == 1:
        return [int(v) for v in vectors.sum(axis=1)]
    coords = vectors.astype(np.int64) @ _reduction_matrix(vectors.shape[1], d)
    T = _shift_matrices(d)
    mats = np.einsum("jab,nb->naj", T, coords)
    # Bareiss intermediates are products of two minors, each bounded by Hadamard.
    row_norms = np.sqrt((mats.astype(float) ** 2).sum(axis=2)).max(axis=1)
    bound = np.maximum(row_norms, 1.0) ** mats.shape[1]
    safe = bound * bound < _INT64_SAFE
    out = np.zeros(len(vectors), dtype=object)
    if safe.any():
        out[safe] = batch_det(mats[safe]).astype(object)
    if (~safe).any():
        out[~safe] = batch_det(mats[~safe].astype(object))
    return [int(v) for v in out]


# ---------------------------------------------------------------------------
# records


@dataclass(frozen=True)
class SearchRecord:
    n: int
    coeffs: tuple[int, ...]
    value: int
    norms: dict = field(hash=False)

    def as_dict(self) -> dict:
        return {"n": self.n, "coeffs": list(self.coeffs), "value": self.value,
                "norms": {str(d): v for d, v in self.norms.items()}}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "SearchRecord":
        obj = json.loads(line)
        return cls(obj["n"], tuple(obj["coeffs"]), obj["value"], {int(k): v for k, v in obj["norms"].items()})


class OracleMismatch(RuntimeError):
    pass


def _records_for(n: int, vecs: list[tuple[int, ...]], verify: bool) -> list[SearchRecord]:
    if not vecs:
        return []
    V = np.array(vecs, dtype=np.int64)
    ds = divisors(n)
    cols = {d: batch_norms(V, d) for d in ds}
    xn1 = [-1] + [0] * (n - 1) + [1]
    out = []
    for r, vec in enumerate(vecs):
        norms = {d: cols[d][r] for d in ds}
        value = prod(norms.values())
        if verify:
            coeffs = list(IntPoly(vec).coeffs)
            check = resultant_coeffs(xn1, coeffs) if coeffs else 0
            if check != value:
                raise OracleMismatch(f"{vec}: matrix path {value}, resultant path {check}")
        out.append(SearchRecord(n, vec, value, norms))
    return out


def _shard_worker(args) -> list[SearchRecord]:
    n, b, state, verify = args
    k = 2 * b + 1
    vecs = [tuple(c - b for c in v) for v in shard_bracelets(n, k, state)]
    return _records_for(n, vecs, verify)


@dataclass
class SearchSummary:
    n: int
    bound: int
    records: int = 0
    partial: bool = False
    distinct_values: int = 0
    shards: int = 0

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def iter_records(n: int, b: int, budget: int = DEFAULT_BUDGET, workers: int | None = None,
                 verify: bool = True, summary: SearchSummary | None = None) -> Iterator[SearchRecord]:
    """Yield one record per bracelet in lexicographic order (entries shifted to [-b, b]).

    Stops after ``budget`` records and marks the summary partial.
    """
    if n < 1 or b < 0:
        raise ValueError("need n >= 1 and b >= 0")
    summary = summary or SearchSummary(n, b)
    k = 2 * b + 1
    states = _shard_states(n, k)
    summary.shards = len(states)
    tasks = [(n, b, s, verify) for s in states]
    workers = workers or default_workers()
    seen = set()

    def emit(batch):
        for rec in batch:
            if summary.records >= budget:
                summary.partial = True
                return False
            summary.records += 1
            seen.add(rec.value)
            summary.distinct_values = len(seen)
            yield rec
        return True

    if workers > 1:
        with mp.get_context("spawn").Pool(workers) as pool:
            for batch in pool.imap(_shard_worker, tasks):
                done = yield from emit(batch)
                if done is False:
                    pool.terminate()
                    return
    else:
        for t in tasks:
            done = yield from emit(_shard_worker(t))
            if done is False:
                return


def enumerate_values(n: int, b: int, out: IO[str] | None = None, budget: int = DEFAULT_BUDGET,
                     workers: int | None = None, verify: bool = True) -> SearchSummary:
    """Write NDJSON records to ``out`` (if given) and return the summary."""
    summary = SearchSummary(n, b)
    for rec in iter_records(n, b, budget, workers, verify, summary):
        if out is not None:
            out.write(rec.to_json() + "\n")
    return summary


# ---------------------------------------------------------------------------
# reconciliation


@dataclass
class ConsistencyReport:
    n: int
    records: int = 0
    value_counts: Counter = field(default_factory=Counter)
    divisibility_violations: list = field(default_factory=list)
    rejected: list = field(default_factory=list)
    forbidden_hits: list = field(default_factory=list)
    oracle_mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.divisibility_violations or self.rejected or self.forbidden_hits or self.oracle_mismatches)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "records": self.records,
            "distinct_values": len(self.value_counts),
            "divisibility_violations": self.divisibility_violations,
            "rejected": self.rejected,
            "forbidden_hits": self.forbidden_hits,
            "oracle_mismatches": self.oracle_mismatches,
            "ok": self.ok,
        }


def _membership_check(n: int):
    from .membership import decide_s15, decide_sp, is_probable_prime

    if n == 15:
        return lambda v: decide_s15(v).member
    if n >= 3 and is_probable_prime(n):
        return lambda v: decide_sp(v, n).member
    if n % 2 == 0 and n >= 6 and is_probable_prime(n // 2):
        return lambda v: decide_sp(v, n // 2, doubled=True).member
    return None


def consistency_report(records: Iterable[SearchRecord], n: int) -> ConsistencyReport:
    """Reconcile enumerated values with the divisibility law and the membership deciders."""
    from .membership import divisibility_ok

    report = ConsistencyReport(n)
    decide = _membership_check(n)
    verdicts: dict[int, bool | None] = {}
    for rec in records:
        report.records += 1
        v = rec.value
        report.value_counts[v] += 1
        if prod(rec.norms.values()) != v:
            report.oracle_mismatches.append(rec.as_dict())
        if report.value_counts[v] > 1:
            continue
        if not divisibility_ok(n, v):
            report.divisibility_violations.append(rec.as_dict())
        if n == 15 and abs(v) in FORBIDDEN_15:
            report.forbidden_hits.append(rec.as_dict())
        if decide is not None:
            verdicts[v] = decide(v)
            if verdicts[v] is not True:
                report.rejected.append(rec.as_dict())
    return report


# ---------------------------------------------------------------------------
# direct search for the two canonical forms


def _roots15() -> np.ndarray:
    ks = np.array([1, 2, 4, 7])
    return np.exp(2j * np.pi * ks / 15)


def bounded_form_search(p: int, bound: int = 2, form: str = "first") -> tuple[str, str, int, int, IntPoly] | None:
    """First (tag, form, sign, j, g) with N_15 of the form equal to p, deg g <= 6.

    Order: B = 1 before B = x - 1, sign + before -, j ascending, g lexicographic.
    """
    from .cyclonorm import norm_d
    from .polyring import parse_poly

    if p % 15 != 1:
        raise ValueError(f"{p} is not 1 mod 15")
    z = _roots15()
    powers = np.power.outer(z, np.arange(15))  # 4 x 15
    base_fixed, moving = (parse_poly("x^5 - 1"), cyclotomic(3)) if form == "first" else (parse_poly("x^3 - 1"), cyclotomic(5))
    modulus = parse_poly("x - 1") * cyclotomic(3) * cyclotomic(5)

    def ev(P: IntPoly) -> np.ndarray:
        c = np.zeros(15)
        for i, v in enumerate(P.coeffs):
            c[i % 15] += v
        return powers @ c

    grid = np.array(np.meshgrid(*[np.arange(-bound, bound + 1)] * 7, indexing="ij")).reshape(7, -1).T
    g_vals = (grid @ powers[:, :7].T) * ev(modulus)[None, :]
    for tag, B in (("good", IntPoly([1])), ("bad", parse_poly("x - 1"))):
        for sign in (1, -1):
            for j in range(15):
                head = base_fixed + sign * IntPoly.monomial(j) * moving * B
                vals = g_vals + ev(head)[None, :]
                approx = np.prod(np.abs(vals) ** 2, axis=1)
                for h in np.nonzero(np.abs(approx - p) < 0.5)[0]:
                    g = IntPoly(int(c) for c in grid[h])
                    if norm_d(head + modulus * g, 15) == p:
                        return tag, form, sign, j, g
    return None
