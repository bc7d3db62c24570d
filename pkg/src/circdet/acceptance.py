"""The nine reproduction checks, shared by the test suite and ``circdet verify-paper``."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from math import gcd
from typing import Callable

from .constructions import fixed_witness, witness_3power, witness_3sq_5sq, witness_good_form, witness_p3m
from .cyclonorm import UNIT_TABLES, CycloElement, norm_d, norm_profile, verify_unit_table
from .goodbad import canonical_form, classify_element, classify_prime, element_tag, prime_power_tag
from .intmat import det
from .membership import is_probable_prime
from .numberfield import find_norm_element, find_prime_element, half_integer_power
from .polyring import IntPoly, cyclotomic, divisors, euler_phi, parse_poly, resultant
from .search import SearchSummary, consistency_report, iter_records


@dataclass
class CheckResult:
    number: int
    name: str
    ok: bool
    seconds: float = 0.0
    limit: float | None = None
    detail: list[str] = field(default_factory=list)

    @property
    def within_limit(self) -> bool:
        return self.limit is None or self.seconds < self.limit

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        limit = f" (limit {self.limit:.0f}s)" if self.limit else ""
        note = f" : {self.detail[0]}" if self.detail else ""
        return f"criterion {self.number} [{self.name}]: {status} in {self.seconds:.2f}s{limit}{note}"

    def as_dict(self) -> dict:
        return {"criterion": self.number, "name": self.name, "ok": self.ok, "seconds": round(self.seconds, 3),
                "limit": self.limit, "detail": self.detail}


def _odd_primes(lo: int, hi: int) -> list[int]:
    return [p for p in range(lo, hi + 1) if is_probable_prime(p)]


@lru_cache(maxsize=None)
def reference_tags() -> dict[int, str]:
    text = resources.files("circdet").joinpath("data/reference_tags.txt").read_text()
    tags = {}
    for line in text.splitlines():
        if line and not line.startswith("#"):
            tag, primes = line.split("\t")
            tags.update({int(p): tag for p in primes.split()})
    return dict(sorted(tags.items()))


# ---------------------------------------------------------------------------


FIXED_EXPECTED = (
    ("15_minus_x", 15, "-x", -1),
    ("15_kn2", 15, "1 - x + (x^15 - 1)/(x - 1)", 225),
    ("35_5cubed", 35, "1 + x^3 + x^5 + x^7 + x^10", 125),
    ("55_5cubed", 55, "1 + x^3 + x^5 + x^7 + x^10", 125),
    ("35_7cubed", 35, "(x^9 - 1)/(x - 1) - x^3 (x^2 + 1)", 343),
    ("55_11cubed", 55, "x^14 + 1 + x^3 (x^9 - 1)/(x - 1)", 1331),
)


def _fixed_polys() -> dict[str, IntPoly]:
    g = lambda k: IntPoly([1] * k)  # noqa: E731
    x = parse_poly("x")
    return {
        "15_minus_x": -x,
        "15_kn2": parse_poly("1 - x") + g(15),
        "35_5cubed": parse_poly("1 + x^3 + x^5 + x^7 + x^10"),
        "55_5cubed": parse_poly("1 + x^3 + x^5 + x^7 + x^10"),
        "35_7cubed": g(9) - parse_poly("x^3") * parse_poly("x^2 + 1"),
        "55_11cubed": parse_poly("x^14 + 1") + parse_poly("x^3") * g(9),
    }


def check_fixed_witnesses() -> tuple[list[str], str]:
    errors = []
    polys = _fixed_polys()
    for name, n, text, expected in FIXED_EXPECTED:
        direct = norm_profile(polys[name], n).total
        cert = fixed_witness(name)
        if direct != expected:
            errors.append(f"M_{n}({text}) = {direct}, expected {expected}")
        if cert.poly != polys[name] or cert.value != expected:
            errors.append(f"registry entry {name} disagrees")
    return errors, f"{len(FIXED_EXPECTED)} identities"


def _cube_cases(p: int, m: int):
    if m % 3:
        yield "p3m", witness_p3m, (p, m), p**3 * m
    if m % p:
        yield "F3", witness_3power, (p, m, "F3"), 81 * m
    if gcd(m, 3 * p) == 1:
        yield "F4", witness_3power, (p, m, "F4"), 27 * m


def check_cube_families(p_max: int = 50, m_max: int = 10) -> tuple[list[str], str]:
    errors = []
    count = 0
    for p in _odd_primes(5, p_max - 1):
        for m in range(-m_max, m_max + 1):
            if m == 0:
                continue
            for label, build, args, expected in _cube_cases(p, m):
                count += 1
                try:
                    cert = build(*args)
                except Exception as exc:  # a refused certificate is a finding
                    errors.append(f"{label} p={p} m={m}: {exc}")
                    continue
                if cert.n != 3 * p or cert.value != expected:
                    errors.append(f"{label} p={p} m={m}: got {cert.value}, expected {expected}")
    return errors, f"{count} certificates"


def check_3sq_5sq(p_max: int = 1000) -> tuple[list[str], str]:
    errors = []
    primes = [p for p in _odd_primes(7, p_max) if p % 15 in (7, 11, 13)]
    for p in primes:
        try:
            f3, f5 = witness_3sq_5sq(p)
        except Exception as exc:
            errors.append(f"p={p}: {exc}")
            continue
        if (f3.n, f3.value, f5.n, f5.value) != (15, 9 * p, 15, 25 * p):
            errors.append(f"p={p}: got {f3.value}, {f5.value}")
    return errors, f"{len(primes)} primes, {2 * len(primes)} certificates"


def check_prime_tags(p_max: int = 5000) -> tuple[list[str], str]:
    reference = reference_tags()
    errors = []
    unlisted = []
    for p in _odd_primes(31, p_max):
        if p % 15 != 1:
            continue
        tag = classify_prime(p)
        if p not in reference:
            unlisted.append(f"{p} ({tag})")
        elif tag != reference[p]:
            errors.append(f"p={p}: computed {tag}, listed {reference[p]}")
    good = sum(t == "good" for t in reference.values())
    info = f"{good} good and {len(reference) - good} bad listed primes checked"
    if unlisted:
        info += "; unlisted: " + ", ".join(unlisted)
    return errors, info


def check_good_witnesses() -> tuple[list[str], str]:
    errors = []
    good = [p for p, t in reference_tags().items() if t == "good"]
    for p in good:
        xi = find_norm_element(p)
        for form, which, factor in (("first", "three", 9), ("second", "five", 25)):
            try:
                cert = witness_good_form(canonical_form(xi, form), which)
            except Exception as exc:
                errors.append(f"p={p} {form}: {exc}")
                continue
            if cert.value != factor * p:
                errors.append(f"p={p} {form}: got {cert.value}")
    return errors, f"{len(good)} primes, {2 * len(good)} certificates"


def _lemma_tag(p: int) -> tuple[int, str] | None:
    if p % 5 in (2, 3):
        return 4, "good"
    if p % 15 == 4:
        return 2, "good"
    if p % 15 == 14:
        return 2, "bad"
    return None


def check_prime_power_tags(p_max: int = 1000, verify_max: int = 100) -> tuple[list[str], str]:
    errors = []
    checked = confirmed = 0
    for p in _odd_primes(2, p_max):
        if p in (3, 5):
            continue
        expected = _lemma_tag(p)
        if expected is None:
            continue
        checked += 1
        got = prime_power_tag(p)
        if (got.exponent, got.tag) != expected:
            errors.append(f"p={p}: {got.exponent}, {got.tag}; expected {expected}")
        if p <= verify_max:
            xi = find_prime_element(p, 15)
            if xi.norm() != p ** expected[0]:
                errors.append(f"p={p}: element norm {xi.norm()}")
            tag = classify_element(xi)[0]
            confirmed += 1
            if tag != expected[1]:
                errors.append(f"p={p}: constructed element is {tag}")
    return errors, f"{checked} primes, {confirmed} confirmed by explicit elements"


def check_search(workers: int | None = None, b: int = 1, n: int = 15) -> tuple[list[str], str]:
    summary = SearchSummary(n, b)
    report = consistency_report(iter_records(n, b, workers=workers, summary=summary), n)
    errors = []
    if report.records == 0:
        errors.append("no records")
    errors += [f"divisibility: {r['value']}" for r in report.divisibility_violations[:5]]
    errors += [f"rejected: {r['value']}" for r in report.rejected[:5]]
    errors += [f"forbidden: {r['value']}" for r in report.forbidden_hits[:5]]
    errors += [f"oracle: {r['value']}" for r in report.oracle_mismatches[:5]]
    if summary.partial:
        errors.append("enumeration stopped at the work budget")
    return errors, f"{report.records} canonical vectors, {len(report.value_counts)} distinct values"


# ---------------------------------------------------------------------------
# property suites


def _rand_poly(rng: random.Random, deg: int, box: int) -> IntPoly:
    while True:
        P = IntPoly(rng.randint(-box, box) for _ in range(rng.randint(1, deg + 1)))
        if not P.is_zero():
            return P


def _circulant(P: IntPoly, n: int) -> list[list[int]]:
    c = [0] * n
    for i, v in enumerate(P.coeffs):
        c[i % n] += v
    return [[c[(j - i) % n] for j in range(n)] for i in range(n)]


def prop_multiplicative(rng, cases):
    for _ in range(cases):
        d = rng.choice((3, 4, 5, 7, 8, 9, 12, 15, 21))
        F, G = _rand_poly(rng, 8, 3), _rand_poly(rng, 8, 3)
        if norm_d(F * G, d) != norm_d(F, d) * norm_d(G, d):
            return f"d={d} F={F} G={G}"


def prop_profile_product(rng, cases):
    for _ in range(cases):
        n = rng.choice((3, 5, 6, 10, 12, 15))
        F = _rand_poly(rng, n - 1, 2)
        if norm_profile(F, n).total != det(_circulant(F, n)):
            return f"n={n} F={F}"


def prop_matrix_resultant(rng, cases):
    for _ in range(cases):
        d = rng.choice((3, 5, 7, 9, 15, 16, 21, 35))
        F = _rand_poly(rng, 10, 4)
        if norm_d(F, d, "matrix") != norm_d(F, d, "resultant"):
            return f"d={d} F={F}"


def prop_n3_mod3(rng, cases):
    for _ in range(cases):
        F = _rand_poly(rng, 12, 9)
        if (norm_d(F, 3) - F(1) ** 2) % 3:
            return f"F={F}"


def _coprime_element(rng) -> CycloElement:
    while True:
        xi = CycloElement.from_poly(_rand_poly(rng, 7, 2), 15)
        if not xi.is_zero() and gcd(xi.norm(), 15) == 1:
            return xi


def prop_parity_conjugation(rng, cases):
    for _ in range(cases):
        a, b = _coprime_element(rng), _coprime_element(rng)
        ta, tb = element_tag(a), element_tag(b)
        expected = "bad" if ta == tb else "good"
        if element_tag(a * b) != expected:
            return f"product of {a.to_poly()} and {b.to_poly()}"
        k = rng.choice((2, 4, 7, 8, 11, 13, 14))
        if element_tag(a.conjugate(k)) != ta:
            return f"conjugate {k} of {a.to_poly()}"


def _cyclotomic_resultant_law(m: int, n: int) -> int:
    if m == n:
        return 0
    lo, hi = sorted((m, n))
    q = hi // lo if hi % lo == 0 else 0
    for p in _odd_primes(2, q):
        if q > 1 and q % p == 0:
            while q % p == 0:
                q //= p
            return p ** euler_phi(lo) if q == 1 else 1
    return 1


def prop_cyclotomic_resultants(rng, cases):
    for m in divisors(105):
        for n in divisors(105):
            got = resultant(cyclotomic(m), cyclotomic(n))
            if got != _cyclotomic_resultant_law(m, n):
                return f"Res(Phi_{m}, Phi_{n}) = {got}"


def prop_pell_cycle(rng, cases, k_max: int = 200):
    for k in range(1, k_max + 1):
        a, b = half_integer_power(k)
        if (a % 3, a % 5) == (0, 2):
            return f"k={k}: (a mod 3, a mod 5) = (0, 2)"
        if (a % 5, b % 3) == (3, 0):
            return f"k={k}: (a mod 5, b mod 3) = (-2, 0)"


PROPERTIES: dict[str, Callable] = {
    "norm multiplicativity": prop_multiplicative,
    "profile product equals circulant determinant": prop_profile_product,
    "matrix and resultant norms agree": prop_matrix_resultant,
    "N_3(F) = F(1)^2 mod 3": prop_n3_mod3,
    "good/bad parity and conjugation": prop_parity_conjugation,
    "cyclotomic resultants over divisors of 105": prop_cyclotomic_resultants,
    "Pell cycle avoids (0, 2)": prop_pell_cycle,
}


def check_properties(cases: int = 10_000, seed: int = 20240615) -> tuple[list[str], str]:
    errors = []
    for name, prop in PROPERTIES.items():
        failure = prop(random.Random(seed), cases)
        if failure:
            errors.append(f"{name}: {failure}")
    return errors, f"{len(PROPERTIES)} properties, {cases} seeded cases per randomized suite"


def check_unit_tables() -> tuple[list[str], str]:
    errors = []
    for n in UNIT_TABLES:
        for row in verify_unit_table(n):
            if not row["ok"]:
                errors.append(f"n={n}: {row['name']}")
    return errors, f"{len(UNIT_TABLES)} conductors"


# ---------------------------------------------------------------------------


CHECKS: dict[int, tuple[str, Callable[..., tuple[list[str], str]], float | None]] = {
    1: ("fixed witnesses", check_fixed_witnesses, 1.0),
    2: ("cube families", check_cube_families, 30.0),
    3: ("9p and 25p", check_3sq_5sq, 120.0),
    4: ("good/bad lists", check_prime_tags, 600.0),
    5: ("good-prime witnesses", check_good_witnesses, None),
    6: ("prime-power tags", check_prime_power_tags, None),
    7: ("exhaustive search", check_search, 1800.0),
    8: ("property suites", check_properties, None),
    9: ("unit tables", check_unit_tables, 1.0),
}


def run_check(number: int, **kwargs) -> CheckResult:
    name, fn, limit = CHECKS[number]
    start = time.perf_counter()
    try:
        errors, info = fn(**kwargs)
    except Exception as exc:
        errors, info = [f"raised {type(exc).__name__}: {exc}"], ""
    elapsed = time.perf_counter() - start
    return CheckResult(number, name, not errors, elapsed, limit, errors or [info])


def run_all(numbers=None, workers: int | None = None, progress: Callable[[str], None] | None = None) -> list[CheckResult]:
    results = []
    for k in numbers or sorted(CHECKS):
        kwargs = {"workers": workers} if k == 7 else {}
        res = run_check(k, **kwargs)
        if progress:
            progress(res.line())
        results.append(res)
    return results
