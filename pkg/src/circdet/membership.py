"""Membership in S_p, S_2p and S_15, each positive verdict backed by a certificate."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, isqrt

from .constructions import (
    WitnessCertificate,
    compose_witness,
    cyclotomic_product,
    kn2_witness,
    negate,
    shift_construction,
    witness_3sq_5sq,
    witness_good_form,
    witness_p3m,
)
from .polyring import IntPoly, parse_poly, render_poly

TRIAL_BOUND = 10**6
MR_DETERMINISTIC_LIMIT = 2**64
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class FactorizationError(ArithmeticError):
    """A cofactor is beyond trial division and the deterministic primality range."""


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with the first twelve prime bases; exact below 2^64."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FactoredInteger:
    sign: int
    primes: dict = field(hash=False)

    def value(self) -> int:
        v = self.sign
        for p, e in self.primes.items():
            v *= p**e
        return v

    def valuation(self, p: int) -> int:
        return self.primes.get(p, 0)


def factorize(n: int, trial_bound: int = TRIAL_BOUND) -> FactoredInteger:
    """Trial division up to ``trial_bound``, then a primality test on the cofactor."""
    if n == 0:
        raise ValueError("cannot factor 0")
    sign, n = (1, n) if n > 0 else (-1, -n)
    primes: dict[int, int] = {}

    def take(p: int) -> None:
        nonlocal n
        while n % p == 0:
            primes[p] = primes.get(p, 0) + 1
            n //= p

    take(2)
    take(3)
    p = 5
    step = 2
    while p <= trial_bound and p * p <= n:
        if n % p == 0:
            take(p)
            if n < MR_DETERMINISTIC_LIMIT and is_probable_prime(n):
                break
        p += step
        step = 6 - step
    if n > 1:
        if n < MR_DETERMINISTIC_LIMIT and not is_probable_prime(n) and isqrt(n) > trial_bound:
            raise FactorizationError(f"composite cofactor {n} has no factor below {trial_bound}")
        if n >= MR_DETERMINISTIC_LIMIT and isqrt(n) > trial_bound:
            raise FactorizationError(f"cofactor {n} exceeds the deterministic primality range")
        primes[n] = primes.get(n, 0) + 1
    return FactoredInteger(sign, dict(sorted(primes.items())))


def divisibility_ok(n: int, v: int) -> bool:
    """For each prime p | gcd(v, n) with p^a || n, require p^(a+1) | v."""
    if v == 0:
        return True
    g = gcd(v, n)
    p = 2
    while g > 1:
        if g % p == 0:
            a = 0
            m = n
            while m % p == 0:
                m //= p
                a += 1
            if v % p ** (a + 1):
                return False
            while g % p == 0:
                g //= p
        p += 1
    return True


REASONS = (
    "coprime", "square_multiple", "fifteen_sq", "three_pow", "five_pow", "class_i", "class_ii", "class_iii",
    "div_violation", "no_qualifying_prime", "zero", "unknown",
)


@dataclass(frozen=True)
class MembershipVerdict:
    n: int
    value: int
    member: bool | None
    reason: str
    witness: WitnessCertificate | None = None
    detail: str = ""

    def __post_init__(self):
        if self.reason not in REASONS:
            raise ValueError(f"unknown reason {self.reason}")
        if self.member:
            if self.witness is None or self.witness.profile.total != self.value:
                raise RuntimeError("member verdict without a matching certificate")

    def as_dict(self) -> dict:
        w = self.witness
        return {
            "n": self.n,
            "value": self.value,
            "member": self.member,
            "reason": self.reason,
            "detail": self.detail,
            "witness": render_poly(w.poly) if w else None,
            "norms": {str(d): v for d, v in w.profile.norms.items()} if w else None,
        }


def _with_sign(cert: WitnessCertificate, v: int) -> WitnessCertificate:
    return negate(cert) if cert.claimed == -v and v != 0 else cert


def _valuation(v: int, p: int) -> int:
    a = 0
    while v % p == 0:
        v //= p
        a += 1
    return a


# ---------------------------------------------------------------------------
# S_p and S_2p


def _sp_witness(v: int, p: int, doubled: bool) -> WitnessCertificate:
    n = 2 * p if doubled else p
    w = abs(v)
    a = _valuation(w, 2) if doubled else 0
    b = _valuation(w, p)
    if a == 0 and b == 0:
        return cyclotomic_product(v, n)
    if (a == 0 or a >= 2) and b >= 2 and (not doubled or a >= 2):
        return kn2_witness(v // (n * n), n)
    if not doubled:
        raise AssertionError("unreachable")
    if a == 0:
        # 1 + x^2 + ... + x^p has M_2p = p^2 and value p at 1; shift gives (k + 2 lam) p^2
        base = WitnessCertificate(n, IntPoly([1, 0] + [1] * (p - 1)), p * p, "base_p2")
        t = w // (p * p)
        cert = shift_construction(base.poly, n, 1, (t - 1) // 2)
    else:
        # 1 + x^2 has M_2p = 4 and value 2 at 1; shift gives (k + p lam) 4
        base = WitnessCertificate(n, parse_poly("1 + x^2"), 4, "base_4")
        t = w // 4
        lam = 0 if t % 2 else 1
        cert = shift_construction(base.poly, n, t - p * lam, lam)
    return _with_sign(cert, v)


def decide_sp(v: int, p: int, doubled: bool = False) -> MembershipVerdict:
    """S_p = {p^a m : a = 0 or a >= 2}; S_2p adds the same rule for the power of 2."""
    if p < 3 or not is_probable_prime(p):
        raise ValueError("p must be an odd prime")
    n = 2 * p if doubled else p
    if v == 0:
        return MembershipVerdict(n, 0, True, "zero", WitnessCertificate(n, IntPoly(), 0, "zero"))
    a = _valuation(v, 2) if doubled else 0
    b = _valuation(v, p)
    if a == 1 or b == 1:
        return MembershipVerdict(n, v, False, "div_violation", detail=f"v_2 = {a}, v_{p} = {b}")
    reason = "coprime" if a == 0 and b == 0 else "square_multiple"
    return MembershipVerdict(n, v, True, reason, _sp_witness(v, p, doubled))


# ---------------------------------------------------------------------------
# S_15


def _qualifying_prime(k: int, fac: FactoredInteger) -> tuple[str, int, int] | None:
    """First prime (ascending) of k that makes 9k and 25k members: (reason, p, exponent)."""
    from .goodbad import classify_prime

    for p, e in fac.primes.items():
        r = p % 15
        if r in (7, 11, 13):
            return "class_i", p, 1
        if r == 1 and classify_prime(p) == "good":
            return "class_i", p, 1
        if r == 4 and e >= 2:
            return "class_ii", p, 2
        if r in (2, 8) and e >= 4:
            return "class_iii", p, 4
    return None


@lru_cache(maxsize=4096)
def _good_power_witness(p: int, e: int, which: str) -> WitnessCertificate:
    """9 p^e or 25 p^e from an element of norm p^e that is good."""
    from .goodbad import canonical_form
    from .numberfield import find_norm_element, find_prime_element

    xi = find_norm_element(p) if e == 1 else find_prime_element(p, 15)
    form = canonical_form(xi, "first" if which == "three" else "second")
    return witness_good_form(form, which)


def synthesize_witness(v: int, reason: str, prime: int | None = None, exponent: int = 1) -> WitnessCertificate:
    """Certificate with M_15 = v for a member value and its reason code."""
    n = 15
    if reason == "zero":
        return WitnessCertificate(n, IntPoly(), 0, "zero")
    if reason == "coprime":
        return cyclotomic_product(v, n)
    if reason == "fifteen_sq":
        return kn2_witness(v // 225, n)
    if reason == "three_pow":
        # (1 + x^3 + x^6) has M_15 = 27 and value 3 at 1: shift gives (k + 5 lam) 27
        t = v // 27
        lam = next(l for l in range(3) if (t - 5 * l) % 3)
        return shift_construction(parse_poly("1 + x^3 + x^6"), n, t - 5 * lam, lam)
    if reason == "five_pow":
        return witness_p3m(5, v // 125)
    if reason in ("class_i", "class_ii", "class_iii"):
        which = "three" if v % 9 == 0 else "five"
        factor = 9 if which == "three" else 25
        k = v // factor
        if exponent == 1 and prime % 15 in (7, 11, 13):
            base = witness_3sq_5sq(prime)[0 if which == "three" else 1]
        else:
            base = _good_power_witness(prime, exponent, which)
        rest = k // prime**exponent
        parts = [base]
        if abs(rest) != 1:
            parts.append(cyclotomic_product(abs(rest), n))
        cert = compose_witness(parts, n) if len(parts) > 1 else base
        return _with_sign(cert, v)
    raise ValueError(f"no construction for reason {reason!r}")


@dataclass(frozen=True)
class S15Rule:
    """Outcome of the valuation rule before any certificate is built."""

    member: bool | None
    reason: str
    prime: int | None = None
    exponent: int = 1
    detail: str = ""


def s15_rule(v: int) -> S15Rule:
    """Apply the S_15 characterization to v without constructing a witness."""
    if v == 0:
        return S15Rule(True, "zero")
    t3, t5 = _valuation(v, 3), _valuation(v, 5)
    if t3 == 1 or t5 == 1:
        return S15Rule(False, "div_violation", detail=f"v_3 = {t3}, v_5 = {t5}")
    if t3 >= 2 and t5 >= 2:
        return S15Rule(True, "fifteen_sq")
    if t3 == 0 and t5 == 0:
        return S15Rule(True, "coprime")
    if t3 >= 3 and t5 == 0:
        return S15Rule(True, "three_pow")
    if t5 >= 3 and t3 == 0:
        return S15Rule(True, "five_pow")
    k = v // (9 if t3 == 2 else 25)
    try:
        fac = factorize(k)
    except FactorizationError as exc:
        return S15Rule(None, "unknown", detail=str(exc))
    found = _qualifying_prime(k, fac)
    if found is None:
        return S15Rule(False, "no_qualifying_prime", detail=f"k = {k}")
    reason, prime, e = found
    return S15Rule(True, reason, prime, e, f"p = {prime}" + (f"^{e}" if e > 1 else ""))


def decide_s15(v: int) -> MembershipVerdict:
    """Whether v is a 15 x 15 integer circulant determinant, with a certificate when it is."""
    rule = s15_rule(v)
    witness = synthesize_witness(v, rule.reason, rule.prime, rule.exponent) if rule.member else None
    return MembershipVerdict(15, v, rule.member, rule.reason, witness, rule.detail)
