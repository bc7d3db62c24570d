"""Explicit witness polynomials for circulant determinant values.

Every constructor returns a ``WitnessCertificate``, which recomputes the
norm profile of its polynomial and refuses to exist if the product differs
from the claimed value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from math import gcd, prod

from .cyclonorm import NormProfile, norm_profile
from .polyring import (
    IntPoly,
    cyclotomic,
    geometric_sum,
    parse_poly,
    poly_mul_mod,
    reduce_cyclic,
    render_poly,
    x_power_mod,
)


class CertificateError(RuntimeError):
    """A construction did not produce the value it claimed."""


class InvalidParameters(ValueError):
    pass


@dataclass(frozen=True)
class WitnessCertificate:
    """A polynomial mod x^n - 1 whose circulant determinant is ``claimed``."""

    n: int
    poly: IntPoly
    claimed: int
    label: str = ""
    profile: NormProfile = field(init=False, compare=False)

    def __post_init__(self):
        poly = reduce_cyclic(self.poly, self.n)
        object.__setattr__(self, "poly", poly)
        profile = norm_profile(poly, self.n)
        if profile.total != self.claimed:
            raise CertificateError(
                f"{self.label or 'witness'}: M_{self.n}({render_poly(poly)}) = {profile.total}, claimed {self.claimed}"
            )
        object.__setattr__(self, "profile", profile)

    @property
    def value(self) -> int:
        return self.profile.total

    def coefficients(self) -> list[int]:
        c = list(self.poly.coeffs)
        return c + [0] * (self.n - len(c))

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "label": self.label,
            "poly": render_poly(self.poly),
            "coeffs": self.coefficients(),
            "claimed": self.claimed,
            "norms": {str(d): v for d, v in self.profile.norms.items()},
        }


def _mul(*factors: IntPoly, n: int) -> IntPoly:
    acc = IntPoly([1])
    for f in factors:
        acc = poly_mul_mod(acc, f, n)
    return acc


def minus_x(n: int) -> WitnessCertificate:
    return WitnessCertificate(n, parse_poly("-x"), -1, "minus_x")


def negate(cert: WitnessCertificate) -> WitnessCertificate:
    """Multiply by -x, flipping the sign of the determinant."""
    return compose_witness([cert, minus_x(cert.n)], cert.n)


def compose_witness(parts: list[WitnessCertificate], n: int) -> WitnessCertificate:
    """Product of certificates sharing the modulus n."""
    if any(c.n != n for c in parts):
        raise InvalidParameters("all parts must share the modulus")
    poly = _mul(*(c.poly for c in parts), n=n)
    label = " * ".join(c.label for c in parts if c.label)
    return WitnessCertificate(n, poly, prod(c.claimed for c in parts), label)


def cyclotomic_product(m: int, n: int) -> WitnessCertificate:
    """prod Phi_q(x)^a over q^a || m, with value |m| (gcd(m, n) = 1); sign via -x."""
    if m == 0 or gcd(m, n) != 1:
        raise InvalidParameters("m must be nonzero and prime to n")
    from .membership import factorize

    poly = IntPoly([1])
    for q, a in factorize(abs(m)).primes.items():
        phi_q = geometric_sum(q, n)  # Phi_q for prime q
        for _ in range(a):
            poly = poly_mul_mod(poly, phi_q, n)
    cert = WitnessCertificate(n, poly, abs(m), f"cyclotomic({abs(m)})")
    return negate(cert) if m < 0 else cert


def kn2_witness(k: int, n: int) -> WitnessCertificate:
    """1 - x + k (x^n - 1)/(x - 1), with value k n^2."""
    poly = parse_poly("1 - x") + k * geometric_sum(n)
    return WitnessCertificate(n, poly, k * n * n, f"kn2({k})")


# ---------------------------------------------------------------------------
# p^3 m and 3^3 m in S_3p


def _check_odd_prime(p: int) -> None:
    from .membership import is_probable_prime

    if p < 5 or not is_probable_prime(p):
        raise InvalidParameters(f"p = {p} must be an odd prime other than 3")


def witness_p3m(p: int, m: int) -> WitnessCertificate:
    """M_3p = p^3 m for 3 not dividing m."""
    _check_odd_prime(p)
    if m == 0 or m % 3 == 0:
        raise InvalidParameters("m must be nonzero and prime to 3")
    if m < 0:
        return negate(witness_p3m(p, -m))
    n = 3 * p
    k = (2 * m * p) % 3
    poly = geometric_sum(m * p + 2 * k, n) - _mul(
        x_power_mod(2 * m * p - k, n), geometric_sum(k, n), parse_poly(f"x^{3 * k} + 1"), n=n
    )
    return WitnessCertificate(n, poly, p**3 * m, f"p3m(p={p},m={m})")


def witness_3power(p: int, m: int, variant: str = "F3") -> WitnessCertificate:
    """M_3p = 3^4 m (variant F3, p not dividing m) or 3^3 m (F4, gcd(m, 3p) = 1).

    F3's second geometric sum has a negative exponent when 3m > p - 3; working
    mod x^3p - 1 absorbs the compensating power of x.
    """
    _check_odd_prime(p)
    n = 3 * p
    if m == 0:
        raise InvalidParameters("m must be nonzero")
    if variant == "F3":
        if m % p == 0:
            raise InvalidParameters("p must not divide m")
        poly = geometric_sum(3 * p - 9, n) - _mul(
            x_power_mod(3 * p - 6, n), parse_poly("1 + x^3 + x^6"), geometric_sum(p - 3 - 3 * m, n), n=n
        )
        return WitnessCertificate(n, poly, 81 * m, f"3power_F3(p={p},m={m})")
    if variant == "F4":
        if gcd(m, n) != 1:
            raise InvalidParameters("gcd(m, 3p) must be 1")
        cofactor = cyclotomic_product(m, n)
        poly = poly_mul_mod(parse_poly("1 + x^3 + x^6"), cofactor.poly, n)
        return WitnessCertificate(n, poly, 27 * m, f"3power_F4(p={p},m={m})")
    raise InvalidParameters(f"unknown variant {variant!r}")


def shift_construction(F: IntPoly, n: int, k: int, lam: int) -> WitnessCertificate:
    """G = (x^k - 1)/(x - 1) F + lam (x^n - 1)/(x - 1), M_n(G) = (k F(1) + lam n)/F(1) M_n(F)."""
    if gcd(k, n) != 1:
        raise InvalidParameters("gcd(k, n) must be 1")
    F1 = reduce_cyclic(F, n)(1)
    if F1 == 0:
        raise InvalidParameters("F(1) must be nonzero")
    num = (k * F1 + lam * n) * norm_profile(F, n).total
    if num % F1:
        raise CertificateError("shift identity is not integral")
    G = poly_mul_mod(geometric_sum(k, n), F, n) + lam * geometric_sum(n)
    return WitnessCertificate(n, G, num // F1, f"shift(k={k},lambda={lam})")


# ---------------------------------------------------------------------------
# registry


@lru_cache(maxsize=None)
def witness_registry() -> dict[str, tuple[int, str, int]]:
    """name -> (n, polynomial text, claimed) from the bundled data file."""
    text = resources.files("circdet").joinpath("data/witnesses.txt").read_text()
    table = {}
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        name, n, poly, claimed = line.split("\t")
        table[name] = (int(n), poly, int(claimed))
    return table


def fixed_witness(name: str) -> WitnessCertificate:
    try:
        n, poly, claimed = witness_registry()[name]
    except KeyError:
        raise KeyError(f"unknown witness {name!r}") from None
    return WitnessCertificate(n, parse_poly(poly), claimed, name)


# ---------------------------------------------------------------------------
# 3^2 p and 5^2 p for p = 7, 11, 13 mod 15


def _positive(cert: WitnessCertificate, target: int) -> WitnessCertificate:
    if cert.claimed == target:
        return cert
    if cert.claimed == -target:
        return negate(cert)
    raise CertificateError(f"expected +-{target}, got {cert.claimed}")


def _signed_cert(n: int, poly: IntPoly, target: int, label: str) -> WitnessCertificate:
    total = norm_profile(poly, n).total
    return _positive(WitnessCertificate(n, poly, total, label), target)


@lru_cache(maxsize=4096)
def witness_3sq_5sq(p: int) -> tuple[WitnessCertificate, WitnessCertificate]:
    """Certificates for 9p and 25p at n = 15, p = 7, 11 or 13 mod 15."""
    from .numberfield import canonical_rep_mod15, rep_norm5

    r = p % 15
    P = parse_poly
    phi5_phi15 = cyclotomic(5) * cyclotomic(15)
    if r in (7, 13):
        rep = canonical_rep_mod15(p)
        AB = IntPoly([rep.B, rep.A])
        CD = IntPoly([rep.D, rep.C])
        if r == 7:
            head_f = P("1 - x + x^3 + x^6 + x^9")
            head_g = P("1 - x^2 + x^4 + x^9 + x^10 + x^13 + x^14")
        else:
            head_f = P("1 - x^5 - x^11 + x^12 + x^3 + x^6 + x^9")
            head_g = P("1 + x^3 + x^6 + x^9 + x^14")
        F = head_f + P("1 - x") * phi5_phi15 * AB
        G = head_g + P("x - 1") * phi5_phi15 * CD
    elif r == 11:
        rep5 = rep_norm5(p)
        t = P("1 + x^5 + x^10")
        F = t + rep5.sign * P("x - 1") + t * P("x - 1") * rep5.g
        G = P("x^13 + x^14 + x^15 + x^16 - x^7 + x^10 + x^11") + t * P("1 - x") * rep5.g2
    else:
        raise InvalidParameters(f"{p} is not 7, 11 or 13 mod 15")
    return (
        _signed_cert(15, F, 9 * p, f"3sq(p={p})"),
        _signed_cert(15, G, 25 * p, f"5sq(p={p})"),
    )


# ---------------------------------------------------------------------------
# good forms and closure


def witness_good_form(form, which: str = "three") -> WitnessCertificate:
    """9k from a good first form, 25k from a good second form (N_15 = k)."""
    if form.b_type != "one":
        raise InvalidParameters("a good (B = 1) form is required")
    expected = {"three": "first", "five": "second"}[which]
    if form.form != expected:
        raise InvalidParameters(f"{which} needs the {expected} form")
    poly = form.polynomial()
    k = norm_profile(poly, 15).norms[15]
    factor = 9 if which == "three" else 25
    return _signed_cert(15, poly, factor * k, f"good_{which}(k={k})")
