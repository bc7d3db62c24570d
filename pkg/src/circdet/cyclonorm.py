"""Cyclotomic norms N_d(F), the norm profile of M_n(F), and unit checks.

Elements of Z[w_d] are stored on the power basis 1, w, ..., w^(phi(d)-1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import prod
from typing import Iterable, Sequence

from .intmat import det, solve
from .polyring import (
    IntPoly,
    cyclotomic,
    divisors,
    euler_phi,
    parse_poly,
    poly_rem,
    render_poly,
    resultant,
)

# Above this many coordinates the subresultant path beats Bareiss on the
# multiplication matrix by an order of magnitude.
MATRIX_NORM_MAX_PHI = 24


@lru_cache(maxsize=None)
def _power_table(d: int, upto: int) -> tuple[tuple[int, ...], ...]:
    """Coordinates of x^k mod Phi_d for k < upto."""
    phi = cyclotomic(d)
    m = phi.degree
    rows = []
    cur = [1] + [0] * (m - 1) if m else []
    for _ in range(upto):
        rows.append(tuple(cur))
        if m == 0:
            continue
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(m):
                cur[i] -= top * phi.coeffs[i]
    return tuple(rows)


def _reduce_coeffs(coeffs: Sequence[int], d: int) -> tuple[int, ...]:
    m = euler_phi(d)
    if len(coeffs) <= m:
        return tuple(coeffs) + (0,) * (m - len(coeffs))
    size = 1 << max(len(coeffs) - 1, 1).bit_length()
    table = _power_table(d, max(size, 2 * m))
    out = [0] * m
    for k, c in enumerate(coeffs):
        if c:
            row = table[k]
            for i in range(m):
                if row[i]:
                    out[i] += c * row[i]
    return tuple(out)


@dataclass(frozen=True)
class CycloElement:
    """An element of Z[w_d] as phi(d) power-basis coordinates."""

    d: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != euler_phi(self.d):
            raise ValueError(f"need {euler_phi(self.d)} coordinates for conductor {self.d}")

    @classmethod
    def from_poly(cls, F: IntPoly | str, d: int) -> "CycloElement":
        if isinstance(F, str):
            F = parse_poly(F)
        return cls(d, _reduce_coeffs(F.coeffs, d))

    @classmethod
    def one(cls, d: int) -> "CycloElement":
        return cls.from_poly(IntPoly([1]), d)

    @classmethod
    def root(cls, d: int, k: int = 1) -> "CycloElement":
        """w_d^k."""
        return cls.from_poly(IntPoly.monomial(k % d), d)

    def to_poly(self) -> IntPoly:
        return IntPoly(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _check(self, other: "CycloElement") -> None:
        if other.d != self.d:
            raise ValueError("conductor mismatch")

    def __add__(self, other: "CycloElement") -> "CycloElement":
        self._check(other)
        return CycloElement(self.d, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "CycloElement") -> "CycloElement":
        self._check(other)
        return CycloElement(self.d, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "CycloElement":
        return CycloElement(self.d, tuple(-a for a in self.coords))

    def __mul__(self, other) -> "CycloElement":
        if isinstance(other, int):
            return CycloElement(self.d, tuple(a * other for a in self.coords))
        self._check(other)
        return CycloElement.from_poly(self.to_poly() * other.to_poly(), self.d)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "CycloElement":
        if e < 0:
            return self.inverse() ** (-e)
        result, base = CycloElement.one(self.d), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self, k: int) -> "CycloElement":
        """Image under w -> w^k (gcd(k, d) = 1)."""
        return CycloElement.from_poly(self.to_poly().compose_power(k % self.d or self.d), self.d)

    def mult_matrix(self) -> list[list[int]]:
        """Matrix of multiplication by this element on the power basis (column j = self * w^j)."""
        m = len(self.coords)
        phi = cyclotomic(self.d).coeffs
        cols = []
        cur = list(self.coords)
        for _ in range(m):
            cols.append(cur)
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [c - top * p for c, p in zip(cur, phi)]
        return [list(r) for r in zip(*cols)]

    def norm(self) -> int:
        return norm_d(self.to_poly(), self.d)

    def exact_div(self, other: "CycloElement") -> "CycloElement":
        """self / other inside Z[w_d]; ValueError if the quotient is not integral."""
        self._check(other)
        y = solve(other.mult_matrix(), self.coords)
        if any(v.denominator != 1 for v in y):
            raise ValueError("quotient is not an algebraic integer")
        return CycloElement(self.d, tuple(int(v) for v in y))

    def divides(self, other: "CycloElement") -> bool:
        try:
            other.exact_div(self)
        except ValueError:
            return False
        return True

    def inverse(self) -> "CycloElement":
        """Inverse of a unit."""
        return CycloElement.one(self.d).exact_div(self)

    def __str__(self) -> str:
        return render_poly(self.to_poly())


def reduce_mod_cyclotomic(F: IntPoly, d: int) -> CycloElement:
    """Canonical residue of F modulo Phi_d."""
    if d < 1:
        raise ValueError("d must be positive")
    return CycloElement.from_poly(F, d)


def _norm_matrix(coords: Sequence[int], d: int) -> int:
    return det(CycloElement(d, tuple(coords)).mult_matrix())


def norm_d(F: IntPoly, d: int, method: str = "auto") -> int:
    """N_d(F): the product of F over the primitive d-th roots of unity.

    ``method`` is "matrix" (determinant of multiplication by F mod Phi_d),
    "resultant" (Res(Phi_d, F)), or "auto".
    """
    if d == 1:
        return F(1)
    if d == 2:
        return F(-1)
    if method == "auto":
        method = "matrix" if euler_phi(d) <= MATRIX_NORM_MAX_PHI else "resultant"
    if method == "matrix":
        coords = _reduce_coeffs(F.coeffs, d)
        if not any(coords):
            return 0
        return _norm_matrix(coords, d)
    if method == "resultant":
        r = poly_rem(F, cyclotomic(d))
        if r.is_zero():
            return 0
        return resultant(cyclotomic(d), r)
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class NormProfile:
    """The norms N_d(F) for d | n and their product M_n(F)."""

    n: int
    norms: dict = field(hash=False)
    total: int

    def __post_init__(self):
        if prod(self.norms.values()) != self.total:
            raise ValueError("total is not the product of the norms")

    def as_dict(self) -> dict:
        return {"n": self.n, "norms": {str(d): v for d, v in self.norms.items()}, "total": self.total}


def norm_profile(F: IntPoly, n: int, method: str = "auto") -> NormProfile:
    """N_d(F) for every d | n; the total equals the circulant determinant of F mod x^n - 1."""
    norms = {d: norm_d(F, d, method) for d in divisors(n)}
    return NormProfile(n, norms, prod(norms.values()))


def circulant_det(F: IntPoly, n: int, method: str = "auto") -> int:
    """M_n(F)."""
    return norm_profile(F, n, method).total


# ---------------------------------------------------------------------------
# units


def is_reciprocal(F: IntPoly) -> bool:
    return F.reciprocal() == F


def is_skew_reciprocal(F: IntPoly) -> bool:
    return F.reciprocal() == -F


def unit_check(F: IntPoly, n: int) -> dict:
    """Unit status of F(w_n) in Z[w_n] plus the reciprocity class of F."""
    N = norm_d(F, n)
    return {
        "is_unit": abs(N) == 1,
        "is_reciprocal": is_reciprocal(F),
        "is_skew_reciprocal": is_skew_reciprocal(F),
        "norm": N,
    }


# Printed generator tables. x - 1 is a unit only for composite conductors.
UNIT_TABLES: dict[int, tuple[str, ...]] = {
    5: ("x + 1",),
    7: ("x + 1", "x^3 + 1"),
    11: ("x + 1", "x^2 + 1", "x^5 + 1", "x^2 + x + 1"),
    13: ("x + 1", "x^2 + 1", "x^6 + 1", "x^2 + x + 1", "x^10 + x^5 + 1"),
    15: ("x - 1", "x + 1", "x^3 + 1"),
    21: ("x - 1", "x + 1", "x^2 + 1", "x^3 + 1", "x^6 + x^3 + 1"),
    33: ("x - 1", "x + 1", "x^2 + 1", "x^3 + 1", "x^4 + 1", "x^6 + 1", "x^18 + 1",
         "x^6 + x^3 + 1", "Phi5"),
    35: ("x - 1", "x + 1", "x^2 + 1", "x^3 + 1", "x^4 + 1", "x^5 + 1", "x^7 + 1",
         "x^15 + 1", "x^2 + x + 1", "x^6 + x^3 + 1", "Phi11"),
    39: ("x - 1", "x + 1", "x^2 + 1", "x^3 + 1", "x^5 + 1", "x^6 + 1", "x^18 + 1",
         "x^6 + x^3 + 1", "Phi5", "Phi7", "Phi11"),
}

def _replacement_identities() -> dict[int, list[tuple[IntPoly, IntPoly]]]:
    P = parse_poly
    t11 = P("1 + x^11 + x^22")
    t13 = P("1 + x^13 + x^26")
    long33 = P("x^19 - x^18 - x^17 + x^16 - x^14 + x^13 - x^11 + x^10 - x^6 + x^4 - x^3 + x - 1")
    return {
        33: [
            (P("x^11 - x^4 + 1") - t11, -P("x^4") * P("x^18 + 1")),
            (long33 + cyclotomic(33) - P("x^7") * P("x^2 - 1") * t11, -P("x^29") * P("x^2 - 1")),
        ],
        39: [(P("x^15 + x^2 + 1") + t13 * P("x^13 - x^2 - 1"), P("x^28") * P("x^11 - 1"))],
    }


def verify_replacements(n: int) -> list[bool]:
    """Check the reciprocal-for-non-reciprocal swaps used in the tables for 33 and 39.

    Each identity must hold in Z[w_n]; both sides are compared mod Phi_n.
    """
    return [
        reduce_mod_cyclotomic(lhs, n) == reduce_mod_cyclotomic(rhs, n)
        for lhs, rhs in _replacement_identities().get(n, [])
    ]


class UnknownConductorError(ValueError):
    pass


def generator_poly(name: str) -> IntPoly:
    if name.startswith("Phi"):
        return cyclotomic(int(name[3:]))
    return parse_poly(name)


def verify_unit_table(n: int) -> list[dict]:
    """Check every tabulated generator for conductor n.

    Returns one row per generator with the fields name, is_unit,
    reciprocity ("reciprocal", "skew" or "none"), norm, ok.
    """
    if n not in UNIT_TABLES:
        raise UnknownConductorError(f"no unit table for n = {n}")
    rows = []
    for name in UNIT_TABLES[n]:
        F = generator_poly(name)
        info = unit_check(F, n)
        recip = "reciprocal" if info["is_reciprocal"] else "skew" if info["is_skew_reciprocal"] else "none"
        expected = "skew" if name == "x - 1" else "reciprocal"
        rows.append({
            "name": name,
            "is_unit": info["is_unit"],
            "reciprocity": recip,
            "norm": info["norm"],
            "ok": info["is_unit"] and recip == expected,
        })
    return rows


def format_unit_report(n: int, rows: Iterable[dict]) -> str:
    lines = [f"# unit generators for Z[w_{n}]"]
    for r in rows:
        lines.append(f"{r['name']}\t{'unit' if r['is_unit'] else 'non-unit'}\t{r['reciprocity']}\t{r['norm']}")
    return "\n".join(lines)
