"""Norm equations in Z[w_3], Z[w_5] and Z[w_15].

Covers Eisenstein representations of primes p = 1 mod 3 with prescribed
residues mod 5, norm-p elements found by ideal-lattice enumeration, the
5-norm representation used for primes p = 11 mod 15, prime splitting in
Z[w_15], the x^2 + pq y^2 = 4p obstruction and powers of (3 + sqrt 5)/2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

import numpy as np

from .cyclonorm import CycloElement, norm_d
from .polyring import IntPoly, cyclotomic, euler_phi, parse_poly, poly_exact_div


class ResidueClassError(ValueError):
    """Input prime is outside the residue class an operation needs."""


class SearchExhausted(RuntimeError):
    """A bounded search ran out of room; raise the bound and retry."""


# ---------------------------------------------------------------------------
# Eisenstein integers


def norm3(a: int, b: int) -> int:
    """N_3(a + b w) = a^2 - ab + b^2."""
    return a * a - a * b + b * b


def eisenstein_rep(p: int) -> tuple[int, int]:
    """(alpha, beta) with alpha^2 - alpha*beta + beta^2 = p.

    Picks the smallest beta >= 0, then the smallest alpha > 0.
    """
    if p % 3 != 1:
        raise ResidueClassError(f"{p} is not 1 mod 3")
    beta = 0
    while 3 * beta * beta <= 4 * p:
        disc = 4 * p - 3 * beta * beta
        s = isqrt(disc)
        if s * s == disc:
            roots = sorted({(beta - s) // 2, (beta + s) // 2})
            for alpha in roots:
                if alpha > 0 and (beta + s) % 2 == 0 and norm3(alpha, beta) == p:
                    return alpha, beta
        beta += 1
    raise ResidueClassError(f"{p} is not a norm from Z[w_3]")


# Target residues (a, b) mod 5 for the first form, keyed by p mod 15.
FIRST_FORM_RESIDUES = {1: (1, 0), 4: (2, 0), 7: (3, 1), 13: (4, 3)}
# (c, d) for the second form, only for p = 7, 13 mod 15.
SECOND_FORM_RESIDUES = {7: (2, 3), 13: (3, -1)}


def _eisenstein_orbit(alpha: int, beta: int) -> list[tuple[int, int]]:
    """All associates and conjugates of alpha + beta w, in BFS order."""
    moves = (
        lambda a, b: (b, a),
        lambda a, b: (-a, -b),
        lambda a, b: (a - b, -b),
        lambda a, b: (-b, a - b),  # multiply by w
    )
    seen = [(alpha, beta)]
    index = 0
    while index < len(seen):
        cur = seen[index]
        index += 1
        for move in moves:
            nxt = move(*cur)
            if nxt not in seen:
                seen.append(nxt)
    return seen


@dataclass(frozen=True)
class EisensteinRep:
    p: int
    a: int
    b: int
    A: int
    B: int
    c: int | None = None
    d: int | None = None
    C: int | None = None
    D: int | None = None

    def first_poly(self) -> IntPoly:
        """a + b x + 5(A x + B)."""
        return IntPoly([self.a + 5 * self.B, self.b + 5 * self.A])

    def second_poly(self) -> IntPoly | None:
        """c + d x + 5(x - 1)(C x + D)."""
        if self.c is None:
            return None
        return IntPoly([self.c, self.d]) + 5 * IntPoly([-1, 1]) * IntPoly([self.D, self.C])

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in ("p", "a", "b", "A", "B", "c", "d", "C", "D")}


@lru_cache(maxsize=4096)
def canonical_rep_mod15(p: int) -> EisensteinRep:
    """Eisenstein representation with the canonical residues for p mod 15.

    Walks the twelve associates and conjugates of a norm-p element and picks
    the first (BFS order) with the required residues. Both forms are checked
    with norm_d before returning.
    """
    if p % 3 != 1 or p % 5 == 0:
        raise ResidueClassError(f"{p} must be 1 mod 3 and prime to 5")
    r = p % 15
    a, b = FIRST_FORM_RESIDUES[r]
    orbit = _eisenstein_orbit(*eisenstein_rep(p))
    for alpha, beta in orbit:
        if (alpha - a) % 5 == 0 and (beta - b) % 5 == 0:
            rep = EisensteinRep(p, a, b, (beta - b) // 5, (alpha - a) // 5)
            break
    else:
        raise RuntimeError(f"no canonical first form for {p}")

    if r in SECOND_FORM_RESIDUES:
        c, d = SECOND_FORM_RESIDUES[r]
        # c + d x + 5(x-1)(Cx+D) = (c - 5(C+D)) + (d + 5(D-2C)) x  mod Phi_3
        for alpha, beta in orbit:
            if (alpha - c) % 5 or (beta - d) % 5:
                continue
            u, v = (c - alpha) // 5, (beta - d) // 5
            if (u - v) % 3 == 0:
                C = (u - v) // 3
                rep = EisensteinRep(p, a, b, rep.A, rep.B, c, d, C, u - C)
                break
        else:
            raise RuntimeError(f"no second form for {p}")

    if norm_d(rep.first_poly(), 3) != p:
        raise RuntimeError("first form failed its norm check")
    second = rep.second_poly()
    if second is not None and norm_d(second, 3) != p:
        raise RuntimeError("second form failed its norm check")
    return rep


# ---------------------------------------------------------------------------
# prime ideals and lattice search


def multiplicative_order(p: int, n: int) -> int:
    if gcd(p, n) != 1:
        raise ValueError("not a unit")
    k, acc = 1, p % n
    while acc != 1 % n:
        acc = acc * p % n
        k += 1
    return k


@lru_cache(maxsize=None)
def prime_ideal_factor(p: int, d: int) -> tuple[int, ...]:
    """Coefficients (low to high, entries in [0, p)) of a fixed irreducible factor of Phi_d mod p.

    The factor with the lexicographically smallest coefficient tuple is used,
    so the choice is deterministic.
    """
    from sympy import Poly, symbols

    x = symbols("x")
    phi = cyclotomic(d)
    P = Poly(list(reversed(phi.coeffs)), x, modulus=p)
    factors = []
    for fac, _ in P.factor_list()[1]:
        coeffs = [int(c) % p for c in reversed(fac.all_coeffs())]
        factors.append(tuple(coeffs))
    f = multiplicative_order(p, d)
    factors = [t for t in factors if len(t) - 1 == f]
    return min(factors)


def ideal_basis(p: int, d: int) -> list[list[int]]:
    """Z-basis (rows, power-basis coordinates) of the prime ideal (p, h(w_d))."""
    h = prime_ideal_factor(p, d)
    m = euler_phi(d)
    f = len(h) - 1
    rows = [[p if j == i else 0 for j in range(m)] for i in range(f)]
    for i in range(m - f):
        rows.append([0] * i + list(h) + [0] * (m - f - i - 1))
    return rows


def lll_reduce(rows: list[list[int]]) -> list[list[int]]:
    from sympy import ZZ
    from sympy.polys.matrices import DomainMatrix

    M = DomainMatrix([[ZZ(v) for v in r] for r in rows], (len(rows), len(rows[0])), ZZ)
    return [[int(v) for v in r] for r in M.lll().to_list()]


def _embedding_matrix(d: int) -> np.ndarray:
    """Columns: one primitive d-th root per complex-conjugate pair, evaluated on the power basis."""
    m = euler_phi(d)
    ks = [k for k in range(1, d) if gcd(k, d) == 1 and 2 * k < d]
    if d <= 2:
        ks = [1]
    roots = np.exp(2j * np.pi * np.array(ks) / d)
    return np.power.outer(roots, np.arange(m)).T  # m x len(ks)


def _shell(radius: int, dim: int, chunk: int = 1 << 16):
    """Integer vectors with sup-norm exactly ``radius`` in lexicographic order, in chunks."""
    base = 2 * radius + 1
    total = base**dim
    powers = base ** np.arange(dim - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = (idx[:, None] // powers[None, :]) % base - radius
        keep = np.abs(digits).max(axis=1) == radius
        if keep.any():
            yield digits[keep]


@lru_cache(maxsize=4096)
def find_prime_element(p: int, d: int, max_radius: int = 4) -> CycloElement:
    """An element of Z[w_d] generating a prime above p, i.e. of norm p^f.

    Enumerates small combinations of an LLL-reduced basis of (p, h(w_d)) in
    increasing sup-norm shells; a floating-point norm filter screens each
    chunk and the first candidate passing the exact norm check wins.
    """
    if d < 3 or gcd(p, d) != 1:
        raise ValueError("need d >= 3 and p prime to d")
    f = multiplicative_order(p, d)
    target = p**f
    m = euler_phi(d)
    basis = lll_reduce(ideal_basis(p, d))
    emb = np.array(basis, dtype=float) @ _embedding_matrix(d)
    B = np.array(basis, dtype=object)
    for radius in range(1, max_radius + 1):
        for vecs in _shell(radius, m):
            approx = np.prod(np.abs(vecs @ emb) ** 2, axis=1)
            hits = np.nonzero(np.abs(approx - target) < 1e-6 * target)[0]
            for h in hits:
                coords = tuple(int(c) for c in vecs[h].astype(object) @ B)
                if abs(norm_d(IntPoly(coords), d)) == target:
                    return CycloElement(d, coords)
    raise SearchExhausted(f"no element of norm {p}^{f} in Z[w_{d}] within radius {max_radius}")


@lru_cache(maxsize=4096)
def find_norm_element(p: int, max_radius: int = 4) -> CycloElement:
    """An element of Z[w_15] with norm p, for p = 1 mod 15."""
    if p % 15 != 1:
        raise ResidueClassError(f"{p} is not 1 mod 15")
    return find_prime_element(p, 15, max_radius)


# ---------------------------------------------------------------------------
# 5-norms for p = 11 mod 15


@dataclass(frozen=True)
class Norm5Rep:
    """p = N_5(3 + sign (x-1) + 3(x-1) g) and 5p = N_5((x-1)(1+2x) + 3(x-1) g2)."""

    p: int
    sign: int
    g: IntPoly
    g2: IntPoly

    def element(self) -> IntPoly:
        x1 = parse_poly("x - 1")
        return 3 + self.sign * x1 + 3 * x1 * self.g

    def element_5p(self) -> IntPoly:
        x1 = parse_poly("x - 1")
        return x1 * parse_poly("1 + 2x") + 3 * x1 * self.g2


def _g2_from(sign: int, g: IntPoly) -> IntPoly:
    x1 = parse_poly("x - 1")
    if sign > 0:
        return -parse_poly("1 + x") - x1 * g
    return x1 * (g - 1)


def _in_3_times_x_minus_1(coords) -> bool:
    if any(c % 3 for c in coords):
        return False
    return sum(c // 3 for c in coords) % 5 == 0


def _normalize_norm5(z: CycloElement, p: int, max_unit_power: int) -> tuple[int, IntPoly] | None:
    """Find a unit multiple of a conjugate of z of the shape 3 +- (x-1) + 3(x-1)g."""
    x1 = CycloElement.from_poly(parse_poly("x - 1"), 5)
    eps = CycloElement.from_poly(parse_poly("1 + x"), 5)
    eps_inv = eps.inverse()
    powers = [0]
    for k in range(1, max_unit_power + 1):
        powers += [k, -k]
    conjugates = [z.conjugate(c) for c in (1, 2, 3, 4)]
    for k in powers:
        u = eps**k if k >= 0 else eps_inv ** (-k)
        for conj in conjugates:
            base = conj * u
            for j in range(5):
                w = base * CycloElement.root(5, j)
                for s_unit in (1, -1):
                    cand = w * s_unit
                    for sign in (1, -1):
                        rest = cand - CycloElement.one(5) * 3 - x1 * sign
                        if _in_3_times_x_minus_1(rest.coords):
                            y = IntPoly(c // 3 for c in rest.coords)
                            num = y - (y(1) // 5) * cyclotomic(5)
                            g = poly_exact_div(num, parse_poly("x - 1"))
                            return sign, g
    return None


@lru_cache(maxsize=4096)
def rep_norm5(p: int, box: int = 2, max_unit_power: int = 80) -> Norm5Rep:
    """Solve p = N_5(3 +- (x-1) + 3(x-1)g) with deg g <= 3, for p = 11 mod 15.

    A small coefficient box is scanned first. Otherwise a norm-p element of
    Z[w_5] is moved by units and conjugation into the required residue
    class modulo 3(x-1).
    """
    if p % 15 != 11:
        raise ResidueClassError(f"{p} is not 11 mod 15")
    x1 = parse_poly("x - 1")
    found = None
    for sign in (1, -1):
        for coeffs in itertools.product(range(-box, box + 1), repeat=4):
            g = IntPoly(coeffs)
            if norm_d(3 + sign * x1 + 3 * x1 * g, 5) == p:
                found = (sign, g)
                break
        if found:
            break
    if found is None:
        z = find_prime_element(p, 5)
        found = _normalize_norm5(z, p, max_unit_power)
        if found is None:
            raise SearchExhausted(f"no 5-norm representation for {p}")
    sign, g = found
    rep = Norm5Rep(p, sign, g, _g2_from(sign, g))
    if norm_d(rep.element(), 5) != p or norm_d(rep.element_5p(), 5) != 5 * p:
        raise RuntimeError(f"5-norm representation for {p} failed verification")
    return rep


# ---------------------------------------------------------------------------
# splitting, obstruction, Pell powers


@dataclass(frozen=True)
class SplittingData:
    p: int
    f: int
    count: int
    norm_exponent: int

    def as_dict(self) -> dict:
        return {"p": self.p, "f": self.f, "count": self.count, "norm_exponent": self.norm_exponent}


RAMIFICATION_NOTE = {
    3: "3 ramifies in Z[w_15]: 3 = unit * (1 - w^5)^2, and (1 - w^5) has norm 81",
    5: "5 ramifies in Z[w_15]: 5 = unit * (1 - w^3)^4, and (1 - w^3) has norm 25",
}


def splitting_data(p: int, n: int = 15) -> SplittingData:
    """How a prime p not dividing n splits in Z[w_n]."""
    if n % p == 0:
        raise ValueError(RAMIFICATION_NOTE.get(p, f"{p} ramifies in Z[w_{n}]"))
    f = multiplicative_order(p, n)
    return SplittingData(p, f, euler_phi(n) // f, f)


def quad_feasibility(p: int, q: int) -> bool:
    """Whether x^2 + pq y^2 = 4p has an integer solution (requires pq = 3 mod 4)."""
    if p == q or p % 2 == 0 or q % 2 == 0:
        raise ValueError("p and q must be distinct odd primes")
    if (p * q) % 4 != 3:
        raise ValueError(f"pq = {p * q} is not 3 mod 4")
    y = 0
    while p * q * y * y <= 4 * p:
        rest = 4 * p - p * q * y * y
        if isqrt(rest) ** 2 == rest:
            return True
        y += 1
    return False


def half_integer_power(k: int) -> tuple[int, int]:
    """(a_k, b_k) with ((3 + sqrt 5)/2)^k = (a_k + b_k sqrt 5)/2."""
    if k < 1:
        raise ValueError("k must be positive")
    a, b = 3, 1
    for _ in range(k - 1):
        a, b = (3 * a + 5 * b) // 2, (a + 3 * b) // 2
    return a, b
