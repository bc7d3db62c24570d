"""Good and bad elements of Z[w_15].

An element xi with gcd(N_15(xi), 15) = 1 is a unit times

    first form:  (x^5 - 1) + s x^j Phi_3 B + (x - 1) Phi_3 Phi_5 g
    second form: (x^3 - 1) + s x^j Phi_5 B + (x - 1) Phi_3 Phi_5 g

with B = 1 (good) or B = x - 1 (bad). Two independent routes produce the tag:

* the reduction pipeline (``decompose_alpha_beta`` -> ``reduce_alpha`` ->
  ``reduce_beta``), which reads the tag off the class of B;
* a residue computation in (Z[w]/p5)^* x (Z[w]/p3)^* = F_25^* x F_81^*,
  where p5 = (Phi_3(w)) and p3 = (Phi_5(w)). The forms above are exactly
  the residue classes modulo the ideal I = p5 p3 = ((x-1) Phi_3 Phi_5),
  so a breadth-first search over the unit images finds the unit, sign and
  shift, and the cofactor g follows by exact division.

``classify_element`` runs both and refuses to answer if they disagree.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal

from .cyclonorm import CycloElement, norm_d
from .polyring import (
    IntPoly,
    cyclotomic,
    parse_poly,
    poly_divmod,
    poly_exact_div,
    render_poly,
)

Tag = Literal["good", "bad"]
Form = Literal["first", "second"]

X1 = parse_poly("x - 1")
PHI3 = cyclotomic(3)
PHI5 = cyclotomic(5)
PHI15 = cyclotomic(15)

UNIT_GENERATORS: tuple[IntPoly, ...] = tuple(parse_poly(s) for s in ("-x", "x - 1", "x + 1", "x^3 + 1"))
UNIT_NAMES = ("-x", "x - 1", "x + 1", "x^3 + 1")


class PreconditionError(ValueError):
    """gcd(N_15, 15) != 1."""


def _check_coprime(F: IntPoly) -> int:
    N = norm_d(F, 15)
    if N % 3 == 0 or N % 5 == 0:
        raise PreconditionError(f"N_15 = {N} is not prime to 15")
    return N


def _balanced(c: int, m: int) -> int:
    r = c % m
    return r - m if 2 * r > m else r


# ---------------------------------------------------------------------------
# reduction pipeline


def decompose_alpha_beta(F: IntPoly) -> tuple[IntPoly, IntPoly]:
    """F = alpha (x^5 - 1) + beta Phi_3 - F(1) Phi_5 Phi_15, beta = (x^3 + 1) F."""
    _check_coprime(F)
    F1 = F(1)
    alpha = poly_exact_div(F1 * PHI15 - IntPoly.monomial(1) * F, X1)
    beta = parse_poly("x^3 + 1") * F
    if alpha * parse_poly("x^5 - 1") + beta * PHI3 - F1 * PHI5 * PHI15 != F:
        raise RuntimeError("alpha/beta decomposition failed")
    return alpha, beta


@lru_cache(maxsize=None)
def _alpha_table() -> dict[tuple[int, int], tuple[int, int, int]]:
    """Residue mod (5, Phi_3) of s x^j (x-1)^i  ->  (s, j, i).

    (x - 1) generates F_25^*, so the 24 triples cover every nonzero residue once.
    """
    table = {}
    for i in range(4):
        for j in range(3):
            for s in (1, -1):
                P = s * IntPoly.monomial(j) * X1**i
                table[_mod5_phi3(P)] = (s, j, i)
    if len(table) != 24:
        raise RuntimeError("alpha table is not a bijection")
    return table


def _mod5_phi3(P: IntPoly) -> tuple[int, int]:
    c = [0, 0, 0]
    for k, v in enumerate(P.coeffs):
        c[k % 3] += v
    return ((c[0] - c[2]) % 5, (c[1] - c[2]) % 5)


@dataclass(frozen=True)
class AlphaReduction:
    """alpha = sign x^j (x-1)^i + 5 t1 + q1 Phi_3."""

    sign: int
    j: int
    i: int
    residue: IntPoly
    t1: IntPoly
    q1: IntPoly


def reduce_alpha(alpha: IntPoly) -> AlphaReduction:
    a0, a1 = _mod5_phi3(alpha)
    if a0 == 0 and a1 == 0:
        raise RuntimeError("alpha vanishes mod (5, Phi_3)")
    s, j, i = _alpha_table()[(a0, a1)]
    residue = IntPoly([_balanced(a0, 5), _balanced(a1, 5)])
    target = s * IntPoly.monomial(j) * X1**i
    q1, rem = poly_divmod(alpha - target, PHI3)
    if any(c % 5 for c in rem.coeffs):
        raise RuntimeError("alpha residue mismatch")
    t1 = IntPoly(c // 5 for c in rem.coeffs)
    if target + 5 * t1 + q1 * PHI3 != alpha:
        raise RuntimeError("alpha trackers do not reproduce alpha")
    return AlphaReduction(s, j, i, residue, t1, q1)


TYPE1 = tuple(parse_poly(s) for s in ("1", "x + 1", "x^2 + 1", "1 - x + x^2"))
TYPE2 = tuple(parse_poly(s) for s in ("x - 1", "x^2 - 1", "1 + x - x^2", "1 - x - x^2", "1 - x - x^3", "1 - x + x^3"))
# 1 + x - x^3 = Phi_5 - 3x^3 - x^2 (1 - x + x^2): matches as -x^2 (1 - x + x^2).
_EXTRA = ((parse_poly("1 + x - x^3"), parse_poly("1 - x + x^2"), -1, 2),)


def _cyclic5(P: IntPoly) -> tuple[int, ...]:
    c = [0] * 5
    for k, v in enumerate(P.coeffs):
        c[k % 5] += v
    return tuple(_balanced(v, 3) for v in c)


def _sub_ones(v: tuple[int, ...], sigma: int) -> tuple[int, ...]:
    return tuple(_balanced(a - sigma, 3) for a in v)


def normalize_cycle(v: tuple[int, ...]) -> tuple[int, ...]:
    """Reduce a 5-cycle of residues mod 3 to at most three nonzero entries.

    Subtracting sigma (1, 1, 1, 1, 1) is adding a multiple of Phi_5. Entries
    are scanned in increasing index and the first sign occurring at least
    twice is used.
    """
    if v[4]:
        v = _sub_ones(v, v[4])
    nz = [a for a in v if a]
    if len(nz) >= 4 or (len(nz) == 3 and len(set(nz)) == 1):
        sigma = next(a for a in v if a and nz.count(a) >= 2)
        v = _sub_ones(v, sigma)
    return v


@lru_cache(maxsize=None)
def _beta_patterns() -> dict[tuple[int, ...], tuple[int, int, int, IntPoly]]:
    """cycle -> (type, sign, shift, B) for every s x^j B with B in the two lists."""
    out: dict[tuple[int, ...], tuple[int, int, int, IntPoly]] = {}
    entries = [(1, B, B, 1, 0) for B in TYPE1] + [(2, B, B, 1, 0) for B in TYPE2]
    entries += [(1, shown, B, s0, j0) for shown, B, s0, j0 in _EXTRA]
    for btype, shown, B, s0, j0 in entries:
        for j in range(5):
            for s in (1, -1):
                key = _cyclic5(s * IntPoly.monomial(j) * shown)
                out.setdefault(key, (btype, s * s0, (j + j0) % 5, B))
    return out


@dataclass(frozen=True)
class BetaReduction:
    """beta = (x-1)^i beta2 + s1 Phi_15 and beta2 = sign x^j B + 3 t2 + q2 Phi_5."""

    b_type: int
    B: IntPoly
    sign: int
    j: int
    beta2: IntPoly
    s1: IntPoly
    t2: IntPoly
    q2: IntPoly


def reduce_beta(beta: IntPoly, i: int) -> BetaReduction:
    beta2, s1 = beta, IntPoly()
    for k in range(i):
        c = beta2(1)
        s1 = s1 + c * X1**k
        beta2 = poly_exact_div(beta2 - c * PHI15, X1)
    if X1**i * beta2 + s1 * PHI15 != beta:
        raise RuntimeError("(x-1)-extraction failed")

    cyc = normalize_cycle(_cyclic5(beta2))
    if not any(cyc):
        raise RuntimeError("beta vanishes mod (3, Phi_5)")
    match = _beta_patterns().get(cyc)
    if match is None:
        raise RuntimeError(f"unmatched beta residue {cyc}")
    btype, s, j, B = match
    target = s * IntPoly.monomial(j) * B
    q2, rem = poly_divmod(beta2 - target, PHI5)
    if any(c % 3 for c in rem.coeffs):
        raise RuntimeError("beta residue mismatch")
    t2 = IntPoly(c // 3 for c in rem.coeffs)
    if target + 3 * t2 + q2 * PHI5 != beta2:
        raise RuntimeError("beta trackers do not reproduce beta2")
    return BetaReduction(btype, B, s, j, beta2, s1, t2, q2)


@dataclass(frozen=True)
class PipelineTrace:
    F: IntPoly
    alpha: AlphaReduction
    beta: BetaReduction

    @property
    def tag(self) -> Tag:
        return "good" if self.beta.b_type == 1 else "bad"


def reduction_pipeline(F: IntPoly) -> PipelineTrace:
    """Run the three reduction steps and check the combined identity exactly.

    F = (x-1)^i (sa x^ja (x^5-1) + sb x^jb Phi_3 B) + 5 t1 (x^5-1) + 3 (x-1)^i t2 Phi_3
        + (q1 (x-1) + (x-1)^i q2) Phi_3 Phi_5 + (s1 Phi_3 - F(1) Phi_5) Phi_15
    """
    alpha, beta = decompose_alpha_beta(F)
    ra = reduce_alpha(alpha)
    rb = reduce_beta(beta, ra.i)
    xi = X1**ra.i
    lhs = (
        xi * (ra.sign * IntPoly.monomial(ra.j) * parse_poly("x^5 - 1") + rb.sign * IntPoly.monomial(rb.j) * PHI3 * rb.B)
        + 5 * ra.t1 * parse_poly("x^5 - 1")
        + 3 * xi * rb.t2 * PHI3
        + (ra.q1 * X1 + xi * rb.q2) * PHI3 * PHI5
        + (rb.s1 * PHI3 - F(1) * PHI5) * PHI15
    )
    if lhs != F:
        raise RuntimeError("reduction pipeline lost the value of F")
    return PipelineTrace(F, ra, rb)


# ---------------------------------------------------------------------------
# residue route


class _Field:
    """Z[x]/(p, Phi) for a monic cyclotomic Phi irreducible mod p."""

    def __init__(self, p: int, d: int):
        self.p, self.d = p, d
        self.phi = cyclotomic(d).coeffs
        self.m = len(self.phi) - 1
        self.order = p**self.m - 1
        elems = self._enumerate()
        self.gen = next(e for e in elems if self._order_of(e) == self.order)
        self.log: dict[tuple[int, ...], int] = {}
        cur = self.one()
        for k in range(self.order):
            self.log[cur] = k
            cur = self.mul(cur, self.gen)

    def one(self) -> tuple[int, ...]:
        return (1,) + (0,) * (self.m - 1)

    def _enumerate(self):
        return [t for t in itertools.product(range(self.p), repeat=self.m) if any(t)]

    def reduce(self, coeffs) -> tuple[int, ...]:
        c = [0] * self.d
        for k, v in enumerate(coeffs):
            c[k % self.d] += v
        # x^d = 1; fold positions >= m using Phi
        for k in range(self.d - 1, self.m - 1, -1):
            top = c[k]
            if top:
                for i, pc in enumerate(self.phi):
                    c[k - self.m + i] -= top * pc
        return tuple(v % self.p for v in c[: self.m])

    def mul(self, a, b) -> tuple[int, ...]:
        prod_ = [0] * (2 * self.m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod_[i + j] += x * y
        return self.reduce(prod_)

    def _order_of(self, e) -> int:
        k, cur = 1, e
        while cur != self.one():
            cur = self.mul(cur, e)
            k += 1
        return k

    def log_of(self, P: IntPoly) -> int:
        r = self.reduce(P.coeffs)
        if not any(r):
            raise PreconditionError("element lies in the prime")
        return self.log[r]


@lru_cache(maxsize=None)
def _fields() -> tuple[_Field, _Field]:
    return _Field(5, 3), _Field(3, 5)


def residue_log(P: IntPoly) -> tuple[int, int]:
    """Discrete logs of P in F_25^* (mod p5) and F_81^* (mod p3)."""
    f25, f81 = _fields()
    return f25.log_of(P), f81.log_of(P)


# Base elements of the four residue cosets, keyed by (form, tag).
_BASES = {
    ("first", "good"): (parse_poly("x^5 - 1"), PHI3),
    ("first", "bad"): (parse_poly("x^5 - 1"), parse_poly("x^3 - 1")),
    ("second", "good"): (parse_poly("x^3 - 1"), PHI5),
    ("second", "bad"): (parse_poly("x^3 - 1"), parse_poly("x^5 - 1")),
}


def _base_element(form: Form, tag: Tag, sign: int, j: int) -> IntPoly:
    fixed, moving = _BASES[(form, tag)]
    return fixed + sign * IntPoly.monomial(j) * moving


def _base_log(form: Form, tag: Tag) -> tuple[int, int]:
    fixed, moving = _BASES[(form, tag)]
    f25, f81 = _fields()
    if form == "first":
        return f25.log_of(fixed), f81.log_of(moving)
    return f25.log_of(moving), f81.log_of(fixed)


@lru_cache(maxsize=None)
def _coset_words(form: Form) -> dict[tuple[int, int], tuple[int, ...]]:
    """BFS over the subgroup generated by the unit images and the moves s x^j.

    Words are (e_-x, e_x-1, e_x+1, e_x^3+1, sign bit, shift) with the sign and
    shift acting on the F_81 component (first form) or F_25 (second form).
    """
    f25, f81 = _fields()
    gens = [residue_log(u) for u in UNIT_GENERATORS]
    if form == "first":
        moves = [(0, f81.log_of(IntPoly([-1]))), (0, f81.log_of(IntPoly.monomial(1)))]
    else:
        moves = [(f25.log_of(IntPoly([-1])), 0), (f25.log_of(IntPoly.monomial(1)), 0)]
    steps = gens + moves
    limits = (30, None, None, None, 2, 5)
    words = {(0, 0): (0,) * 6}
    queue = deque([(0, 0)])
    while queue:
        cur = queue.popleft()
        word = words[cur]
        for k, (da, db) in enumerate(steps):
            if limits[k] is not None and word[k] + 1 >= limits[k]:
                continue
            nxt = ((cur[0] + da) % f25.order, (cur[1] + db) % f81.order)
            if nxt not in words:
                words[nxt] = word[:k] + (word[k] + 1,) + word[k + 1 :]
                queue.append(nxt)
    return words


def residue_tag(xi: CycloElement, form: Form = "first") -> tuple[Tag, tuple[int, ...]]:
    """Tag and unit/move word for xi from residues alone."""
    la, lb = residue_log(xi.to_poly())
    f25, f81 = _fields()
    words = _coset_words(form)
    hits = []
    for tag in ("good", "bad"):
        ba, bb = _base_log(form, tag)
        key = ((la - ba) % f25.order, (lb - bb) % f81.order)
        if key in words:
            hits.append((tag, words[key]))
    if len(hits) != 1:
        raise RuntimeError(f"residue classes are not exclusive: {hits}")
    return hits[0]


# ---------------------------------------------------------------------------
# independent character criterion


def _legendre(a: int, p: int) -> int:
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def character_tag(F: IntPoly) -> Tag:
    """good iff (N_5(F) | 3) * (3 N_3(F) | 5) = +1."""
    _check_coprime(F)
    v = _legendre(norm_d(F, 5), 3) * _legendre(3 * norm_d(F, 3), 5)
    return "good" if v == 1 else "bad"


# ---------------------------------------------------------------------------
# canonical forms


@lru_cache(maxsize=None)
def _generator_elements() -> tuple[tuple[CycloElement, CycloElement], ...]:
    out = []
    for u in UNIT_GENERATORS:
        e = CycloElement.from_poly(u, 15)
        out.append((e, e.inverse()))
    return tuple(out)


def unit_from_ledger(ledger: tuple[int, ...]) -> CycloElement:
    """Product of the generators -x, x-1, x+1, x^3+1 raised to the ledger exponents."""
    acc = CycloElement.one(15)
    for (e, inv), k in zip(_generator_elements(), ledger):
        if k:
            acc = acc * (e**k if k > 0 else inv ** (-k))
    return acc


_MODULUS = X1 * PHI3 * PHI5


@dataclass(frozen=True)
class CanonicalForm:
    form: Form
    sign: int
    shift: int
    b_type: Literal["one", "x_minus_1"]
    cofactor: IntPoly
    unit_ledger: tuple[int, ...] = field(default=(0, 0, 0, 0))

    @property
    def tag(self) -> Tag:
        return "good" if self.b_type == "one" else "bad"

    @property
    def B(self) -> IntPoly:
        return IntPoly([1]) if self.b_type == "one" else X1

    def polynomial(self) -> IntPoly:
        """The displayed form with its cofactor, as an integer polynomial."""
        if self.form == "first":
            head = parse_poly("x^5 - 1") + self.sign * IntPoly.monomial(self.shift) * PHI3 * self.B
        else:
            head = parse_poly("x^3 - 1") + self.sign * IntPoly.monomial(self.shift) * PHI5 * self.B
        return head + _MODULUS * self.cofactor

    def reconstruct(self) -> CycloElement:
        return CycloElement.from_poly(self.polynomial(), 15)

    def unit(self) -> CycloElement:
        return unit_from_ledger(self.unit_ledger)

    def as_dict(self) -> dict:
        return {
            "form": self.form,
            "sign": self.sign,
            "shift": self.shift,
            "b_type": self.b_type,
            "cofactor": render_poly(self.cofactor),
            "unit_ledger": dict(zip(UNIT_NAMES, self.unit_ledger)),
            "polynomial": render_poly(self.polynomial()),
        }


def canonical_form(xi: CycloElement, form: Form = "first") -> CanonicalForm:
    tag, word = residue_tag(xi, form)
    ledger, sign, shift = word[:4], (-1) ** word[4], word[5]
    eta = xi * unit_from_ledger(tuple(-k for k in ledger))
    b_type = "one" if tag == "good" else "x_minus_1"
    head = CycloElement.from_poly(_base_element(form, tag, sign, shift), 15)
    g = (eta - head).exact_div(CycloElement.from_poly(_MODULUS, 15))
    cf = CanonicalForm(form, sign, shift, b_type, g.to_poly(), ledger)
    if cf.reconstruct() * cf.unit() != xi:
        raise RuntimeError("canonical form does not reconstruct the element")
    return cf


def classify_element(xi: CycloElement | IntPoly, form: Form = "first") -> tuple[Tag, CanonicalForm]:
    """Good/bad tag with a canonical form whose reconstruction times its unit is xi."""
    if isinstance(xi, IntPoly):
        xi = CycloElement.from_poly(xi, 15)
    if xi.d != 15:
        raise ValueError("conductor must be 15")
    trace = reduction_pipeline(xi.to_poly())
    cf = canonical_form(xi, form)
    other, _ = residue_tag(xi, "second" if form == "first" else "first")
    if not (trace.tag == cf.tag == other):
        raise RuntimeError(f"routes disagree: pipeline {trace.tag}, residues {cf.tag}/{other}")
    return cf.tag, cf


def element_tag(xi: CycloElement | IntPoly) -> Tag:
    """Tag only: the pipeline, checked against the residue route."""
    F = xi if isinstance(xi, IntPoly) else xi.to_poly()
    tag = reduction_pipeline(F).tag
    if residue_tag(CycloElement.from_poly(F, 15))[0] != tag:
        raise RuntimeError("pipeline and residue tags disagree")
    return tag


@lru_cache(maxsize=None)
def classify_prime(p: int) -> Tag:
    """Tag of a prime p = 1 mod 15, via any element of norm p."""
    from .numberfield import find_norm_element

    return classify_element(find_norm_element(p))[0]


LEMMA_TAGS = {4: "good", 14: "bad"}


@dataclass(frozen=True)
class PrimePowerTag:
    p: int
    exponent: int
    tag: Tag
    source: Literal["lemma", "computed"]

    def as_dict(self) -> dict:
        return {"p": self.p, "exponent": self.exponent, "tag": self.tag, "source": self.source}


def prime_power_tag(p: int, verify: bool = False) -> PrimePowerTag:
    """Tag of p^f as a 15-norm, f the residue degree of p.

    f = 4 (p = +-2 mod 5) is good and f = 2 is good for p = 4 mod 15 and bad
    for p = 14 mod 15. Other classes are computed from an explicit element of
    norm p^f; with ``verify`` the lemma cases are computed as well.
    """
    from .numberfield import find_prime_element, splitting_data

    f = splitting_data(p).f
    if f == 1:
        return PrimePowerTag(p, 1, classify_prime(p), "computed")
    if f == 4:
        claimed: Tag | None = "good"
    else:
        claimed = LEMMA_TAGS.get(p % 15)
    if claimed is not None and not verify:
        return PrimePowerTag(p, f, claimed, "lemma")
    computed = classify_element(find_prime_element(p, 15))[0]
    if claimed is not None and computed != claimed:
        raise RuntimeError(f"p = {p}: computed {computed}, expected {claimed}")
    return PrimePowerTag(p, f, computed, "lemma" if claimed else "computed")
