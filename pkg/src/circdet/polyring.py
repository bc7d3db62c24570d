"""Dense univariate polynomials over the integers.

Everything here is exact: coefficients are Python ints, division is only
ever performed when it is known (or checked) to be exact, and resultants are
computed fraction-free.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Sequence


class ParseError(ValueError):
    """Malformed polynomial text. ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class InexactDivisionError(ArithmeticError):
    """Raised by :func:`poly_exact_div` when the divisor leaves a remainder."""

    def __init__(self, remainder: "IntPoly"):
        super().__init__(f"division is not exact, remainder {render_poly(remainder)}")
        self.remainder = remainder


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IntPoly:
    """Immutable integer polynomial; ``coeffs[i]`` is the coefficient of x^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _trim(int(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPoly":
        if k < 0:
            raise ValueError("negative exponent")
        return cls([0] * k + [c])

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly.const(other)
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPoly({render_poly(self)!r})"

    def __str__(self) -> str:
        return render_poly(self)

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self.coeffs)

    def __add__(self, other) -> "IntPoly":
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    __radd__ = __add__

    def __sub__(self, other) -> "IntPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "IntPoly":
        return _coerce(other) - self

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        a, b = self.coeffs, _coerce(other).coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result, base = IntPoly.const(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, k: int) -> "IntPoly":
        """Multiply by x^k (k >= 0)."""
        if k < 0:
            raise ValueError("negative shift")
        return IntPoly([0] * k + list(self.coeffs)) if self.coeffs else self

    def compose_power(self, k: int) -> "IntPoly":
        """Return F(x^k) for k >= 1."""
        if k < 1:
            raise ValueError("k must be positive")
        out = [0] * (k * self.degree + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return IntPoly(out)

    def reciprocal(self) -> "IntPoly":
        """x^deg F(1/x)."""
        return IntPoly(reversed(self.coeffs))

    def content(self) -> int:
        from math import gcd

        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g


def _coerce(p) -> IntPoly:
    if isinstance(p, IntPoly):
        return p
    if isinstance(p, int):
        return IntPoly.const(p)
    raise TypeError(f"cannot use {type(p).__name__} as a polynomial")


X = IntPoly([0, 1])
ONE = IntPoly([1])
ZERO = IntPoly()


# ---------------------------------------------------------------------------
# text format

_TERM = re.compile(r"\s*([+\-−])?\s*(\d+)?\s*(\*?\s*x\s*(?:\^\s*(-?\d+))?)?")


def parse_poly(text: str) -> IntPoly:
    """Parse ``"1 - x + 2x^3"`` or ``"[1,-1,0,2]"`` into an :class:`IntPoly`."""
    s = text.strip()
    if s.startswith("["):
        return _parse_list(text)
    if not s:
        raise ParseError("empty polynomial", 0)
    coeffs: dict[int, int] = {}
    pos = 0
    n = len(text)
    first = True
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TERM.match(text, pos)
        sign, digits, xpart, exp = m.group(1), m.group(2), m.group(3), m.group(4)
        if not first and sign is None:
            raise ParseError("expected '+' or '-'", _byte_offset(text, pos))
        if digits is None and xpart is None:
            raise ParseError("expected a term", _byte_offset(text, m.end() if sign else pos))
        if xpart is not None and "*" in xpart and digits is None:
            raise ParseError("'*' without a coefficient", _byte_offset(text, m.start(3)))
        c = int(digits) if digits is not None else 1
        if sign in ("-", "−"):
            c = -c
        if xpart is None:
            k = 0
        elif exp is None:
            k = 1
        else:
            k = int(exp)
            if k < 0:
                raise ParseError("negative exponent", _byte_offset(text, m.start(4)))
        coeffs[k] = coeffs.get(k, 0) + c
        pos = m.end()
        first = False
    if not coeffs:
        raise ParseError("empty polynomial", 0)
    out = [0] * (max(coeffs) + 1)
    for k, c in coeffs.items():
        out[k] += c
    return IntPoly(out)


def _parse_list(text: str) -> IntPoly:
    s = text.strip()
    start = text.index("[")
    if not s.endswith("]"):
        raise ParseError("missing ']'", _byte_offset(text, len(text.rstrip())))
    body = text[start + 1 : text.rindex("]")]
    if not body.strip():
        return IntPoly()
    out = []
    offset = start + 1
    for item in body.split(","):
        tok = item.strip().replace("−", "-")
        if not re.fullmatch(r"[+-]?\d+", tok):
            raise ParseError(f"bad coefficient {item.strip()!r}", _byte_offset(text, offset))
        out.append(int(tok))
        offset += len(item) + 1
    return IntPoly(out)


def _byte_offset(text: str, char_index: int) -> int:
    return len(text[:char_index].encode("utf-8"))


def render_poly(p: IntPoly) -> str:
    """Canonical text: ascending powers, explicit signs, unit coefficients elided."""
    if not p.coeffs:
        return "0"
    parts = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = "x" if k == 1 else f"x^{k}"
            body = mono if mag == 1 else f"{mag}{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def render_list(p: IntPoly) -> str:
    return "[" + ",".join(str(c) for c in p.coeffs) + "]"


# ---------------------------------------------------------------------------
# arithmetic in Z[x]/(x^n - 1)


def reduce_cyclic(F: IntPoly | Sequence[int], n: int) -> IntPoly:
    """Fold exponents modulo n, i.e. reduce modulo x^n - 1."""
    if n < 1:
        raise ValueError("n must be positive")
    coeffs = F.coeffs if isinstance(F, IntPoly) else F
    out = [0] * n
    for i, c in enumerate(coeffs):
        out[i % n] += c
    return IntPoly(out)


def cyclic_vector(F: IntPoly, n: int) -> list[int]:
    """Length-n coefficient vector of F mod x^n - 1."""
    r = reduce_cyclic(F, n).coeffs
    return list(r) + [0] * (n - len(r))


def poly_mul_mod(F: IntPoly, G: IntPoly, n: int) -> IntPoly:
    """F*G reduced modulo x^n - 1 (degree < n)."""
    a = cyclic_vector(F, n)
    b = cyclic_vector(G, n)
    out = [0] * n
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[(i + j) % n] += x * y
    return IntPoly(out)


def x_power_mod(k: int, n: int) -> IntPoly:
    """x^k in Z[x]/(x^n - 1); negative k allowed."""
    return IntPoly.monomial(k % n)


def geometric_sum(k: int, n: int | None = None) -> IntPoly:
    """(x^k - 1)/(x - 1) as a Laurent polynomial, optionally folded mod x^n - 1.

    For k < 0 this is -(x^k + ... + x^-1). Without ``n`` only k >= 0 is allowed.
    Folding is done arithmetically so huge k is cheap.
    """
    if n is None:
        if k < 0:
            raise ValueError("negative k needs a modulus")
        return IntPoly([1] * k)
    if k >= 0:
        q, r = divmod(k, n)
        return IntPoly([q + (1 if i < r else 0) for i in range(n)])
    # -(x^k + ... + x^{-1}) = -x^k (x^{-k} - 1)/(x - 1)
    pos = geometric_sum(-k, n)
    return poly_mul_mod(-pos, x_power_mod(k, n), n)


# ---------------------------------------------------------------------------
# division


def poly_divmod(F: IntPoly, D: IntPoly) -> tuple[IntPoly, IntPoly]:
    """Quotient and remainder, requiring every step's division by lc(D) to be exact.

    Always succeeds when D is monic (or lc(D) = -1).
    """
    if D.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(F.coeffs)
    dd = D.degree
    lc = D.lc
    q = [0] * max(len(r) - dd, 0)
    d = D.coeffs
    for k in range(len(r) - 1, dd - 1, -1):
        c = r[k]
        if c == 0:
            continue
        t, rem = divmod(c, lc)
        if rem:
            raise InexactDivisionError(IntPoly(r))
        q[k - dd] = t
        base = k - dd
        for i, di in enumerate(d):
            if di:
                r[base + i] -= t * di
    return IntPoly(q), IntPoly(r[:dd] if dd > 0 else [])


def poly_exact_div(F: IntPoly, D: IntPoly) -> IntPoly:
    """Exact quotient F / D in Z[x]; raises :class:`InexactDivisionError` otherwise."""
    q, r = poly_divmod(F, D)
    if not r.is_zero():
        raise InexactDivisionError(r)
    return q


def poly_rem(F: IntPoly, D: IntPoly) -> IntPoly:
    return poly_divmod(F, D)[1]


def pseudo_rem(A: IntPoly, B: IntPoly) -> IntPoly:
    """prem(A, B): remainder of lc(B)^(deg A - deg B + 1) * A divided by B."""
    r = list(A.coeffs)
    db = B.degree
    b = B.coeffs
    lc = B.lc
    e = len(r) - 1 - db + 1
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        r = [lc * x for x in r]
        if c:
            base = k - db
            for i, bi in enumerate(b):
                r[base + i] -= c * bi
        r.pop()
        e -= 1
    if e > 0:
        r = [x * lc**e for x in r]
    return IntPoly(r)


# ---------------------------------------------------------------------------
# cyclotomic polynomials


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def _cyclotomic(d: int) -> IntPoly:
    num = IntPoly.monomial(d) - ONE
    for e in divisors(d)[:-1]:
        num = poly_exact_div(num, _cyclotomic(e))
    return num


def cyclotomic(d: int) -> IntPoly:
    """The d-th cyclotomic polynomial."""
    if d < 1:
        raise ValueError("d must be positive")
    return _cyclotomic(d)


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


# ---------------------------------------------------------------------------
# resultants


def _trim_list(c: list[int]) -> list[int]:
    while c and not c[-1]:
        c.pop()
    return c


def _prem_list(r: list[int], b: list[int]) -> list[int]:
    db = len(b) - 1
    lc = b[-1]
    e = len(r) - db
    r = list(r)
    for k in range(len(r) - 1, db - 1, -1):
        c = r.pop()
        if lc != 1:
            r = [lc * x for x in r]
        if c:
            base = k - db
            for i in range(db):
                r[base + i] -= c * b[i]
        e -= 1
    if e > 0:
        f = lc**e
        r = [x * f for x in r]
    return _trim_list(r)


def resultant_coeffs(a: list[int], b: list[int]) -> int:
    """Res of two nonzero polynomials given as trimmed ascending coefficient lists.

    Subresultant pseudo-remainder sequence; no rationals involved.
    """
    A, B = list(a), list(b)
    if not A or not B:
        raise ValueError("resultant of the zero polynomial")
    s = 1
    if len(A) < len(B):
        A, B = B, A
        if (len(A) - 1) % 2 and (len(B) - 1) % 2:
            s = -s
    if len(B) == 1:
        return s * B[0] ** (len(A) - 1)
    g = h = 1
    while len(B) > 1:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        R = _prem_list(A, B)
        if not R:
            return 0
        A = B
        div = g * h**delta
        B = [c // div for c in R] if div != 1 else R
        g = A[-1]
        if delta:
            h = g**delta // h ** (delta - 1)
    da = len(A) - 1
    h = B[0] ** da // h ** (da - 1) if da > 0 else 1
    return s * h


def resultant(F: IntPoly, G: IntPoly) -> int:
    """Res(F, G) = lc(F)^deg G * prod G(r) over the roots r of F."""
    if F.is_zero() or G.is_zero():
        raise ValueError("resultant of the zero polynomial")
    return resultant_coeffs(list(F.coeffs), list(G.coeffs))


def sylvester_matrix(F: IntPoly, G: IntPoly) -> list[list[int]]:
    m, n = F.degree, G.degree
    size = m + n
    rows = []
    fc = list(reversed(F.coeffs))
    gc = list(reversed(G.coeffs))
    for i in range(n):
        rows.append([0] * i + fc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (size - n - 1 - i))
    return rows


def resultant_sylvester(F: IntPoly, G: IntPoly) -> int:
    """Res(F, G) as the Bareiss determinant of the Sylvester matrix (cross-check path)."""
    from .intmat import det

    if F.is_zero() or G.is_zero():
        raise ValueError("resultant of the zero polynomial")
    if F.degree == 0 and G.degree == 0:
        return 1
    return det(sylvester_matrix(F, G))
