"""Exact integer matrix helpers (fraction-free elimination)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant by Bareiss elimination with row pivoting."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        (a, b), (c, d) = rows
        return a * d - b * c
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            if aik:
                for j in range(k + 1, n):
                    ri[j] = (ri[j] * akk - aik * rk[j]) // prev
            else:
                for j in range(k + 1, n):
                    ri[j] = (ri[j] * akk) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def solve(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[Fraction]:
    """Solve A y = b exactly over Q. A must be square and nonsingular."""
    n = len(rows)
    a = [[Fraction(v) for v in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[k], a[piv] = a[piv], a[k]
        inv = 1 / a[k][k]
        a[k] = [v * inv for v in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [vi - f * vk for vi, vk in zip(a[i], a[k])]
    return [a[i][n] for i in range(n)]
