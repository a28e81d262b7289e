"""Exact rational matrices: characteristic polynomials, determinants, inertia.

Matrices are plain lists of row lists holding ``int`` or ``Fraction``.
Univariate polynomials are coefficient lists indexed by power.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import kernels
from .exceptions import InputError

Matrix = list[list]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    m = [list(r) for r in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise InputError("matrix must be square")
    for r in m:
        for x in r:
            if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
                raise InputError(f"matrix entry {x!r} is not an exact rational")
    return m


def is_symmetric(m: Matrix) -> bool:
    n = len(m)
    return all(m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n))


def charpoly(m: Sequence[Sequence]) -> list:
    """Coefficients of det(tI - M), lowest power first."""
    return kernels.charpoly(as_matrix(m))


def determinant(m: Sequence[Sequence]) -> int | Fraction:
    """Fraction-free Bareiss elimination with row pivoting."""
    a = as_matrix(m)
    n = len(a)
    if n == 0:
        return 1
    if not all(isinstance(x, int) for r in a for x in r):
        # Clear denominators, then rescale.
        from math import lcm

        den = 1
        for r in a:
            for x in r:
                if isinstance(x, Fraction):
                    den = lcm(den, x.denominator)
        scaled = [[int(x * den) for x in r] for r in a]
        d = determinant(scaled)
        res = Fraction(d, den**n)
        return res.numerator if res.denominator == 1 else res
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def principal_minor_sum(m: Sequence[Sequence], size: int) -> int | Fraction:
    """Sum of all principal minors of the given size."""
    from itertools import combinations

    a = as_matrix(m)
    total = 0
    for idx in combinations(range(len(a)), size):
        total += determinant([[a[i][j] for j in idx] for i in idx])
    return total


def trace(m: Sequence[Sequence]) -> int | Fraction:
    return sum(m[i][i] for i in range(len(m)))


def inertia(m: Sequence[Sequence]) -> tuple[int, int, int]:
    """(positive, zero, negative) eigenvalue counts of a symmetric matrix.

    Exact: characteristic polynomial plus Descartes' rule of signs, which is
    sharp because a symmetric matrix has a real-rooted characteristic
    polynomial.
    """
    a = as_matrix(m)
    if not is_symmetric(a):
        raise InputError("inertia needs a symmetric matrix")
    cp = kernels.charpoly(a)
    zero = 0
    while zero < len(cp) - 1 and cp[zero] == 0:
        zero += 1
    rest = cp[zero:]
    pos = kernels.sign_changes(rest)
    neg = kernels.sign_changes([c if k % 2 == 0 else -c for k, c in enumerate(rest)])
    return pos, zero, neg


def positive_eigenvalue_count(m: Sequence[Sequence]) -> int:
    a = as_matrix(m)
    if not is_symmetric(a):
        raise InputError("positive_eigenvalue_count needs a symmetric matrix")
    return kernels.positive_root_count(kernels.charpoly(a))


# -- univariate helpers -----------------------------------------------------


def _trim(p: list) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def upoly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    """Quotient and remainder over the rationals (lowest power first)."""
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(x) for x in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = Fraction(b[-1])
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        f = r[-1] / lead
        q[shift] = f
        for i, c in enumerate(b):
            r[shift + i] -= f * c
        r = _trim(r)
    return _trim(q), r


def upoly_monic(p: Sequence) -> list:
    p = _trim(p)
    if not p:
        return []
    lead = Fraction(p[-1])
    return [Fraction(c) / lead for c in p]


def upoly_gcd(a: Sequence, b: Sequence) -> list:
    """Monic greatest common divisor via the Euclidean algorithm."""
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, upoly_divmod(a, b)[1]
    return upoly_monic(a)


def upoly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out
