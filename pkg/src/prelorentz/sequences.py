"""Log-concavity and related checks on non-negative integer sequences.

Every comparison is cross-multiplied or done in ``Fraction``; nothing here
touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .exceptions import InputError


@dataclass(frozen=True)
class Check:
    """Result of a sequence test; ``index`` is the first violating ``k``."""

    holds: bool
    index: int | None = None

    def __bool__(self) -> bool:
        return self.holds


def _validate(s: Sequence[int]) -> list:
    s = list(s)
    for x in s:
        if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
            raise InputError(f"sequence entry {x!r} is not an exact number")
        if x < 0:
            raise InputError("sequence entries must be non-negative")
    return s


def is_log_concave(s: Sequence[int]) -> Check:
    s = _validate(s)
    for k in range(1, len(s) - 1):
        if s[k] * s[k] < s[k - 1] * s[k + 1]:
            return Check(False, k)
    return Check(True)


def is_ultra_log_concave(s: Sequence[int], n: int) -> Check:
    """Log-concavity of ``s_k / C(n, k)``; ``n`` must be at least ``len(s) - 1``."""
    s = _validate(s)
    if n < len(s) - 1:
        raise InputError(f"ambient degree {n} is below sequence length {len(s)} - 1")
    padded = s + [0] * (n + 1 - len(s))
    for k in range(1, n):
        lhs = Fraction(padded[k], comb(n, k)) ** 2
        rhs = Fraction(padded[k - 1], comb(n, k - 1)) * Fraction(padded[k + 1], comb(n, k + 1))
        if lhs < rhs:
            return Check(False, k)
    return Check(True)


def is_unimodal(s: Sequence[int]) -> bool:
    s = _validate(s)
    k = 0
    while k + 1 < len(s) and s[k] <= s[k + 1]:
        k += 1
    while k + 1 < len(s) and s[k] >= s[k + 1]:
        k += 1
    return k + 1 >= len(s)


def has_internal_zeros(s: Sequence[int]) -> bool:
    s = _validate(s)
    nz = [k for k, x in enumerate(s) if x]
    return bool(nz) and any(not s[k] for k in range(nz[0], nz[-1] + 1))


def shifted_sequence(a: Sequence[int], k: int) -> list:
    """Coefficients of ``(xy)^k * sum_m a_m x^m y^(d-m)`` read along powers of ``x``.

    Length ``d + 2k + 1`` with ``a`` placed at offsets ``k .. d + k``.
    """
    a = _validate(a)
    if k < 0:
        raise InputError("shift must be non-negative")
    return [0] * k + a + [0] * k
