"""Exact arithmetic kernel.

Every quantity in the package is either a Python ``int`` or a
``fractions.Fraction``; nothing is ever rounded.  This module adds the
Sylvester sequence, fractional parts, and the helpers that decide when a
computation may drop to 64-bit machine words.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Union

Rational = Fraction
RationalLike = Union[int, Fraction]

# Largest value an int64 lane may hold.
WORD_MAX = 2**63 - 1

_sylvester_cache: list[int] = [2]
_sylvester_lock = threading.Lock()


def sylvester(k: int) -> int:
    """Return s_k, where s_0 = 2 and s_{k+1} = s_0 * ... * s_k + 1.

    The cache is shared by the whole process and only ever appended to, so
    readers never see a partially written entry.
    """
    if k < 0:
        raise ValueError(f"sylvester index must be nonnegative, got {k}")
    if k < len(_sylvester_cache):
        return _sylvester_cache[k]
    with _sylvester_lock:
        while len(_sylvester_cache) <= k:
            last = _sylvester_cache[-1]
            # s_{k+1} - 1 = (s_k - 1) * s_k
            _sylvester_cache.append((last - 1) * last + 1)
    return _sylvester_cache[k]


def frac(q: RationalLike) -> Fraction:
    """Fractional part ``q - floor(q)``, always in [0, 1)."""
    q = Fraction(q)
    return q - math.floor(q)


def sylvester_prefix_sum(n: int) -> Fraction:
    """Exact value of 1/s_0 + ... + 1/s_n."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return sum((Fraction(1, sylvester(i)) for i in range(n + 1)), Fraction(0))


def fits_word(*values: int) -> bool:
    """True if every value lies in the signed 64-bit range."""
    return all(-WORD_MAX - 1 <= v <= WORD_MAX for v in values)


def gcd_all(values) -> int:
    """gcd of an iterable of integers (0 for an empty iterable)."""
    g = 0
    for v in values:
        g = math.gcd(g, v)
    return g


def format_rational(q: RationalLike) -> str:
    """Serialize as ``"p/q"`` in lowest terms, denominator always present."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """Inverse of :func:`format_rational`; also accepts bare integers."""
    return Fraction(text.strip())
