"""Exact evaluation of floor(n! e) and floor(n! (e - q)).

e is never approximated. Every quantity is an ``int`` or a
``fractions.Fraction``, and expressions containing e are rewritten through
floor(n! e) = sum_{i=0}^{n} n!/i!.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError

__all__ = [
    "factorial",
    "floor_factorial_e",
    "check_euler_recursion",
    "floor_scaled",
    "as_natural",
]


def as_natural(value, name="value"):
    """Return ``value`` as a nonnegative ``int`` or raise DomainError."""
    if isinstance(value, bool) or not isinstance(value, int):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if value < 0:
        raise DomainError(f"{name} must be nonnegative, got {value}")
    return value


def factorial(n):
    return math.factorial(as_natural(n, "n"))


def floor_factorial_e(n):
    """floor(n! e) as the exact integer sum of n!/i! for i = 0..n.

    Raises DomainError for n = 0: the identity is only stated for n >= 1.
    """
    n = as_natural(n, "n")
    if n == 0:
        raise DomainError("identity stated for n >= 1")
    return _floor_factorial_e(n)


@lru_cache(maxsize=1024)
def _floor_factorial_e(n):
    # n!/i! for i = n, n-1, ..., 0 is the running product (i+1)(i+2)...n
    total, term = 1, 1
    for j in range(n, 0, -1):
        term *= j
        total += term
    return total


def check_euler_recursion(n):
    """True iff floor((n+1)! e) == (n+1) floor(n! e) + 1."""
    n = as_natural(n, "n")
    if n < 1:
        raise DomainError("recursion stated for n >= 1")
    return floor_factorial_e(n + 1) == (n + 1) * floor_factorial_e(n) + 1


def floor_scaled(n, q):
    """floor(n! (e - q)), valid when n! q is an integer.

    Since floor(x - m) = floor(x) - m for integer m, the result is
    ``floor_factorial_e(n) - n! q``. Non-integer ``n! q`` and negative
    results are rejected rather than approximated.
    """
    n = as_natural(n, "n")
    if n < 1:
        raise DomainError("identity stated for n >= 1")
    shift = math.factorial(n) * Fraction(q)
    if shift.denominator != 1:
        raise DomainError(f"closed form requires n!q integral; {n}!*{q} = {shift}")
    result = floor_factorial_e(n) - shift.numerator
    if result < 0:
        raise DomainError(f"floor({n}!(e - {q})) would be negative")
    return result
