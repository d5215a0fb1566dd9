"""Closed forms for PMS polynomials of paths, cycles, caterpillars and complete k-ary trees."""

from __future__ import annotations

from functools import lru_cache
from math import comb

from .errors import GraphArgumentError
from .poly import ONE, Z, Polynomial


@lru_cache(maxsize=None)
def hoggatt_long_u(n: int) -> Polynomial:
    """``u_n(1, z)``: u_0 = 0, u_1 = 1, u_n = u_{n-1} + z u_{n-2}."""
    if n < 0:
        raise GraphArgumentError("n must be nonnegative")
    if n == 0:
        return Polynomial()
    if n == 1:
        return ONE
    return hoggatt_long_u(n - 1) + hoggatt_long_u(n - 2).shift(1)


def path_poly(n: int) -> Polynomial:
    """p(P_n; z); ``path_poly(0)`` is the empty graph's polynomial 1."""
    if n < 0:
        raise GraphArgumentError("path length must be nonnegative")
    return hoggatt_long_u(n + 1)


def cycle_poly(n: int) -> Polynomial:
    if n < 3:
        raise GraphArgumentError(f"cycles need n >= 3, got {n}")
    p = hoggatt_long_u(n + 1) + hoggatt_long_u(n - 1).shift(1)
    if n % 2 == 0:
        p = p - Polynomial.monomial(n // 2)
    return p


@lru_cache(maxsize=None)
def caterpillar_poly(n: int, k: int) -> Polynomial:
    """p(cat(n, k)) by the spine recurrence (1 + kz) c_{n-1} + z c_{n-2}."""
    if n < 0 or k < 0:
        raise GraphArgumentError("caterpillar parameters must be nonnegative")
    if n == 0:
        return ONE
    if n == 1:
        return Polynomial([1, k])
    return Polynomial([1, k]) * caterpillar_poly(n - 1, k) + caterpillar_poly(n - 2, k).shift(1)


def caterpillar_radical(n: int, k: int) -> Polynomial:
    """Expand ((a+s)^{n+1} - (a-s)^{n+1}) / (2^{n+1} s) with a = 1+kz, s^2 = 1 + 2(2+k)z + k^2 z^2.

    Odd powers of s cancel, so this is an exact integer computation.
    """
    a = Polynomial([1, k])
    disc = Polynomial([1, 2 * (2 + k), k * k])
    total = Polynomial()
    for j in range(1, n + 2, 2):
        total = total + comb(n + 1, j) * a ** (n + 1 - j) * disc ** ((j - 1) // 2)
    return (2 * total).exact_div_int(2 ** (n + 1))


@lru_cache(maxsize=None)
def kary_tree_poly(k: int, r: int) -> Polynomial:
    """p of the complete k-ary tree of rank r, as a product of dilated path polynomials."""
    if k < 1 or r < 0:
        raise GraphArgumentError("need k >= 1 and r >= 0")
    result = path_poly(r + 1).dilate(k)
    for i in range(1, r):
        result = result * kary_tree_poly(k, i) ** (k - 1)
    return result


def kary_tree_root_recurrence(k: int, r: int) -> Polynomial:
    """Same polynomial from the root-vertex recurrence, used as a cross-check."""
    if r == 0:
        return ONE
    if r == 1:
        return Polynomial([1, k])
    a = kary_tree_root_recurrence(k, r - 1)
    b = kary_tree_root_recurrence(k, r - 2)
    return a**k + k * Z * b**k * a ** (k - 1)
