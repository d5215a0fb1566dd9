"""Dense univariate polynomials in ``z`` with Python-int coefficients."""

from __future__ import annotations

import json
import re
from typing import Iterable


class Polynomial:
    """Immutable, ascending coefficients, trailing zeros stripped (zero is ``()``)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> Polynomial:
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == Polynomial([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> Polynomial:
        other = _lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> Polynomial:
        return self + (-_lift(other))

    def __rsub__(self, other) -> Polynomial:
        return _lift(other) - self

    def __mul__(self, other) -> Polynomial:
        other = _lift(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise ValueError("negative power")
        result, base = Polynomial([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> Polynomial:
        """Multiply by ``z**k``."""
        if not self.coeffs:
            return self
        return Polynomial([0] * k + list(self.coeffs))

    def exact_div_int(self, d: int) -> Polynomial:
        if any(c % d for c in self.coeffs):
            raise ArithmeticError(f"{self} is not divisible by {d}")
        return Polynomial(c // d for c in self.coeffs)

    def dilate(self, k: int) -> Polynomial:
        """Substitute ``z -> k z``."""
        return Polynomial(c * k**i for i, c in enumerate(self.coeffs))

    def __call__(self, z):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)})"

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> Polynomial:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(x) for x in data)


def _lift(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, int):
        return Polynomial([x])
    raise TypeError(f"cannot combine Polynomial with {type(x).__name__}")


ZERO = Polynomial()
ONE = Polynomial([1])
Z = Polynomial([0, 1])


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    return a + b


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def poly_scale_shift(a: Polynomial, k: int) -> Polynomial:
    return a.shift(k)


def format_poly(p: Polynomial, var: str = "z") -> str:
    """Human-readable form, e.g. ``1 + 4z + z^2``."""
    terms = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mon = var if k == 1 else f"{var}^{k}"
            body = mon if mag == 1 else f"{mag}{mon}"
        terms.append((c < 0, body))
    if not terms:
        return "0"
    neg, body = terms[0]
    out = ("-" if neg else "") + body
    for neg, body in terms[1:]:
        out += (" - " if neg else " + ") + body
    return out


_TERM = re.compile(r"^(\d*)(?:([a-z])(?:\^(\d+))?)?$")


def parse_poly(text: str) -> Polynomial:
    """Inverse of :func:`format_poly` (also tolerates missing spaces)."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return ZERO
    if s[0] not in "+-":
        s = "+" + s
    coeffs: dict[int, int] = {}
    for sign, term in re.findall(r"([+-])([^+-]+)", s):
        m = _TERM.match(term)
        if not m or (not m.group(1) and not m.group(2)):
            raise ValueError(f"cannot parse term {term!r}")
        c = int(m.group(1)) if m.group(1) else 1
        k = 0 if not m.group(2) else int(m.group(3) or 1)
        coeffs[k] = coeffs.get(k, 0) + (c if sign == "+" else -c)
    top = max(coeffs)
    return Polynomial(coeffs.get(k, 0) for k in range(top + 1))
