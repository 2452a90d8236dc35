"""Exact integer/rational helpers and the ring Z[sqrt(d)].

Rationals are :class:`fractions.Fraction` throughout; they are always kept in
lowest terms with a positive denominator, which is all the package needs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "QuadInt",
    "quad_mul",
    "quad_norm",
    "quad_conj",
    "is_square",
    "exact_sqrt",
    "rational_sqrt",
    "as_rational",
    "format_rational",
    "parse_rational",
    "solve_linear_congruence",
    "crt_pair",
    "lcm",
    "ParameterError",
    "DomainError",
]


class ParameterError(ValueError):
    """Operands that do not live in the same structure."""


class DomainError(ValueError):
    """Input outside the domain an operation is defined on."""


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def exact_sqrt(n: int) -> int | None:
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Square root of ``q`` if it is the square of a rational, else None."""
    if q < 0:
        return None
    num = exact_sqrt(q.numerator)
    den = exact_sqrt(q.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def as_rational(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return parse_rational(v)
    raise TypeError(f"not an exact rational: {v!r}")


def format_rational(q: Fraction) -> str:
    q = as_rational(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v) if v else out
    return abs(out)


@dataclass(frozen=True)
class QuadInt:
    """The element ``a + b*sqrt(d)`` of Z[sqrt(d)] with ``d`` not a square."""

    a: int
    b: int
    d: int

    def __post_init__(self):
        if self.d < 2 or is_square(self.d):
            raise DomainError(f"d must be a positive non-square integer, got {self.d}")

    def __mul__(self, other: "QuadInt") -> "QuadInt":
        return quad_mul(self, other)

    def __neg__(self) -> "QuadInt":
        return QuadInt(-self.a, -self.b, self.d)

    def __pow__(self, k: int) -> "QuadInt":
        if k < 0:
            if abs(self.norm()) != 1:
                raise ValueError("only units can be inverted")
            inv = QuadInt(self.a * self.norm(), -self.b * self.norm(), self.d)
            return inv ** (-k)
        out = QuadInt(1, 0, self.d)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "QuadInt":
        return quad_conj(self)

    def norm(self) -> int:
        return quad_norm(self)

    def __str__(self):
        sign = "-" if self.b < 0 else "+"
        return f"{self.a}{sign}{abs(self.b)}√{self.d}"


def quad_mul(u: QuadInt, v: QuadInt) -> QuadInt:
    if u.d != v.d:
        raise ParameterError(f"mismatched radicands {u.d} and {v.d}")
    return QuadInt(u.a * v.a + u.d * u.b * v.b, u.a * v.b + u.b * v.a, u.d)


def quad_norm(z: QuadInt) -> int:
    return z.a * z.a - z.d * z.b * z.b


def quad_conj(z: QuadInt) -> QuadInt:
    return QuadInt(z.a, -z.b, z.d)


def solve_linear_congruence(a: int, b: int, m: int) -> tuple[int, int] | None:
    """Solve ``a*k ≡ b (mod m)``; returns ``(r, M)`` meaning ``k ≡ r (mod M)``."""
    if m <= 0:
        raise ValueError("modulus must be positive")
    a %= m
    b %= m
    g = gcd(a, m)
    if b % g:
        return None
    m2 = m // g
    if m2 == 1:
        return 0, 1
    r = (b // g) * pow(a // g, -1, m2) % m2
    return r, m2


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int] | None:
    """Combine ``k ≡ r1 (mod m1)`` and ``k ≡ r2 (mod m2)`` (moduli need not be coprime)."""
    g = gcd(m1, m2)
    if (r2 - r1) % g:
        return None
    sol = solve_linear_congruence(m1, r2 - r1, m2)
    assert sol is not None
    s, _ = sol
    m = m1 // g * m2
    return (r1 + m1 * s) % m, m


def dot(u: Iterable, v: Iterable):
    return sum(a * b for a, b in zip(u, v))


def as_fraction_vector(v: Sequence) -> tuple[Fraction, ...]:
    return tuple(as_rational(x) for x in v)
