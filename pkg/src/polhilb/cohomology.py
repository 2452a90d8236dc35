"""Exact calculus on the algebraic parts of H^4 and H^6 of X = S^[2]_{2t}.

H^4 classes use the ordered basis ``{h^2, hδ, δ^2, Q}`` with ``Q = (2/5) q∨``;
H^6 classes use ``{h^3, h^2δ}``. The intersection pairing on H^4 is computed
from the BBF form through

    <a1 a2, a3 a4> = (a1,a2)(a3,a4) + (a1,a3)(a2,a4) + (a1,a4)(a2,a3)

together with ``<q∨, a b> = 25 (a, b)`` and ``<q∨, q∨> = 23 * 25``.
"""
from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from . import linalg
from .arith import ParameterError, as_rational
from .picard import NSClass, bbf_pair, delta, divisibility, h, involution_matrix

# <q∨, a*b> = QDUAL_PAIRING * (a, b) and <q∨, q∨> = QDUAL_SQUARE
QDUAL_PAIRING = Fraction(25)
QDUAL_SQUARE = Fraction(23 * 25)
Q_SCALE = Fraction(2, 5)

BASIS_LABELS = ("h^2", "h*delta", "delta^2", "(2/5)q")


@dataclass(frozen=True)
class H4Class:
    t: int
    p: Fraction
    q: Fraction
    r: Fraction
    s: Fraction

    def __post_init__(self):
        for name in ("p", "q", "r", "s"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))

    @classmethod
    def from_vector(cls, t: int, v: Sequence) -> "H4Class":
        return cls(t, *v)

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return self.p, self.q, self.r, self.s

    def _check(self, other: "H4Class"):
        if self.t != other.t:
            raise ParameterError(f"H^4 classes for t={self.t} and t={other.t}")

    def __add__(self, other: "H4Class") -> "H4Class":
        self._check(other)
        return H4Class(self.t, *(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "H4Class") -> "H4Class":
        self._check(other)
        return H4Class(self.t, *(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "H4Class":
        return H4Class(self.t, *(-a for a in self.coords))

    def __rmul__(self, k) -> "H4Class":
        k = as_rational(k)
        return H4Class(self.t, *(k * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self):
        terms = [f"({c})*{lab}" for c, lab in zip(self.coords, BASIS_LABELS) if c]
        return " + ".join(terms) or "0"


@dataclass(frozen=True)
class H4IntegralCoords:
    """Coordinates in the integral basis {h^2, (h^2 - hδ)/2, (δ^2 + Q)/8, Q}."""

    t: int
    a1: int
    a2: int
    a3: int
    a4: int

    @property
    def coords(self) -> tuple[int, int, int, int]:
        return self.a1, self.a2, self.a3, self.a4

    def to_h4(self) -> H4Class:
        a1, a2, a3, a4 = (Fraction(v) for v in self.coords)
        return H4Class(self.t, a1 + a2 / 2, -a2 / 2, a3 / 8, a3 / 8 + a4)

    def __add__(self, other: "H4IntegralCoords") -> "H4IntegralCoords":
        if self.t != other.t:
            raise ParameterError("integral coordinates for different t")
        return H4IntegralCoords(self.t, *(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "H4IntegralCoords") -> "H4IntegralCoords":
        if self.t != other.t:
            raise ParameterError("integral coordinates for different t")
        return H4IntegralCoords(self.t, *(a - b for a, b in zip(self.coords, other.coords)))


@dataclass(frozen=True)
class H6Class:
    t: int
    u: Fraction
    v: Fraction

    def __post_init__(self):
        object.__setattr__(self, "u", as_rational(self.u))
        object.__setattr__(self, "v", as_rational(self.v))

    def __add__(self, other: "H6Class") -> "H6Class":
        if self.t != other.t:
            raise ParameterError("H^6 classes for different t")
        return H6Class(self.t, self.u + other.u, self.v + other.v)

    def __rmul__(self, k) -> "H6Class":
        k = as_rational(k)
        return H6Class(self.t, k * self.u, k * self.v)


def integral_basis(t: int) -> list[H4Class]:
    return [
        H4IntegralCoords(t, *row).to_h4()
        for row in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
    ]


def q_class(t: int) -> H4Class:
    """The integral class (2/5) q∨."""
    return H4Class(t, 0, 0, 0, 1)


def cup_h2(c1: NSClass, c2: NSClass) -> H4Class:
    if c1.t != c2.t:
        raise ParameterError("cup product of classes on different t")
    return H4Class(
        c1.t,
        c1.xh * c2.xh,
        -(c1.xh * c2.yd + c2.xh * c1.yd),
        c1.yd * c2.yd,
        0,
    )


def _monomial_factors(t: int) -> list[tuple[NSClass, NSClass]]:
    return [(h(t), h(t)), (h(t), delta(t)), (delta(t), delta(t))]


def _gram_h4(t: int) -> list[list[Fraction]]:
    mons = _monomial_factors(t)
    g = [[Fraction(0)] * 4 for _ in range(4)]
    for i, (a1, a2) in enumerate(mons):
        for j, (a3, a4) in enumerate(mons):
            g[i][j] = Fraction(
                bbf_pair(a1, a2) * bbf_pair(a3, a4)
                + bbf_pair(a1, a3) * bbf_pair(a2, a4)
                + bbf_pair(a1, a4) * bbf_pair(a2, a3)
            )
        g[i][3] = g[3][i] = Q_SCALE * QDUAL_PAIRING * bbf_pair(a1, a2)
    g[3][3] = Q_SCALE * Q_SCALE * QDUAL_SQUARE
    return g


def pairing_matrix(t: int) -> list[list[Fraction]]:
    """Gram matrix of the intersection pairing in the basis {h^2, hδ, δ^2, Q}."""
    return _gram_h4(t)


def pair_h4(a: H4Class, b: H4Class) -> Fraction:
    if a.t != b.t:
        raise ParameterError(f"pairing classes for t={a.t} and t={b.t}")
    g = _gram_h4(a.t)
    return sum(
        (x * g[i][j] * y for i, x in enumerate(a.coords) if x for j, y in enumerate(b.coords) if y),
        Fraction(0),
    )


def gram_h22(t: int) -> tuple[list[list[int]], int]:
    """Gram matrix of H^{2,2}(X, Z) in the integral basis, and its discriminant."""
    if t < 1:
        raise ValueError("t must be positive")
    g = [
        [12 * t * t, 6 * t * t, 2 * t, 20 * t],
        [6 * t * t, t * (3 * t - 1), t, 10 * t],
        [2 * t, t, 1, 9],
        [20 * t, 10 * t, 9, 92],
    ]
    return g, abs(int(linalg.det(g)))


def gram_from_pairing(t: int) -> list[list[Fraction]]:
    basis = integral_basis(t)
    return [[pair_h4(u, v) for v in basis] for u in basis]


def to_integral(c: H4Class) -> H4IntegralCoords | None:
    p, q, r, s = c.coords
    vals = (p + q, -2 * q, 8 * r, s - r)
    if any(v.denominator != 1 for v in vals):
        return None
    return H4IntegralCoords(c.t, *(int(v) for v in vals))


@lru_cache(maxsize=4096)
def iota_matrix_h4(t: int) -> tuple[tuple[int, ...], ...]:
    """Matrix of ι* on {h^2, hδ, δ^2, Q}; column j is the image of basis vector j."""
    inv = involution_matrix(t)
    ih, idl = inv(h(t)), inv(delta(t))
    cols = [cup_h2(ih, ih), cup_h2(ih, idl), cup_h2(idl, idl), q_class(t)]
    return tuple(tuple(int(col.coords[i]) for col in cols) for i in range(4))


def iota_star_h4(c: H4Class) -> H4Class:
    m = iota_matrix_h4(c.t)
    return H4Class.from_vector(c.t, linalg.matvec(m, c.coords))


def sigma_functional(c: H4Class) -> Fraction:
    """``<c, (σ + σ̄)^2> / η`` where η = (σ + σ̄, σ + σ̄).

    σ + σ̄ is orthogonal to NS(X), so only the ``(a, b)(ω, ω)`` term of the
    product formula survives on monomials.
    """
    t = c.t
    weights = [Fraction(bbf_pair(a, b)) for a, b in _monomial_factors(t)]
    weights.append(Q_SCALE * QDUAL_PAIRING)
    return sum((w * x for w, x in zip(weights, c.coords)), Fraction(0))


def fujiki_quartic(c: NSClass) -> int:
    """``∫ c^4 = 3 q(c)^2`` (Fujiki constant 1 on a Hilbert square)."""
    return 3 * bbf_pair(c, c) ** 2


def _h6_from_pairings(t: int, with_h: Fraction, with_delta: Fraction) -> H6Class:
    # ∫ h^3·h = 12t^2, ∫ h^3·δ = 0, ∫ h^2δ·h = 0, ∫ h^2δ·δ = -4t
    return H6Class(t, with_h / (12 * t * t), with_delta / (-4 * t))


def reduce_to_h6(c: H4Class, d: NSClass) -> H6Class:
    """Write the product ``c · d`` in the basis {h^3, h^2δ} of H^{3,3}(X, Q)."""
    if c.t != d.t:
        raise ParameterError("mismatched t")
    t = c.t
    return _h6_from_pairings(t, pair_h4(c, cup_h2(d, h(t))), pair_h4(c, cup_h2(d, delta(t))))


def h6_integral(c: H6Class) -> tuple[int, int] | None:
    """Coordinates in the integral basis {h^3/(6t), h^2δ/(4t)}, if integral."""
    a, b = 6 * c.t * c.u, 4 * c.t * c.v
    if a.denominator != 1 or b.denominator != 1:
        return None
    return int(a), int(b)


def h6_pairing(c: H6Class, d: NSClass) -> Fraction:
    t = c.t
    return c.u * 12 * t * t * d.xh + c.v * (-4 * t) * (-d.yd)


def dual_class(c: NSClass) -> tuple[Fraction, Fraction]:
    """The rational class ``c / div(c)`` representing the dual curve class."""
    k = divisibility(c)
    return Fraction(c.xh, k), Fraction(c.yd, k)


def dual_h6(c: NSClass) -> H6Class:
    """The H^6 class whose integral against any divisor v is ``(c / div(c), v)``."""
    t = c.t
    k = divisibility(c)
    return _h6_from_pairings(t, Fraction(bbf_pair(c, h(t)), k), Fraction(bbf_pair(c, delta(t)), k))


def dual_pairing(c: NSClass) -> Fraction:
    return Fraction(bbf_pair(c, c), divisibility(c))


@contextmanager
def corrupted_constants(pairing=None, square=None) -> Iterator[None]:
    """Temporarily replace the q∨ constants (fault injection for the check suite)."""
    global QDUAL_PAIRING, QDUAL_SQUARE
    saved = QDUAL_PAIRING, QDUAL_SQUARE
    if pairing is not None:
        QDUAL_PAIRING = Fraction(pairing)
    if square is not None:
        QDUAL_SQUARE = Fraction(square)
    try:
        yield
    finally:
        QDUAL_PAIRING, QDUAL_SQUARE = saved
