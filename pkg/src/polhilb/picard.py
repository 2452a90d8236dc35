"""The Néron-Severi lattice Zh + Zδ of the Hilbert square of a degree-2t K3.

Classes are written ``x*h - y*δ`` and stored as the pair ``(x, y)``, so the
divisor ``b*h - a*δ`` built from a negative Pell solution ``(a, b)`` reads
``NSClass(t, b, a)``. The BBF form is ``q(h) = 2t``, ``q(δ) = -2``, ``(h, δ) = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .arith import DomainError, ParameterError, is_square
from .pell import DEFAULT_SCAN_BOUND, fundamental_unit, minimal_negative, solve_pell_type


@dataclass(frozen=True)
class NSClass:
    t: int
    xh: int
    yd: int

    def __add__(self, other: "NSClass") -> "NSClass":
        _same_t(self, other)
        return NSClass(self.t, self.xh + other.xh, self.yd + other.yd)

    def __sub__(self, other: "NSClass") -> "NSClass":
        _same_t(self, other)
        return NSClass(self.t, self.xh - other.xh, self.yd - other.yd)

    def __neg__(self) -> "NSClass":
        return NSClass(self.t, -self.xh, -self.yd)

    def __rmul__(self, k: int) -> "NSClass":
        return NSClass(self.t, k * self.xh, k * self.yd)

    def square(self) -> int:
        return bbf_pair(self, self)

    def is_primitive(self) -> bool:
        return gcd(self.xh, self.yd) == 1

    def __str__(self):
        return format_class(self.xh, self.yd)


def h(t: int) -> NSClass:
    return NSClass(t, 1, 0)


def delta(t: int) -> NSClass:
    return NSClass(t, 0, -1)


def format_class(x: int, y: int) -> str:
    """Render ``x*h - y*delta`` the way it is usually written."""

    def term(coef, name):
        if coef == 1:
            return name
        return f"{coef}*{name}"

    if x == 0 and y == 0:
        return "0"
    parts = []
    if x:
        parts.append(("-" if x < 0 else "", term(abs(x), "h")))
    if y:
        parts.append(("+" if y < 0 else "-", term(abs(y), "delta")))
    lead = parts[0][0]
    # a leading delta term carries its own sign
    if not x:
        lead = "" if y < 0 else "-"
    out = lead + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _same_t(c1: NSClass, c2: NSClass):
    if c1.t != c2.t:
        raise ParameterError(f"classes live on different Hilbert squares (t={c1.t}, t={c2.t})")


def bbf_pair(c1: NSClass, c2: NSClass) -> int:
    _same_t(c1, c2)
    return 2 * c1.t * c1.xh * c2.xh - 2 * c1.yd * c2.yd


def divisibility(c: NSClass) -> int:
    """Positive generator of the ideal ``{(c, m) : m in H^2(X, Z)}``.

    ``h`` pairs onto all of Z through the unimodular K3 lattice, while ``δ``
    only contributes multiples of ``(δ, δ) = -2``.
    """
    if not c.is_primitive():
        raise DomainError(f"{c} is not primitive")
    return gcd(c.xh, 2 * c.yd)


@dataclass(frozen=True)
class ConeSlopes:
    t: int
    mu: Fraction
    nu: Fraction
    omega: Fraction


@lru_cache(maxsize=4096)
def cone_slopes(t: int, *, bound: int = DEFAULT_SCAN_BOUND) -> ConeSlopes:
    """Slopes of the movable (mu), nef (nu) and pseudoeffective (omega) cones."""
    if t <= 0:
        raise DomainError("t must be positive")
    if is_square(t):
        r = Fraction(isqrt(t))
        return ConeSlopes(t, r, r, r)
    unit = fundamental_unit(t)
    c, d = unit.x, unit.y
    mu = Fraction(t * d, c)
    five = solve_pell_type(4 * t, 5, bound=bound)
    if five.minimal_positive is None:
        nu = mu
    else:
        a5, b5 = five.minimal_positive.pair()
        nu = Fraction(2 * t * b5, a5)
    return ConeSlopes(t, mu, nu, Fraction(c, d))


def _nef_coefficients(c: NSClass, nu: Fraction) -> tuple[Fraction, Fraction]:
    # c = alpha*h + beta*(h - nu*δ)
    beta = Fraction(c.yd) / nu
    return Fraction(c.xh) - beta, beta


def is_nef(c: NSClass, slopes: ConeSlopes | None = None) -> bool:
    slopes = slopes or cone_slopes(c.t)
    alpha, beta = _nef_coefficients(c, slopes.nu)
    return alpha >= 0 and beta >= 0


def is_ample(c: NSClass, slopes: ConeSlopes | None = None) -> bool:
    slopes = slopes or cone_slopes(c.t)
    alpha, beta = _nef_coefficients(c, slopes.nu)
    return alpha > 0 and beta > 0


def is_pseudoeffective(c: NSClass, slopes: ConeSlopes | None = None) -> bool:
    # c = alpha*δ + beta*(h - omega*δ); note δ itself is the pair (0, -1)
    slopes = slopes or cone_slopes(c.t)
    beta = Fraction(c.xh)
    alpha = beta * slopes.omega - c.yd
    return alpha >= 0 and beta >= 0


@dataclass(frozen=True)
class AutCriterion:
    t: int
    nontrivial: bool
    witness: NSClass | None = None
    reason: str = ""

    def __bool__(self):
        return self.nontrivial


@lru_cache(maxsize=4096)
def aut_is_nontrivial(t: int, *, bound: int = DEFAULT_SCAN_BOUND) -> AutCriterion:
    """Whether the Hilbert square carries a non-natural automorphism.

    Holds iff t is not a square, ``x^2 - 4t y^2 = 5`` is insoluble and the
    negative Pell equation ``x^2 - t y^2 = -1`` is soluble. The witness is the
    unique ample class ``D = b*h - a*δ`` with ``q(D) = 2``.
    """
    if t < 2:
        raise DomainError("the criterion is stated for t >= 2")
    if is_square(t):
        return AutCriterion(t, False, reason="t is a perfect square")
    neg = minimal_negative(t)
    if neg is None:
        return AutCriterion(t, False, reason=f"x^2 - {t}y^2 = -1 is insoluble")
    if solve_pell_type(4 * t, 5, bound=bound):
        return AutCriterion(t, False, reason=f"x^2 - {4 * t}y^2 = 5 is soluble")
    D = NSClass(t, neg.y, neg.x)
    if bbf_pair(D, D) != 2 or not is_ample(D, cone_slopes(t, bound=bound)):
        raise AssertionError(f"witness {D} fails q(D) = 2 or ampleness at t={t}")
    return AutCriterion(t, True, D)


def polarisation(t: int) -> NSClass:
    crit = aut_is_nontrivial(t)
    if not crit:
        raise DomainError(f"t={t} admits no ample class of square 2: {crit.reason}")
    return crit.witness


@dataclass(frozen=True)
class InvolutionMatrix:
    """Action ``(x, y) -> (c x - d y, t d x - c y)`` on the coordinates of ``x*h - y*δ``."""

    t: int
    entries: tuple[tuple[int, int], tuple[int, int]]

    def __call__(self, cls: NSClass) -> NSClass:
        if cls.t != self.t:
            raise ParameterError("class and involution on different t")
        (p, q), (r, s) = self.entries
        return NSClass(self.t, p * cls.xh + q * cls.yd, r * cls.xh + s * cls.yd)

    def squared(self) -> tuple[tuple[int, int], tuple[int, int]]:
        (p, q), (r, s) = self.entries
        return ((p * p + q * r, p * q + q * s), (r * p + s * r, r * q + s * s))


def involution_matrix(t: int) -> InvolutionMatrix:
    if not aut_is_nontrivial(t):
        raise DomainError(f"no non-trivial automorphism for t={t}")
    unit = fundamental_unit(t)
    c, d = unit.x, unit.y
    return InvolutionMatrix(t, ((c, -d), (t * d, -c)))


def admissible_values(t_min: int, t_max: int) -> list[int]:
    return [t for t in range(max(t_min, 2), t_max + 1) if aut_is_nontrivial(t)]


def ample_square2_witness(t: int, *, bound: int = DEFAULT_SCAN_BOUND) -> NSClass | None:
    """Search for an ample class of square 2 directly, without the criterion.

    Such a class is ``x*h - y*δ`` with ``y^2 - t x^2 = -1`` and slope ``y/x``
    below ``nu``. Slopes of positive solutions increase with ``x``, so only the
    minimal positive solution can qualify.
    """
    if is_square(t):
        return None
    sols = solve_pell_type(t, -1, bound=bound)
    if sols.minimal_positive is None:
        return None
    y, x = sols.minimal_positive.pair()
    cls = NSClass(t, x, y)
    return cls if is_ample(cls, cone_slopes(t, bound=bound)) else None
