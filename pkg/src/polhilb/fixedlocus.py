"""The class of the fixed surface F of the involution ι.

F is a Lagrangian, ι-fixed surface with ``c2(F) = <F, F> = 192`` and
``<F, D^2> = 4v`` for some ``v`` in {2, 6, 10} (only these values are
compatible with the possible dimensions of ``H^0(W, D_W)``). Three of these
conditions are linear in the coordinates ``(x, y, z, w)`` of ``[F]`` in the
basis {h^2, hδ, δ^2, Q}; the remaining one is quadratic, so each branch
reduces to a univariate quadratic over Q.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .arith import DomainError, rational_sqrt
from .cohomology import (
    H4Class,
    cup_h2,
    iota_matrix_h4,
    pair_h4,
    q_class,
    sigma_functional,
    to_integral,
)
from .picard import polarisation

BRANCH_VALUES = (2, 6, 10)
C2_OF_F = 192


class InconsistencyError(RuntimeError):
    """The system does not single out exactly one admissible class."""


class DegenerateSystemError(InconsistencyError):
    pass


@dataclass(frozen=True)
class BranchRecord:
    v: int
    pairing_with_d2: int
    dim_h0: int | None
    roots: tuple[H4Class, ...]
    integral: tuple[bool, ...]
    reason: str

    @property
    def w_values(self) -> tuple[Fraction, ...]:
        return tuple(r.s for r in self.roots)


@dataclass(frozen=True)
class FixedLocusReport:
    t: int
    F: H4Class
    dim_h0: int
    branch_log: tuple[BranchRecord, ...] = field(default=())
    fixedness_rank: int = 1


def dim_h0_from_square(dfsq: int) -> int | None:
    """dim H^0(W, D_W) = 7/2 + (D|_F)^2 / 16, when that lands in 0..6."""
    num = dfsq + 56
    if num % 16:
        return None
    val = num // 16
    return val if 0 <= val <= 6 else None


def _functional_row(t: int, fn) -> list[Fraction]:
    return [fn(H4Class.from_vector(t, e)) for e in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))]


def fixedness_conditions(t: int) -> list[list[int]]:
    """Rows of ``ι* - 1`` on {h^2, hδ, δ^2, Q}."""
    m = iota_matrix_h4(t)
    return [[m[i][j] - (i == j) for j in range(4)] for i in range(4)]


def _quadratic_roots(a: Fraction, b: Fraction, c: Fraction) -> list[Fraction]:
    """Rational roots of ``a s^2 + b s + c``."""
    if a == 0:
        if b == 0:
            raise DegenerateSystemError("quadratic condition is constant along the line")
        return [-c / b]
    disc = b * b - 4 * a * c
    r = rational_sqrt(disc)
    if r is None:
        return []
    return sorted({(-b - r) / (2 * a), (-b + r) / (2 * a)})


def solve_fixed_class(t: int) -> FixedLocusReport:
    D = polarisation(t)
    D2 = cup_h2(D, D)

    fix_rows = fixedness_conditions(t)
    fix_rank = linalg.rank(fix_rows)
    nonzero = [r for r in fix_rows if any(r)]
    if fix_rank != 1 or not nonzero:
        raise DegenerateSystemError(f"ι*-fixedness has rank {fix_rank}, expected 1")
    fix_row = nonzero[0]

    sigma_row = _functional_row(t, sigma_functional)
    d2_row = _functional_row(t, lambda e: pair_h4(e, D2))
    A = [sigma_row, fix_row, d2_row]
    if linalg.rank(A) != 3:
        raise DegenerateSystemError(f"linear conditions have rank {linalg.rank(A)} at t={t}")

    log = []
    admissible = []
    for v in BRANCH_VALUES:
        target = 4 * v
        sol = linalg.solve_affine(A, [0, 0, target])
        if sol is None:
            raise DegenerateSystemError(f"inconsistent linear system at t={t}, v={v}")
        part, kernel = sol
        P = H4Class.from_vector(t, part)
        K = H4Class.from_vector(t, kernel[0])
        roots = _quadratic_roots(pair_h4(K, K), 2 * pair_h4(P, K), pair_h4(P, P) - C2_OF_F)
        classes = tuple(P + s * K for s in roots)
        integral = tuple(to_integral(c) is not None for c in classes)
        if not classes:
            reason = "no rational solution (discriminant is not a rational square)"
        elif not any(integral):
            reason = "rational solutions only, none integral"
        else:
            reason = f"{sum(integral)} integral solution(s)"
        log.append(BranchRecord(v, target, dim_h0_from_square(target), classes, integral, reason))
        admissible.extend((v, c) for c, ok in zip(classes, integral) if ok)

    if len(admissible) != 1:
        raise InconsistencyError(f"expected one admissible class at t={t}, found {len(admissible)}")
    v, F = admissible[0]
    expected = 5 * D2 - q_class(t)
    if F != expected:
        raise InconsistencyError(f"solver returned {F}, not 5D^2 - Q")
    return FixedLocusReport(t, F, dim_h0_from_square(4 * v), tuple(log), fix_rank)


def fixedness_rows_are_proportional(t: int) -> bool:
    """Every component of ι*F = F imposes the same condition as the first one."""
    rows = [r for r in fixedness_conditions(t) if any(r)]
    return linalg.rank(rows) == 1


__all__ = [
    "BranchRecord",
    "FixedLocusReport",
    "InconsistencyError",
    "DegenerateSystemError",
    "dim_h0_from_square",
    "solve_fixed_class",
    "fixedness_conditions",
    "fixedness_rows_are_proportional",
]
