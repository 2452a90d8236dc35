"""Pell, negative Pell and Pell-type equations ``x^2 - d*y^2 = n``.

Equivalence classes follow the usual convention: two solutions are equivalent
when ``z1 * conj(z2) / n`` lies in Z[sqrt(d)]. Each class is represented by its
fundamental solution, the member with the smallest non-negative ``y`` (ties
between ``(X, Y)`` and ``(-X, Y)`` inside one class go to ``X > 0``).

Two complete enumerations are available for ``solve_pell_type``:

* ``"nagell"`` scans ``y`` over the classical Nagell window, which is provably
  large enough to contain every fundamental solution;
* ``"lmm"`` runs the Lagrange-Matthews-Mollin procedure on the PQa expansion,
  whose cost does not depend on the size of the fundamental unit.

``"auto"`` picks Nagell whenever its window holds at most ``bound`` values.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt

from .arith import DomainError, ParameterError, QuadInt, exact_sqrt, is_square

DEFAULT_SCAN_BOUND = 200_000


@dataclass(frozen=True)
class PellSolution:
    x: int
    y: int
    d: int
    n: int
    # (-x, y) is a solution of a different class (conjugate pair of classes)
    paired: bool = False

    def __post_init__(self):
        if self.x * self.x - self.d * self.y * self.y != self.n:
            raise ValueError(f"({self.x}, {self.y}) does not solve x^2 - {self.d}y^2 = {self.n}")

    def as_quad(self) -> QuadInt:
        return QuadInt(self.x, self.y, self.d)

    def pair(self) -> tuple[int, int]:
        return self.x, self.y


@dataclass(frozen=True)
class SolutionClassSet:
    d: int
    n: int
    fundamentals: tuple[PellSolution, ...] = ()
    minimal_positive: PellSolution | None = None
    method: str = field(default="nagell", compare=False)

    def __bool__(self):
        return bool(self.fundamentals)

    def class_representatives(self) -> list[tuple[int, int]]:
        """Signed fundamental solutions, one per class."""
        out = []
        for s in self.fundamentals:
            out.append((s.x, s.y))
            if s.paired:
                out.append((-s.x, s.y))
        return out

    @property
    def class_count(self) -> int:
        return len(self.class_representatives())


def _check_radicand(d: int):
    if d < 2 or is_square(d):
        raise DomainError(f"d must be a non-square integer >= 2, got {d}")


@lru_cache(maxsize=4096)
def sqrt_continued_fraction(d: int) -> tuple[int, tuple[int, ...]]:
    """Continued fraction of sqrt(d) as ``(a0, period)``."""
    _check_radicand(d)
    a0 = isqrt(d)
    m, q, a = 0, 1, a0
    period = []
    first = None
    while True:
        m = q * a - m
        q = (d - m * m) // q
        state = (m, q)
        if first is None:
            first = state
        elif state == first:
            break
        a = (a0 + m) // q
        period.append(a)
    return a0, tuple(period)


def _convergent(d: int, index: int) -> tuple[int, int]:
    a0, period = sqrt_continued_fraction(d)
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    for i in range(index):
        a = period[i % len(period)]
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    return p, q


@lru_cache(maxsize=4096)
def fundamental_unit(d: int) -> PellSolution:
    """Minimal positive solution of ``x^2 - d*y^2 = 1``."""
    _check_radicand(d)
    l = len(sqrt_continued_fraction(d)[1])
    x, y = _convergent(d, l - 1 if l % 2 == 0 else 2 * l - 1)
    return PellSolution(x, y, d, 1)


@lru_cache(maxsize=4096)
def minimal_negative(d: int) -> PellSolution | None:
    """Minimal positive solution of ``x^2 - d*y^2 = -1``, or None."""
    _check_radicand(d)
    l = len(sqrt_continued_fraction(d)[1])
    if l % 2 == 0:
        return None
    x, y = _convergent(d, l - 1)
    return PellSolution(x, y, d, -1)


def are_equivalent(s1, s2, d: int | None = None, n: int | None = None) -> bool:
    """Class membership test; accepts PellSolutions or ``(x, y)`` pairs plus ``d, n``."""
    if isinstance(s1, PellSolution) and isinstance(s2, PellSolution):
        if (s1.d, s1.n) != (s2.d, s2.n):
            raise ParameterError("solutions of different equations")
        d, n = s1.d, s1.n
        (X, Y), (X2, Y2) = s1.pair(), s2.pair()
    else:
        if d is None or n is None:
            raise ParameterError("d and n are required for bare pairs")
        (X, Y), (X2, Y2) = s1, s2
    return (X * X2 - d * Y * Y2) % n == 0 and (X * Y2 - X2 * Y) % n == 0


def nagell_window(d: int, n: int) -> tuple[int, int]:
    """Inclusive y-range guaranteed to contain every fundamental solution."""
    unit = fundamental_unit(d)
    c1, b1 = unit.x, unit.y
    if n > 0:
        return 0, isqrt(b1 * b1 * n // (2 * (c1 + 1)))
    ymin = isqrt(-n // d)
    while d * ymin * ymin < -n:
        ymin += 1
    return ymin, isqrt(b1 * b1 * (-n) // (2 * (c1 - 1)))


def _reduce_in_class(X: int, Y: int, d: int, unit: PellSolution) -> tuple[int, int]:
    """Fundamental solution of the class containing ``(X, Y)``."""
    c, e = unit.x, unit.y

    def up(p):
        return p[0] * c + d * p[1] * e, p[0] * e + p[1] * c

    def down(p):
        return p[0] * c - d * p[1] * e, p[1] * c - p[0] * e

    cur = (X, Y)
    # |y| along the unit orbit is unimodal, so greedy descent reaches the minimum
    for step in (up, down):
        while True:
            nxt = step(cur)
            if abs(nxt[1]) < abs(cur[1]):
                cur = nxt
            else:
                break
    ymin = abs(cur[1])
    members = {cur, up(cur), down(cur)}
    best = set()
    for mx, my in members:
        if abs(my) == ymin:
            best.add((mx, my) if my > 0 or (my == 0 and mx > 0) else (-mx, -my))
    if ymin == 0:
        return abs(cur[0]), 0
    if len(best) == 1:
        return best.pop()
    return max(best)


def _pqa_lmm(D: int, N: int) -> list[tuple[int, int]]:
    """One solution per class of ``x^2 - D y^2 = N`` via the LMM algorithm."""
    out: list[tuple[int, int]] = []
    neg = minimal_negative(D)
    f = 1
    while f * f <= abs(N):
        if N % (f * f):
            f += 1
            continue
        m = N // (f * f)
        am = abs(m)
        lo, hi = -((am - 1) // 2), am // 2
        for z in range(lo, hi + 1):
            if (z * z - D) % am:
                continue
            sol = _pqa_first_unit(z, am, D)
            if sol is None:
                continue
            G, B = sol
            val = G * G - D * B * B
            if val == m:
                out.append((f * G, f * B))
            elif val == -m and neg is not None:
                r, s = neg.x, neg.y
                x, y = G * r + D * B * s, G * s + B * r
                out.append((f * x, f * y))
        f += 1
    return out


def _pqa_first_unit(P0: int, Q0: int, D: int) -> tuple[int, int] | None:
    """Run PQa(P0, Q0, D) to the first i >= 1 with Q_i = ±1; return (G_{i-1}, B_{i-1})."""
    r = isqrt(D)
    B_prev, B = 1, 0
    G_prev, G = -P0, Q0
    P, Q = P0, Q0
    seen = set()
    while True:
        # floor((P + sqrt(D)) / Q), exact for either sign of Q
        a = (P + r) // Q if Q > 0 else -((P + r) // -Q) - 1
        B_prev, B = B, a * B + B_prev
        G_prev, G = G, a * G + G_prev
        P = a * Q - P
        Q = (D - P * P) // Q
        if Q in (1, -1):
            return G, B
        if (P, Q) in seen:
            return None
        seen.add((P, Q))


def _nagell_candidates(d: int, n: int, ylo: int, yhi: int) -> list[tuple[int, int]]:
    out = []
    for y in range(ylo, yhi + 1):
        x = exact_sqrt(n + d * y * y)
        if x is not None:
            out.append((x, y))
            if x:
                out.append((-x, y))
    return out


def solve_pell_type(d: int, n: int, *, bound: int = DEFAULT_SCAN_BOUND, method: str = "auto") -> SolutionClassSet:
    """Fundamental solutions of every class of ``x^2 - d*y^2 = n``."""
    return _solve_pell_type(d, n, bound, method)


@lru_cache(maxsize=8192)
def _solve_pell_type(d: int, n: int, bound: int, method: str) -> SolutionClassSet:
    _check_radicand(d)
    if n == 0:
        raise DomainError("n must be non-zero")
    unit = fundamental_unit(d)
    if method == "auto":
        lo, hi = nagell_window(d, n)
        method = "nagell" if hi - lo + 1 <= bound else "lmm"
    if method == "nagell":
        cands = _nagell_candidates(d, n, *nagell_window(d, n))
    elif method == "lmm":
        cands = _pqa_lmm(d, n)
    else:
        raise ValueError(f"unknown method {method!r}")

    reps: list[tuple[int, int]] = []
    for X, Y in cands:
        f = _reduce_in_class(X, Y, d, unit)
        if not any(are_equivalent(f, r, d, n) for r in reps):
            reps.append(f)

    fundamentals = []
    for X, Y in sorted(reps, key=lambda p: (p[1], abs(p[0]), p[0] < 0)):
        if X < 0 and (-X, Y) in reps:
            continue
        paired = X != 0 and (-X, Y) in reps
        fundamentals.append(PellSolution(abs(X), Y, d, n, paired=paired))
    return SolutionClassSet(
        d, n, tuple(fundamentals), _minimal_positive(reps, d, n, unit), method=method
    )


def _minimal_positive(reps, d: int, n: int, unit: PellSolution) -> PellSolution | None:
    eps = unit.as_quad()
    best = None
    for X, Y in reps:
        for z0 in (QuadInt(X, Y, d), QuadInt(-X, -Y, d)):
            for k in range(-3, 4):
                z = z0 * eps**k
                if z.a > 0 and z.b > 0 and (best is None or z.a < best[0]):
                    best = (z.a, z.b)
    return PellSolution(best[0], best[1], d, n) if best else None


def is_solvable(d: int, n: int, *, bound: int = DEFAULT_SCAN_BOUND) -> bool:
    return bool(solve_pell_type(d, n, bound=bound).fundamentals)


def unit_orbit(x: int, y: int, d: int, ymax: int) -> set[tuple[int, int]]:
    """All ``±(x + y√d)·ε^k`` and their conjugates with ``|y| <= ymax``."""
    eps = fundamental_unit(d).as_quad()
    out = set()
    for z0 in (QuadInt(x, y, d), QuadInt(x, -y, d)):
        for step in (eps, eps**-1):
            z = z0
            while True:
                for s in (1, -1):
                    if abs(z.b) <= ymax:
                        out.add((s * z.a, s * z.b))
                nz = z * step
                if abs(nz.b) > ymax and abs(nz.b) > abs(z.b):
                    break
                z = nz
    return out
