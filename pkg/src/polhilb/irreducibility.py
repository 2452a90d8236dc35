"""Irreducibility of D1 ∩ D2 for two general members of |D|.

An ι-invariant splitting ``D^2 = A + B`` into effective classes must satisfy

    h2_window     0 <= <A, h^2> / 2t <= <D^2, h^2> / 2t
    sigma_window  0 <= σ(A) <= σ(D^2) = 2
    d2_window     0 <  <A, D^2> < <D^2, D^2> = 12
    iota_fixed    ι*A = A

with A given by integral coordinates ``(x, y, z, w)``. Writing ``k = 2x + y``,
``m = z + 10w`` and ``u = -4abt·y + a^2·z``, the first three become window
conditions on ``k``, ``m`` and ``u`` and the last fixes the remaining degree of
freedom. For a fixed offset ``(j, h)`` of ``m`` and ``u`` inside their windows
the solution is affine in ``k``, so integrality is a set of linear congruences
in ``k``. That is how the default ``"residue"`` method finds every solution
with 33 exact solves, whatever the size of ``b``. The ``"scan"`` method walks
``k`` one step at a time and is only practical for small ``b``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, gcd

from . import _kernels, linalg
from .arith import DomainError, crt_pair, is_square, solve_linear_congruence
from .cohomology import (
    H4Class,
    H4IntegralCoords,
    cup_h2,
    iota_matrix_h4,
    iota_star_h4,
    pair_h4,
    sigma_functional,
    to_integral,
)
from .pell import fundamental_unit, solve_pell_type
from .picard import NSClass, bbf_pair, cone_slopes, delta, h, is_pseudoeffective, polarisation

M_OFFSETS = range(3)
U_OFFSETS = range(1, 12)


@dataclass(frozen=True)
class DecompositionWitness:
    t: int
    A: H4IntegralCoords
    B: H4IntegralCoords
    checks: dict = field(default_factory=dict, compare=False)

    @property
    def k(self) -> int:
        return 2 * self.A.a1 + self.A.a2


@dataclass(frozen=True)
class SwapVerdict:
    """Outcome of ``ι*A = D^2 - A``.

    ``particular`` is the midpoint ``D^2/2`` of the solution line, whose x- and
    w-coordinates ``b^2/2 - ab`` and ``-a^2/2`` are never integers. The line
    itself may still pass through integral classes (it does for t = 13, 17, ...);
    those are then tested against ``0 <= <A, h^2> <= <D^2, h^2>``, which every
    effective half of D^2 must satisfy because h is nef.
    """

    t: int
    rank: int
    particular: tuple[Fraction, ...]
    direction: tuple[int, ...]
    integral_point: tuple[int, ...] | None
    window_points: int
    x: Fraction
    w: Fraction

    @property
    def particular_non_integral(self) -> bool:
        return self.x.denominator != 1

    @property
    def excluded(self) -> bool:
        return self.integral_point is None or self.window_points == 0


@dataclass(frozen=True)
class ObstructionVerdict:
    t: int
    pt2_solvable: bool
    minus4_class: NSClass | None
    minus4_pseudoeffective: bool
    slope_lhs: Fraction
    slope_rhs: Fraction
    d_minus_delta_pseudoeffective: bool
    isotropic_free: bool

    @property
    def passed(self) -> bool:
        no_minus4 = not self.pt2_solvable or not self.minus4_pseudoeffective
        return (
            no_minus4
            and self.slope_lhs > self.slope_rhs
            and not self.d_minus_delta_pseudoeffective
            and self.isotropic_free
        )


@dataclass(frozen=True)
class SchubertClasses:
    A: H4Class
    B: H4Class
    bitangent: H4Class


def _pell_data(t: int) -> tuple[int, int, int, int]:
    D = polarisation(t)
    b, a = D.xh, D.yd
    unit = fundamental_unit(t)
    return a, b, unit.x, unit.y


def d_squared_integral(t: int) -> H4IntegralCoords:
    D = polarisation(t)
    out = to_integral(cup_h2(D, D))
    assert out is not None
    return out


def constraint_values(t: int, v: H4IntegralCoords) -> dict:
    """The four linear forms of the search, evaluated literally."""
    a, b, c, d = _pell_data(t)
    x, y, z, w = v.coords
    return {
        "h2_window": 6 * t * x + 3 * t * y + z + 10 * w,
        "sigma_window": 2 * t * x + t * y + z + 10 * w,
        "d2_window": (4 * t + 8 * t * t * b * b) * x + (2 * t + 4 * t * t * b * b - 4 * a * b * t) * y + (1 + t * b * b) * z + 20 * w,
        "iota_fixed": 8 * t * d * x + 4 * (t * d - c) * y + d * z,
    }


def constraints_hold(t: int, v: H4IntegralCoords) -> bool:
    a, b, _, _ = _pell_data(t)
    cv = constraint_values(t, v)
    return (
        0 <= cv["h2_window"] <= 6 * t * b * b - 2 * a * a
        and 0 <= cv["sigma_window"] <= 2
        and 0 < cv["d2_window"] < 12
        and cv["iota_fixed"] == 0
    )


def _system(t: int, a: int, b: int, c: int, d: int) -> list[list[int]]:
    return [
        [2, 1, 0, 0],
        [0, 0, 1, 10],
        [0, -4 * a * b * t, a * a, 0],
        [8 * t * d, 4 * (t * d - c), d, 0],
    ]


def _affine_congruence(f0: Fraction, f1: Fraction) -> tuple[int, int] | None:
    """Residue class of k making ``f0 + (f1 - f0) k`` an integer."""
    n = f0.denominator * f1.denominator // gcd(f0.denominator, f1.denominator)
    A = int(f0 * n)
    B = int((f1 - f0) * n)
    return solve_linear_congruence(B, -A, n)


def _residue_hits(t: int, a: int, b: int, c: int, d: int, k_hi: int, log: list) -> list[tuple]:
    M = _system(t, a, b, c, d)
    if linalg.det(M) == 0:
        log.append("singular reduced system")
        return []
    hits = []
    for j in M_OFFSETS:
        for hh in U_OFFSETS:
            sols = []
            for k in (0, 1):
                m = -t * k + j
                u = -(2 * t + 4 * t * t * b * b) * k - 2 * m + hh
                sols.append(linalg.solve_unique(M, [k, m, u, 0]))
            r, mod = 0, 1
            for f0, f1 in zip(*sols):
                cong = _affine_congruence(f0, f1)
                if cong is None:
                    r = None
                    break
                comb = crt_pair(r, mod, *cong)
                if comb is None:
                    r = None
                    break
                r, mod = comb
            if r is None:
                continue
            for k in range(r, k_hi + 1, mod):
                coords = [f0 + (f1 - f0) * k for f0, f1 in zip(*sols)]
                hits.append((k, j, hh, *(int(v) for v in coords)))
    return hits


def search_decompositions(t: int, scan_full_range: bool = False, method: str = "residue", *, backend: str | None = None, log: list | None = None) -> list[DecompositionWitness]:
    a, b, c, d = _pell_data(t)
    # the rewrite of the D^2 window in terms of u needs a^2 = t b^2 - 1
    if a * a != t * b * b - 1:
        raise AssertionError(f"a^2 != t b^2 - 1 at t={t}")
    if (c, d) != (a * a + t * b * b, 2 * a * b):
        raise AssertionError(f"(c, d) != (a^2 + t b^2, 2ab) at t={t}")
    log = log if log is not None else []
    k_hi = 2 * b * b if scan_full_range else b * b

    if method == "residue":
        hits = _residue_hits(t, a, b, c, d, k_hi, log)
    elif method == "scan":
        hits = _kernels.scan_window(t, a, b, 0, k_hi, backend=backend)
    else:
        raise ValueError(f"unknown method {method!r}")

    total = d_squared_integral(t)
    D2 = total.to_h4()
    out = []
    for k, j, hh, x, y, z, w in sorted(hits):
        A = H4IntegralCoords(t, x, y, z, w)
        B = total - A
        ah, bh = A.to_h4(), B.to_h4()
        if not constraints_hold(t, A):
            raise AssertionError(f"hit {A.coords} violates the search constraints")
        if iota_star_h4(ah) != ah or iota_star_h4(bh) != bh:
            raise AssertionError(f"hit {A.coords} is not ι-invariant")
        checks = {
            "k": k,
            "m_offset": j,
            "u_offset": hh,
            **constraint_values(t, A),
            "A.h2": pair_h4(ah, cup_h2(h(t), h(t))),
            "B.h2": pair_h4(bh, cup_h2(h(t), h(t))),
            "sigma(A)": sigma_functional(ah),
            "sigma(B)": sigma_functional(bh),
            "A.D2": pair_h4(ah, D2),
            "B.D2": pair_h4(bh, D2),
        }
        out.append(DecompositionWitness(t, A, B, checks))
    return out


def decomposition_box(t: int, scan_full_range: bool = True) -> list[tuple[int, int]]:
    """Integer bounding box of the polytope cut out by the four constraints.

    The four linear forms are independent, so the polytope is the image of a
    box under an invertible linear map and its extent along each coordinate
    follows exactly from the inverse matrix.
    """
    a, b, c, d = _pell_data(t)
    rows = [
        [6 * t, 3 * t, 1, 10],
        [2 * t, t, 1, 10],
        [4 * t + 8 * t * t * b * b, 2 * t + 4 * t * t * b * b - 4 * a * b * t, 1 + t * b * b, 20],
        [8 * t * d, 4 * (t * d - c), d, 0],
    ]
    ranges = [(0, 6 * t * b * b - 2 * a * a), (0, 2), (0, 12), (0, 0)]
    inv = [linalg.solve_unique(rows, [int(i == j) for i in range(4)]) for j in range(4)]
    box = []
    for coord in range(4):
        lo = hi = Fraction(0)
        for j, (rlo, rhi) in enumerate(ranges):
            coef = inv[j][coord]
            lo += min(coef * rlo, coef * rhi)
            hi += max(coef * rlo, coef * rhi)
        box.append((int(lo) - 1, int(hi) + 1))
    return box


def swap_system_check(t: int) -> SwapVerdict:
    """Solve ``ι*A = D^2 - A`` over Q and decide whether it has an integral point.

    ι* + 1 has rank 3, so the solutions form the line ``D^2/2 + s·(D·E)`` with
    ``E = a h - t b δ`` spanning the anti-invariant part of NS. Along a primitive
    integral direction the admissible ``s`` are determined modulo 1 by a
    Bezout combination, so a single candidate decides integrality.
    """
    a, b, c, d = _pell_data(t)
    D = polarisation(t)
    M = iota_matrix_h4(t)
    # work in integral coordinates: ι* there is T M T^-1
    basis = [H4IntegralCoords(t, *e).to_h4() for e in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))]
    cols = [to_integral(H4Class.from_vector(t, linalg.matvec(M, v.coords))).coords for v in basis]
    lhs = [[cols[j][i] + (i == j) for j in range(4)] for i in range(4)]
    rhs = d_squared_integral(t).coords
    sol = linalg.solve_affine(lhs, rhs)
    if sol is None:
        raise AssertionError("swap system is inconsistent")
    _, kernel = sol
    rank = 4 - len(kernel)

    particular = tuple(Fraction(v, 2) for v in rhs)
    assert linalg.matvec(lhs, particular) == [Fraction(v) for v in rhs]
    E = NSClass(t, a, t * b)
    direction = to_integral(cup_h2(D, E)).coords
    g = 0
    for v in direction:
        g = gcd(g, v)
    direction = tuple(v // g for v in direction)
    if rank != 3 or linalg.rank([kernel[0], direction]) != 1:
        raise AssertionError(f"unexpected kernel for the swap system at t={t}")

    lam = _bezout_vector(direction)
    s0 = -sum(Fraction(l) * p for l, p in zip(lam, particular))
    point = [p + s0 * q for p, q in zip(particular, direction)]
    if any(v.denominator != 1 for v in point):
        return SwapVerdict(t, rank, particular, direction, None, 0, particular[0], particular[3])

    # integral points are point + n*direction; count those with 0 <= <A, h^2> <= <D^2, h^2>
    point = tuple(int(v) for v in point)
    hh = cup_h2(h(t), h(t))
    base = pair_h4(H4IntegralCoords(t, *point).to_h4(), hh)
    step = pair_h4(H4IntegralCoords(t, *direction).to_h4(), hh)
    top = pair_h4(H4IntegralCoords(t, *rhs).to_h4(), hh)
    if step == 0:
        count = 1 if 0 <= base <= top else 0
    else:
        ends = sorted(((0 - base) / step, (top - base) / step))
        count = max(0, floor(ends[1]) - ceil(ends[0]) + 1)
    return SwapVerdict(t, rank, particular, direction, point, count, particular[0], particular[3])


def _bezout_vector(v) -> list[int]:
    """Integers ``l`` with ``sum(l_i v_i) = gcd(v)``."""
    coeffs = [0] * len(v)
    g = 0
    for i, x in enumerate(v):
        if x == 0:
            continue
        if g == 0:
            g, coeffs[i] = abs(x), (1 if x > 0 else -1)
            continue
        g2, p, q = _ext_gcd(g, x)
        coeffs = [c * p for c in coeffs]
        coeffs[i] = q
        g = g2
    return coeffs


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def prime_divisor_obstructions(t: int) -> ObstructionVerdict:
    a, b, c, d = _pell_data(t)
    slopes = cone_slopes(t)
    pt2 = solve_pell_type(t, 2)
    minus4 = None
    minus4_pseff = False
    if pt2.minimal_positive is not None:
        # y^2 - t x^2 = 2 gives the (-4)-class x h - y δ
        Y, X = pt2.minimal_positive.pair()
        minus4 = NSClass(t, X, Y)
        assert bbf_pair(minus4, minus4) == -4
        minus4_pseff = is_pseudoeffective(minus4, slopes)
    # D - n δ for n >= 1 lies beyond ι*δ = d h - c δ as soon as a + 1 > c / d
    return ObstructionVerdict(
        t,
        bool(pt2),
        minus4,
        minus4_pseff,
        Fraction(a + 1),
        Fraction(a * a + t * b * b, 2 * a),
        is_pseudoeffective(polarisation(t) - delta(t), slopes),
        not is_square(t),
    )


def schubert_classes(t: int = 2) -> SchubertClasses:
    """Pull-backs of σ_{1,1}, σ_2 and the bitangent class along S^[2]_4 -> Gr(2, 4)."""
    if t != 2:
        raise DomainError("the Schubert classes are only defined for t = 2")
    A = H4Class(2, Fraction(1, 2), Fraction(-1, 2), Fraction(-1, 4), Fraction(-1, 4))
    B = H4Class(2, Fraction(1, 2), Fraction(-3, 2), Fraction(5, 4), Fraction(1, 4))
    return SchubertClasses(A, B, 28 * A + 12 * B)


def is_irreducible(t: int, scan_full_range: bool = False) -> bool:
    return not search_decompositions(t, scan_full_range)


__all__ = [
    "DecompositionWitness",
    "SwapVerdict",
    "ObstructionVerdict",
    "SchubertClasses",
    "search_decompositions",
    "swap_system_check",
    "prime_divisor_obstructions",
    "schubert_classes",
    "decomposition_box",
    "constraint_values",
    "constraints_hold",
    "d_squared_integral",
    "is_irreducible",
]
