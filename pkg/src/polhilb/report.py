"""Per-t analysis report and its lossless JSON form (rationals as "p/q")."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import format_rational, is_square, parse_rational
from .checks import CheckResult, per_t_checks
from .cohomology import to_integral
from .fixedlocus import solve_fixed_class
from .irreducibility import search_decompositions
from .pell import DEFAULT_SCAN_BOUND, fundamental_unit, minimal_negative, solve_pell_type
from .picard import ConeSlopes, aut_is_nontrivial, cone_slopes, involution_matrix


@dataclass(frozen=True)
class BranchSummary:
    v: int
    w_values: tuple[Fraction, ...]
    integral: tuple[bool, ...]
    reason: str


@dataclass(frozen=True)
class FixedSummary:
    coords: tuple[Fraction, Fraction, Fraction, Fraction]
    integral: tuple[int, int, int, int]
    dim_h0: int
    branches: tuple[BranchSummary, ...]


@dataclass(frozen=True)
class AnalysisReport:
    t: int
    aut: bool
    reason: str = ""
    pell_negative: tuple[int, int] | None = None
    pell_unit: tuple[int, int] | None = None
    p4t5_solvable: bool | None = None
    cones: ConeSlopes | None = None
    involution: tuple[tuple[int, int], tuple[int, int]] | None = None
    D: str | None = None
    F: FixedSummary | None = None
    candidates: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] = ()
    checks: tuple[CheckResult, ...] = ()

    @property
    def irreducible(self) -> bool | None:
        return None if not self.aut else not self.candidates

    @property
    def checks_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def build_report(t: int, *, full_range: bool = False, bound: int = DEFAULT_SCAN_BOUND) -> AnalysisReport:
    if t < 2:
        raise ValueError("t must be at least 2")
    cones = cone_slopes(t, bound=bound)
    if is_square(t):
        return AnalysisReport(t, False, "t is a perfect square", cones=cones)
    neg = minimal_negative(t)
    unit = fundamental_unit(t)
    p5 = bool(solve_pell_type(4 * t, 5, bound=bound))
    crit = aut_is_nontrivial(t, bound=bound)
    base = dict(
        pell_negative=neg.pair() if neg else None,
        pell_unit=unit.pair(),
        p4t5_solvable=p5,
        cones=cones,
    )
    if not crit:
        return AnalysisReport(t, False, crit.reason, **base)

    fixed = solve_fixed_class(t)
    F = FixedSummary(
        fixed.F.coords,
        to_integral(fixed.F).coords,
        fixed.dim_h0,
        tuple(BranchSummary(b.v, b.w_values, b.integral, b.reason) for b in fixed.branch_log),
    )
    found = search_decompositions(t, full_range)
    return AnalysisReport(
        t,
        True,
        "",
        involution=involution_matrix(t).entries,
        D=str(crit.witness),
        F=F,
        candidates=tuple((w.A.coords, w.B.coords) for w in found),
        checks=tuple(per_t_checks(t, full_range)),
        **base,
    )


def _q(x: Fraction) -> str:
    return format_rational(x)


def to_dict(r: AnalysisReport) -> dict:
    return {
        "t": r.t,
        "pell": {
            "negative": list(r.pell_negative) if r.pell_negative else None,
            "unit": list(r.pell_unit) if r.pell_unit else None,
            "p4t5_solvable": r.p4t5_solvable,
        },
        "cones": None if r.cones is None else {"mu": _q(r.cones.mu), "nu": _q(r.cones.nu), "omega": _q(r.cones.omega)},
        "aut": {
            "nontrivial": r.aut,
            "reason": r.reason,
            "involution": [list(row) for row in r.involution] if r.involution else None,
        },
        "D": r.D,
        "F": None
        if r.F is None
        else {
            "coords": [_q(v) for v in r.F.coords],
            "integral": list(r.F.integral),
            "dim_h0": r.F.dim_h0,
            "branches": [
                {"v": b.v, "w": [_q(w) for w in b.w_values], "integral": list(b.integral), "reason": b.reason}
                for b in r.F.branches
            ],
        },
        "irreducibility": {
            "irreducible": r.irreducible,
            "candidates": [{"A": list(a), "B": list(b)} for a, b in r.candidates],
        },
        "checks": [{"name": c.name, "t": c.t, "passed": c.passed, "detail": c.detail} for c in r.checks],
    }


def from_dict(d: dict) -> AnalysisReport:
    pell = d["pell"]
    cones = d["cones"]
    F = d["F"]
    return AnalysisReport(
        t=d["t"],
        aut=d["aut"]["nontrivial"],
        reason=d["aut"]["reason"],
        pell_negative=tuple(pell["negative"]) if pell["negative"] else None,
        pell_unit=tuple(pell["unit"]) if pell["unit"] else None,
        p4t5_solvable=pell["p4t5_solvable"],
        cones=None
        if cones is None
        else ConeSlopes(d["t"], parse_rational(cones["mu"]), parse_rational(cones["nu"]), parse_rational(cones["omega"])),
        involution=tuple(tuple(row) for row in d["aut"]["involution"]) if d["aut"]["involution"] else None,
        D=d["D"],
        F=None
        if F is None
        else FixedSummary(
            tuple(parse_rational(v) for v in F["coords"]),
            tuple(F["integral"]),
            F["dim_h0"],
            tuple(
                BranchSummary(b["v"], tuple(parse_rational(w) for w in b["w"]), tuple(b["integral"]), b["reason"])
                for b in F["branches"]
            ),
        ),
        candidates=tuple((tuple(c["A"]), tuple(c["B"])) for c in d["irreducibility"]["candidates"]),
        checks=tuple(CheckResult(c["name"], c["t"], c["passed"], c["detail"]) for c in d["checks"]),
    )


CSV_COLUMNS = [
    "t", "a", "b", "c", "d", "mu", "nu", "omega", "aut",
    "F_alpha1", "F_alpha2", "F_alpha3", "F_alpha4", "irreducible", "checks_passed",
]


def csv_row(r: AnalysisReport) -> dict:
    a, b = r.pell_negative or ("", "")
    c, d = r.pell_unit or ("", "")
    F = r.F.integral if r.F else ("", "", "", "")
    cones = r.cones
    return {
        "t": r.t,
        "a": a,
        "b": b,
        "c": c,
        "d": d,
        "mu": _q(cones.mu) if cones else "",
        "nu": _q(cones.nu) if cones else "",
        "omega": _q(cones.omega) if cones else "",
        "aut": str(r.aut).lower(),
        "F_alpha1": F[0],
        "F_alpha2": F[1],
        "F_alpha3": F[2],
        "F_alpha4": F[3],
        "irreducible": "" if r.irreducible is None else str(r.irreducible).lower(),
        "checks_passed": str(r.checks_passed).lower(),
    }


def render_text(r: AnalysisReport) -> str:
    lines = [f"t = {r.t}"]
    if r.pell_negative:
        lines.append(f"  x^2 - {r.t}y^2 = -1 minimal solution (a, b) = {r.pell_negative}")
    else:
        lines.append(f"  x^2 - {r.t}y^2 = -1 has no solution")
    if r.pell_unit:
        lines.append(f"  fundamental unit (c, d) = {r.pell_unit}")
    if r.p4t5_solvable is not None:
        lines.append(f"  x^2 - {4 * r.t}y^2 = 5 solvable: {str(r.p4t5_solvable).lower()}")
    if r.cones:
        lines.append(f"  slopes mu = {r.cones.mu}, nu = {r.cones.nu}, omega = {r.cones.omega}")
    if not r.aut:
        lines.append(f"  no ample class of square 2 ({r.reason}); Aut(X) is trivial")
        return "\n".join(lines)
    lines.append(f"  D = {r.D}, involution matrix {r.involution}")
    F = r.F
    lines.append("  [F] = " + ", ".join(str(v) for v in F.coords) + " in {h^2, h*delta, delta^2, (2/5)q}")
    lines.append(f"      integral coordinates {F.integral}, dim H^0(W, D_W) = {F.dim_h0}")
    for b in F.branches:
        ws = ", ".join(str(w) for w in b.w_values) or "-"
        lines.append(f"      v = {b.v}: w in {{{ws}}}; {b.reason}")
    if r.candidates:
        lines.append(f"  {len(r.candidates)} ι-invariant decomposition candidate(s):")
        for a, b in r.candidates:
            lines.append(f"      A = {a}, B = {b}")
    else:
        lines.append("  no ι-invariant decomposition of D^2: D1 ∩ D2 is irreducible")
    failed = [c for c in r.checks if not c.passed]
    lines.append(f"  checks: {len(r.checks) - len(failed)}/{len(r.checks)} passed")
    for c in failed:
        lines.append(f"      FAILED {c.name}: {c.detail}")
    return "\n".join(lines)
