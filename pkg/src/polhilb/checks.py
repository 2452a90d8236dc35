"""Named invariant suite used by ``check`` and attached to every analysis."""
from __future__ import annotations

from contextlib import nullcontext
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from . import cohomology as coh
from . import linalg
from .cohomology import (
    cup_h2,
    dual_h6,
    dual_pairing,
    fujiki_quartic,
    gram_from_pairing,
    gram_h22,
    h6_integral,
    iota_star_h4,
    pair_h4,
    q_class,
    reduce_to_h6,
    sigma_functional,
    to_integral,
)
from .fixedlocus import fixedness_rows_are_proportional, solve_fixed_class
from .irreducibility import (
    d_squared_integral,
    prime_divisor_obstructions,
    schubert_classes,
    search_decompositions,
    swap_system_check,
)
from .pell import fundamental_unit, minimal_negative
from .picard import (
    NSClass,
    ample_square2_witness,
    aut_is_nontrivial,
    bbf_pair,
    cone_slopes,
    delta,
    divisibility,
    h,
    involution_matrix,
    is_ample,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    t: int | None
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class SuiteResult:
    results: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]


def _run(name: str, t: int | None, fn: Callable[[], object]) -> CheckResult:
    try:
        out = fn()
    except Exception as exc:  # a crash inside a check is a failed invariant
        return CheckResult(name, t, False, f"{type(exc).__name__}: {exc}")
    if out is True or out is None:
        return CheckResult(name, t, True)
    return CheckResult(name, t, False, str(out) if out is not False else "")


def _expect(cond: bool, msg: str):
    return True if cond else msg


# ---- lattice-level checks -------------------------------------------------


def _gram(t: int):
    g, disc = gram_h22(t)
    if disc != 84 * t**3:
        return f"|det| = {disc}, expected {84 * t**3}"
    if gram_from_pairing(t) != linalg.to_matrix(g):
        return "pairing on the integral basis differs from the Gram matrix"
    return True


def _pairing_shape(t: int):
    g = coh.pairing_matrix(t)
    if any(g[i][j] != g[j][i] for i in range(4) for j in range(4)):
        return "pairing is not symmetric"
    return _expect(linalg.det(g) != 0, "pairing is degenerate")


def _q_square():
    return _expect(pair_h4(q_class(1), q_class(1)) == 92, f"<Q, Q> = {pair_h4(q_class(1), q_class(1))}")


def global_checks(t_max: int) -> list[CheckResult]:
    out = [_run("cohomology.q_square", None, _q_square)]
    for t in range(1, min(t_max, 200) + 1):
        out.append(_run("cohomology.gram", t, lambda t=t: _gram(t)))
        out.append(_run("cohomology.pairing_nondegenerate", t, lambda t=t: _pairing_shape(t)))
    return out


# ---- per-t checks ----------------------------------------------------------


def _pell(t: int):
    neg, unit = minimal_negative(t), fundamental_unit(t)
    a, b = neg.x, neg.y
    if b % 2 == 0:
        return f"b = {b} is even"
    return _expect((unit.x, unit.y) == (a * a + t * b * b, 2 * a * b), "(c, d) != (a^2 + t b^2, 2ab)")


def _witness(t: int):
    D = aut_is_nontrivial(t).witness
    if bbf_pair(D, D) != 2 or divisibility(D) != 1 or not is_ample(D):
        return f"{D} is not an ample primitive class of square 2"
    return _expect(ample_square2_witness(t) == D, "direct search disagrees with the criterion")


def _slopes(t: int):
    s = cone_slopes(t)
    D = aut_is_nontrivial(t).witness
    if not (0 < s.mu <= s.omega and s.nu <= s.mu):
        return f"slope ordering fails: {s}"
    if s.mu != s.nu:
        return "mu != nu for an admissible t"
    return _expect(Fraction(D.yd, D.xh) < s.nu, "witness slope is not below nu")


def _involution(t: int):
    inv = involution_matrix(t)
    if inv.squared() != ((1, 0), (0, 1)):
        return "ι* is not an involution on NS"
    basis = (h(t), delta(t))
    if any(bbf_pair(inv(u), inv(v)) != bbf_pair(u, v) for u in basis for v in basis):
        return "ι* does not preserve the BBF form"
    D = aut_is_nontrivial(t).witness
    if inv(D) != D:
        return "ι* does not fix D"
    # ι*h lies on the ray of h - ν δ
    ih = inv(h(t))
    return _expect(ih.xh > 0 and Fraction(ih.yd, ih.xh) == cone_slopes(t).nu, "ι*h is not on the nef boundary")


def _iota_h4(t: int):
    basis = coh.integral_basis(t)
    if any(iota_star_h4(iota_star_h4(v)) != v for v in basis):
        return "ι* on H^4 is not an involution"
    if any(pair_h4(iota_star_h4(u), iota_star_h4(v)) != pair_h4(u, v) for u in basis for v in basis):
        return "ι* on H^4 does not preserve the pairing"
    if iota_star_h4(q_class(t)) != q_class(t):
        return "ι* moves Q"
    D = aut_is_nontrivial(t).witness
    return _expect(iota_star_h4(cup_h2(D, D)) == cup_h2(D, D), "ι* moves D^2")


def _fujiki(t: int):
    D = aut_is_nontrivial(t).witness
    for c in (D, h(t), delta(t), D + h(t)):
        sq = cup_h2(c, c)
        if fujiki_quartic(c) != pair_h4(sq, sq):
            return f"Fujiki relation fails for {c}"
        if to_integral(sq) is None:
            return f"{c}^2 is not integral"
    return _expect(fujiki_quartic(D) == 12, "∫D^4 != 12")


def _h6(t: int):
    ht, dl = h(t), delta(t)
    want = [
        (reduce_to_h6(cup_h2(dl, dl), dl), (0, Fraction(-3, t))),
        (reduce_to_h6(cup_h2(ht, dl), dl), (Fraction(-1, 3 * t), 0)),
        (reduce_to_h6(q_class(t), ht), (Fraction(5, 3 * t), 0)),
        (reduce_to_h6(q_class(t), dl), (0, Fraction(5, t))),
        (reduce_to_h6(cup_h2(ht, ht), ht), (1, 0)),
    ]
    for got, (u, v) in want:
        if (got.u, got.v) != (u, v):
            return f"H^6 relation fails: got ({got.u}, {got.v}), expected ({u}, {v})"
    return True


def _dual(t: int):
    D = aut_is_nontrivial(t).witness
    if dual_pairing(D) != 2:
        return f"D.D∨ = {dual_pairing(D)}"
    if h6_integral(dual_h6(h(t))) != (1, 0) or h6_integral(dual_h6(delta(t))) != (0, 1):
        return "h∨, δ∨ are not the integral H^6 basis"
    return _expect(h6_integral(dual_h6(D)) is not None, "D∨ is not integral")


def _fixed_checks(t: int) -> list[CheckResult]:
    try:
        rep = solve_fixed_class(t)
    except Exception as exc:
        return [CheckResult("fixed.class", t, False, f"{type(exc).__name__}: {exc}")]
    D = aut_is_nontrivial(t).witness
    D2 = cup_h2(D, D)
    F = rep.F
    branches = {b.v: b for b in rep.branch_log}

    def branch_ok():
        if branches[2].roots or branches[6].roots:
            return "a v in {2, 6} branch has rational roots"
        return _expect(set(branches[10].w_values) == {Fraction(-13, 12), Fraction(-1)}, "v = 10 roots differ")

    return [
        _run("fixed.class", t, lambda: _expect(F == 5 * D2 - q_class(t) and to_integral(F) is not None, str(F))),
        _run("fixed.c2", t, lambda: _expect(pair_h4(F, F) == 192, "<F, F> != 192")),
        _run("fixed.d2_pairing", t, lambda: _expect(pair_h4(F, D2) == 40 and rep.dim_h0 == 6, "<F, D^2> != 40")),
        _run("fixed.lagrangian", t, lambda: _expect(sigma_functional(F) == 0, "σ(F) != 0")),
        _run("fixed.iota", t, lambda: _expect(iota_star_h4(F) == F, "ι*F != F")),
        _run("fixed.branches", t, branch_ok),
        _run("fixed.fixedness_rank", t, lambda: _expect(fixedness_rows_are_proportional(t), "rank > 1")),
    ]


def _search(t: int, full_range: bool):
    found = search_decompositions(t, full_range)
    if t == 2:
        pairs = {(w.A.coords, w.B.coords) for w in found}
        expected = {((0, 1, -2, 0), (-1, 3, 10, -1)), ((-1, 3, 10, -1), (0, 1, -2, 0))}
        if pairs != expected:
            return f"t=2 candidates {sorted(pairs)}"
        sch = schubert_classes(2)
        coords = {to_integral(sch.A).coords, to_integral(sch.B).coords}
        return _expect(coords == {(0, 1, -2, 0), (-1, 3, 10, -1)}, "candidates are not the Schubert classes")
    if full_range:
        b = aut_is_nontrivial(t).witness.xh
        total = d_squared_integral(t)
        by_k = {(w.k, w.A.coords) for w in found}
        for w in found:
            if w.k > b * b and (2 * b * b - w.k, (total - w.A).coords) not in by_k:
                return "upper-half candidate without its mirror"
    return _expect(not found, f"{len(found)} decomposition candidates")


def _schubert():
    s = schubert_classes(2)
    D = aut_is_nontrivial(2).witness
    if s.A + s.B != cup_h2(D, D):
        return "A + B != D^2"
    if s.bitangent.coords != (20, -32, 8, -4):
        return f"28A + 12B = {s.bitangent.coords}"
    vals = (pair_h4(s.A, s.A), pair_h4(s.B, s.B), pair_h4(s.A, s.B))
    return _expect(vals == (6, 6, 0), f"pairings {vals}")


def per_t_checks(t: int, full_range: bool = False) -> list[CheckResult]:
    """Every invariant that applies to one admissible t."""
    out = [
        _run("pell.structure", t, lambda: _pell(t)),
        _run("picard.witness", t, lambda: _witness(t)),
        _run("picard.slopes", t, lambda: _slopes(t)),
        _run("picard.involution", t, lambda: _involution(t)),
        _run("cohomology.gram", t, lambda: _gram(t)),
        _run("cohomology.q_square", t, _q_square),
        _run("cohomology.iota", t, lambda: _iota_h4(t)),
        _run("cohomology.fujiki", t, lambda: _fujiki(t)),
        _run("cohomology.h6_relations", t, lambda: _h6(t)),
        _run("cohomology.dual_pairing", t, lambda: _dual(t)),
    ]
    out += _fixed_checks(t)
    out += [
        _run("obstructions.prime_divisor", t, lambda: _expect(prime_divisor_obstructions(t).passed, "not excluded")),
        _run("obstructions.swap", t, lambda: _expect(swap_system_check(t).excluded, "swapped halves not excluded")),
        _run("irreducibility.search", t, lambda: _search(t, full_range)),
    ]
    if t == 2:
        out.append(_run("schubert.identities", t, _schubert))
    return out


FAULTS = {
    # shift <q∨, q∨> so that <Q, Q> = 96 instead of 92
    "gram": lambda: coh.corrupted_constants(square=coh.QDUAL_SQUARE + 25),
}


def fault_context(fault: str | None):
    if fault is None:
        return nullcontext()
    if fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}")
    return FAULTS[fault]()


def run_checks(t_max: int, *, full_range: bool = False, fault: str | None = None, admissible: Iterable[int] | None = None) -> SuiteResult:
    with fault_context(fault):
        results = global_checks(t_max)
        ts = admissible if admissible is not None else [t for t in range(2, t_max + 1) if aut_is_nontrivial(t)]
        for t in ts:
            results += per_t_checks(t, full_range)
    return SuiteResult(tuple(results))
