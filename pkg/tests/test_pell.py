from math import isqrt

import pytest
from oracles import pell_brute
from sympy.solvers.diophantine.diophantine import diop_DN

from polhilb.arith import DomainError, is_square
from polhilb.pell import (
    DEFAULT_SCAN_BOUND,
    PellSolution,
    are_equivalent,
    fundamental_unit,
    is_solvable,
    minimal_negative,
    nagell_window,
    solve_pell_type,
    unit_orbit,
)


def test_fundamental_unit_examples():
    assert fundamental_unit(10).pair() == (19, 6)
    assert fundamental_unit(2).pair() == (3, 2)
    assert fundamental_unit(13).pair() == (649, 180)
    with pytest.raises(DomainError):
        fundamental_unit(16)


def test_fundamental_unit_brute_force():
    for d in range(2, 60):
        if is_square(d):
            continue
        y = 1
        while not is_square(1 + d * y * y):
            y += 1
        assert fundamental_unit(d).pair() == (isqrt(1 + d * y * y), y)


def test_minimal_negative_examples():
    assert minimal_negative(10).pair() == (3, 1)
    assert minimal_negative(13).pair() == (18, 5)
    assert minimal_negative(3) is None


def test_minimal_negative_against_sympy():
    for d in range(2, 400):
        if is_square(d):
            continue
        ours = minimal_negative(d)
        theirs = diop_DN(d, -1)
        if ours is None:
            assert theirs == []
        else:
            assert ours.pair() == min(theirs)


def test_negative_pell_structure():
    # b odd and (c, d) = (a^2 + t b^2, 2ab) for every solvable d <= 500
    for d in range(2, 501):
        if is_square(d):
            continue
        neg = minimal_negative(d)
        if neg is None:
            continue
        a, b = neg.pair()
        assert b % 2 == 1
        assert fundamental_unit(d).pair() == (a * a + d * b * b, 2 * a * b)


def test_solve_pell_type_examples():
    assert not solve_pell_type(40, 5)
    res = solve_pell_type(10, -1)
    assert res.class_representatives() == [(3, 1)]
    reps = solve_pell_type(10, 9).class_representatives()
    assert (7, 2) in reps and (3, 0) in reps


def test_are_equivalent_examples():
    assert not are_equivalent(PellSolution(7, 2, 10, 9), PellSolution(3, 0, 10, 9))
    s = PellSolution(3, 1, 10, -1)
    assert are_equivalent(s, s)
    assert are_equivalent(s, PellSolution(117, 37, 10, -1))


def test_is_solvable_examples():
    assert not is_solvable(40, 5)
    assert all(is_solvable(d, 1) for d in range(2, 80) if not is_square(d))
    assert is_solvable(2, -1)


def test_fundamentals_pairwise_inequivalent():
    for d in (10, 13, 41, 61, 94):
        for n in (-9, -4, 4, 9, 20, 45):
            reps = solve_pell_type(d, n).class_representatives()
            for i, p in enumerate(reps):
                for q in reps[i + 1:]:
                    assert not are_equivalent(p, q, d, n)


def test_class_completeness_windowed():
    # every solution with |y| <= 50 comes from a fundamental solution by units
    for d in range(2, 51):
        if is_square(d):
            continue
        for n in range(-30, 31):
            if n == 0:
                continue
            res = solve_pell_type(d, n)
            generated = set()
            for x, y in res.class_representatives():
                generated |= unit_orbit(x, y, d, 50)
            assert generated == pell_brute(d, n, 50), (d, n)


def test_lmm_matches_nagell():
    for d in range(2, 120):
        if is_square(d):
            continue
        for n in (-12, -5, -2, -1, 2, 3, 5, 7, 12, 25):
            lo, hi = nagell_window(d, n)
            if hi - lo > 20_000:
                continue
            a = solve_pell_type(d, n, method="nagell")
            b = solve_pell_type(d, n, method="lmm")
            assert a.fundamentals == b.fundamentals, (d, n)
            assert a.minimal_positive == b.minimal_positive


def test_minimal_positive_against_sympy():
    for d in (10, 13, 29, 41, 58, 61):
        for n in (-4, 4, 5, 9, -9):
            res = solve_pell_type(d, n)
            sols = [s for s in diop_DN(d, n) if s[0] > 0 and s[1] > 0]
            if res.minimal_positive is None:
                assert not sols
            else:
                # sympy returns one positive solution per class, not always the minimal one
                assert res.minimal_positive.x <= min(s[0] for s in sols)


def test_large_window_uses_lmm():
    # t = 157 has a huge fundamental unit; P_{4t}(5) must still be decided
    res = solve_pell_type(4 * 157, 5)
    assert res.method == "lmm"
    lo, hi = nagell_window(4 * 157, 5)
    assert hi - lo + 1 > DEFAULT_SCAN_BOUND
