from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from polhilb.arith import (
    DomainError,
    ParameterError,
    QuadInt,
    crt_pair,
    format_rational,
    parse_rational,
    quad_conj,
    quad_mul,
    quad_norm,
    rational_sqrt,
    solve_linear_congruence,
)

nonsquare = st.integers(2, 10_000).filter(lambda d: int(d**0.5) ** 2 != d and (int(d**0.5) + 1) ** 2 != d)
ints = st.integers(-10**12, 10**12)


def test_quad_mul_examples():
    assert quad_mul(QuadInt(3, 1, 10), QuadInt(3, 1, 10)) == QuadInt(19, 6, 10)
    z = QuadInt(7, -4, 5)
    assert quad_mul(QuadInt(1, 0, 5), z) == z
    assert quad_mul(QuadInt(1, 1, 2), QuadInt(1, -1, 2)) == QuadInt(-1, 0, 2)


def test_quad_norm_and_conj_examples():
    assert quad_norm(QuadInt(3, 1, 10)) == -1
    assert quad_norm(QuadInt(1, 0, 7)) == 1
    assert quad_norm(QuadInt(19, 6, 10)) == 1
    assert quad_conj(QuadInt(3, 1, 10)) == QuadInt(3, -1, 10)
    assert quad_conj(QuadInt(5, 0, 3)) == QuadInt(5, 0, 3)


def test_square_radicand_rejected():
    with pytest.raises(DomainError):
        QuadInt(1, 1, 9)


def test_mismatched_radicands():
    with pytest.raises(ParameterError):
        quad_mul(QuadInt(1, 1, 2), QuadInt(1, 1, 3))


def test_unit_inverse():
    e = QuadInt(19, 6, 10)
    assert e * e**-1 == QuadInt(1, 0, 10)
    with pytest.raises(ValueError):
        QuadInt(2, 1, 10) ** -1


@given(nonsquare, ints, ints, ints, ints)
def test_norm_is_multiplicative(d, a, b, c, e):
    z, w = QuadInt(a, b, d), QuadInt(c, e, d)
    assert quad_norm(quad_mul(z, w)) == quad_norm(z) * quad_norm(w)


@given(nonsquare, ints, ints, ints, ints, ints, ints)
def test_mul_associative_and_conj_involution(d, a, b, c, e, f, g):
    x, y, z = QuadInt(a, b, d), QuadInt(c, e, d), QuadInt(f, g, d)
    assert (x * y) * z == x * (y * z)
    assert quad_conj(quad_conj(x)) == x
    assert (x * quad_conj(x)) == QuadInt(quad_norm(x), 0, d)


fracs = st.fractions(max_denominator=10**6)


@given(fracs, fracs, fracs)
def test_rational_field_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p * (q + r) == p * q + p * r
    if q:
        assert (p / q) * q == p
    assert parse_rational(format_rational(p)) == p
    assert p.denominator > 0


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(-1)) is None


def test_linear_congruence_matches_brute_force():
    for a, b, m in product(range(-6, 7), range(-6, 7), range(1, 13)):
        brute = {k for k in range(m) if (a * k - b) % m == 0}
        sol = solve_linear_congruence(a, b, m)
        if sol is None:
            assert not brute
        else:
            r, M = sol
            assert brute == {k for k in range(m) if k % M == r}


def test_crt_pair_matches_brute_force():
    for r1, m1, r2, m2 in product(range(4), range(1, 5), range(6), range(1, 7)):
        r1 %= m1
        r2 %= m2
        brute = {k for k in range(m1 * m2) if k % m1 == r1 and k % m2 == r2}
        sol = crt_pair(r1, m1, r2, m2)
        if sol is None:
            assert not brute
        else:
            r, m = sol
            assert brute == {k for k in range(m1 * m2) if k % m == r}
