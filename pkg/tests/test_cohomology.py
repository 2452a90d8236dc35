from fractions import Fraction
from itertools import product
from math import gcd

import pytest
from hypothesis import given, strategies as st

from polhilb import linalg
from polhilb.arith import ParameterError
from polhilb.cohomology import (
    H4Class,
    H4IntegralCoords,
    H6Class,
    cup_h2,
    dual_h6,
    dual_pairing,
    fujiki_quartic,
    gram_from_pairing,
    gram_h22,
    h6_integral,
    integral_basis,
    iota_star_h4,
    pair_h4,
    pairing_matrix,
    q_class,
    reduce_to_h6,
    sigma_functional,
    to_integral,
)
from polhilb.picard import NSClass, admissible_values, bbf_pair as q, delta, divisibility, h, polarisation

F = Fraction


def test_cup_examples():
    assert cup_h2(NSClass(2, 1, 1), NSClass(2, 1, 1)).coords == (1, -2, 1, 0)
    assert cup_h2(NSClass(10, 1, 3), NSClass(10, 1, 3)).coords == (1, -6, 9, 0)
    assert cup_h2(h(5), delta(5)).coords == (0, 1, 0, 0)
    with pytest.raises(ParameterError):
        cup_h2(h(2), h(3))


def test_pairing_examples():
    assert pair_h4(q_class(3), q_class(3)) == 92
    A = H4Class(2, F(1, 2), F(-1, 2), F(-1, 4), F(-1, 4))
    B = H4Class(2, F(1, 2), F(-3, 2), F(5, 4), F(1, 4))
    assert pair_h4(A, B) == 0
    for t in (1, 2, 7):
        hh = cup_h2(h(t), h(t))
        assert pair_h4(hh, hh) == 12 * t * t


def test_pairing_gram_data():
    t = 6
    g = pairing_matrix(t)
    assert g[0][:3] == [12 * t * t, 0, -4 * t]
    assert g[1][1] == -4 * t and g[1][2] == 0 and g[2][2] == 12
    assert [g[3][i] for i in range(3)] == [20 * t, 0, -20]


def test_pairing_matches_product_formula_on_products():
    for t in (2, 5, 10):
        cls = [NSClass(t, x, y) for x, y in product(range(-2, 3), repeat=2)]
        for a1, a2, a3, a4 in [(cls[1], cls[7], cls[12], cls[20]), (cls[3], cls[3], cls[8], cls[24])]:
            lhs = pair_h4(cup_h2(a1, a2), cup_h2(a3, a4))
            rhs = q(a1, a2) * q(a3, a4) + q(a1, a3) * q(a2, a4) + q(a1, a4) * q(a2, a3)
            assert lhs == rhs


def test_gram_examples():
    g, disc = gram_h22(1)
    assert disc == 84
    assert gram_h22(10)[1] == 84000
    assert all(g[i][j] == g[j][i] for i in range(4) for j in range(4))


def test_gram_invariants():
    for t in range(1, 201):
        g, disc = gram_h22(t)
        assert disc == 84 * t**3
        m = pairing_matrix(t)
        assert linalg.det(m) != 0
        assert all(m[i][j] == m[j][i] for i in range(4) for j in range(4))
        if t <= 50:
            assert gram_from_pairing(t) == linalg.to_matrix(g)


def test_integral_round_trip():
    for t in (1, 2, 10):
        for v in product(range(-2, 3), repeat=4):
            c = H4IntegralCoords(t, *v)
            assert to_integral(c.to_h4()) == c
        for e, c in zip(((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)), integral_basis(t)):
            assert to_integral(c).coords == e


def test_to_integral_examples():
    assert to_integral(H4Class(10, 5, -30, 45, -1)).coords == (-25, 60, 360, -46)
    assert to_integral(H4Class(10, 0, 0, 0, F(-13, 12))) is None
    assert to_integral(H4Class(3, 0, 0, 0, 0)).coords == (0, 0, 0, 0)


@given(st.integers(1, 60), st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30))
def test_products_of_divisors_are_integral(t, a, b, c, d):
    assert to_integral(cup_h2(NSClass(t, a, b), NSClass(t, c, d))) is not None


@given(st.integers(1, 200), st.integers(-50, 50), st.integers(-50, 50))
def test_fujiki_consistency(t, x, y):
    c = NSClass(t, x, y)
    sq = cup_h2(c, c)
    assert fujiki_quartic(c) == pair_h4(sq, sq)


def test_fujiki_examples():
    assert fujiki_quartic(polarisation(10)) == 12
    assert fujiki_quartic(delta(4)) == 12
    assert fujiki_quartic(NSClass(4, 0, 0)) == 0


def test_iota_examples():
    t = 10
    assert iota_star_h4(q_class(t)) == q_class(t)
    D = polarisation(t)
    assert iota_star_h4(cup_h2(D, D)) == cup_h2(D, D)
    for v in integral_basis(t):
        assert iota_star_h4(iota_star_h4(v)) == v


def test_iota_preserves_pairing():
    for t in admissible_values(2, 200):
        basis = integral_basis(t)
        for u in basis:
            for v in basis:
                assert pair_h4(iota_star_h4(u), iota_star_h4(v)) == pair_h4(u, v)


def test_sigma_examples():
    t = 7
    assert sigma_functional(cup_h2(h(t), h(t))) == 2 * t
    assert sigma_functional(cup_h2(h(t), delta(t))) == 0
    assert sigma_functional(cup_h2(delta(t), delta(t))) == -2
    assert sigma_functional(q_class(t)) == 10
    assert sigma_functional(H4Class(10, 5, -30, 45, -1)) == 0


def test_h6_relations():
    for t in (2, 3, 10, 13):
        ht, dl = h(t), delta(t)
        assert reduce_to_h6(cup_h2(dl, dl), dl) == H6Class(t, 0, F(-3, t))
        assert reduce_to_h6(cup_h2(ht, dl), dl) == H6Class(t, F(-1, 3 * t), 0)
        assert reduce_to_h6(q_class(t), ht) == H6Class(t, F(5, 3 * t), 0)
        assert reduce_to_h6(q_class(t), dl) == H6Class(t, 0, F(5, t))
        assert reduce_to_h6(cup_h2(ht, ht), ht) == H6Class(t, 1, 0)


def test_h6_integral_examples():
    t = 5
    assert h6_integral(H6Class(t, F(1, 6 * t), 0)) == (1, 0)
    assert h6_integral(H6Class(t, 1, 0)) == (6 * t, 0)
    assert h6_integral(H6Class(t, F(1, 12 * t), 0)) is None


def test_dual_pairing_examples():
    for t in admissible_values(2, 60):
        assert dual_pairing(polarisation(t)) == 2
    assert dual_pairing(h(7)) == 14
    assert dual_pairing(delta(7)) == -1
    assert h6_integral(dual_h6(h(7))) == (1, 0)
    assert h6_integral(dual_h6(delta(7))) == (0, 1)


def test_dual_pairing_on_lattice_model():
    # U ⊕ <-2> is a sublattice with the same divisibility behaviour as H^2(X, Z)
    # basis (e, f, g) with h = e + t f and δ = g
    G = [[0, 1, 0], [1, 0, 0], [0, 0, -2]]
    for t in (2, 5, 10):
        for x, y in product(range(-4, 5), repeat=2):
            if gcd(x, y) != 1:
                continue
            c = NSClass(t, x, y)
            v = [x, x * t, -y]  # coordinates of x h - y δ with δ = g
            pairings = [sum(v[i] * G[i][j] for i in range(3)) for j in range(3)]
            div = 0
            for p in pairings:
                div = gcd(div, p)
            assert div == divisibility(c)
            # c∨ = c / div(c) is the class pairing to (c, m)/div(c) with every m
            sq = sum(v[i] * G[i][j] * v[j] for i in range(3) for j in range(3))
            assert F(sq, div) == dual_pairing(c)
