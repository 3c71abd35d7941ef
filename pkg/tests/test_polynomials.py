from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from handelman_rank import graphs as gr
from handelman_rank.graphs import unweighted
from handelman_rank.polynomials import (SquareFreePoly, bernstein, binomial, evaluate, expand_basis_term,
                                        format_poly, parse_poly, point_expansion, restrict,
                                        stable_set_poly, subsets, target_poly)


@st.composite
def polys(draw, max_n=6, max_deg=None):
    n = draw(st.integers(1, max_n))
    deg = n if max_deg is None else min(max_deg, n)
    masks = [m for m in range(1 << n) if m.bit_count() <= deg]
    chosen = draw(st.lists(st.sampled_from(masks), max_size=8))
    coef = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))
    return SquareFreePoly(n, {m: draw(coef) for m in chosen})


def test_square_free_reduction():
    x1, x2 = SquareFreePoly.variable(2, 1), SquareFreePoly.variable(2, 2)
    assert x1 * x1 == x1
    assert (x1 + x2) * (x1 + x2) == x1 + x2 + 2 * x1 * x2
    assert (1 - x1) * x1 == SquareFreePoly(2)
    with pytest.raises(ValueError):
        SquareFreePoly(2, {0b100: 1})
    with pytest.raises(ValueError):
        x1 + SquareFreePoly.variable(3, 1)


def test_binomial_and_subsets():
    assert [binomial(5, k) for k in range(-1, 7)] == [0, 1, 5, 10, 10, 5, 1, 0]
    assert list(subsets(0b101)) == [0, 1, 4, 5]


def test_stable_set_poly_of_a_path():
    g = unweighted(gr.path(3))
    p = stable_set_poly(g)
    assert format_poly(p) == "1 * x{1} + 1 * x{2} + -1 * x{1,2} + 1 * x{3} + -1 * x{2,3}"
    assert max(evaluate(p, s) for s in range(8)) == 2
    assert evaluate(target_poly(g, 2), [1, 0, 1]) == 0


def test_basis_term_expansion():
    assert expand_basis_term({1, 2}, {1}, 2) == SquareFreePoly(2, {0b01: 1, 0b11: -1})
    assert expand_basis_term(set(), set(), 1) == SquareFreePoly.constant(1, 1)
    with pytest.raises(ValueError):
        expand_basis_term({1}, {2})


def test_bernstein_example():
    p = SquareFreePoly(3, {0: 1, 0b001: 2})
    # C(3,1)*1 and C(2,0)*2
    assert bernstein(p, 1) == SquareFreePoly(3, {0: 3, 0b001: 2})
    with pytest.raises(ValueError):
        bernstein(SquareFreePoly(3, {0b011: 1}), 1)


@given(st.integers(1, 6), st.data())
def test_partition_of_unity(n, data):
    T = data.draw(st.sets(st.integers(1, n)))
    total = sum((expand_basis_term(T, I, n) for r in range(len(T) + 1) for I in combinations(sorted(T), r)),
                SquareFreePoly(n))
    assert total == SquareFreePoly.constant(n, 1)


@given(polys())
def test_point_expansion_round_trip(p):
    rebuilt = sum((v * expand_basis_term((1 << p.n) - 1, I, p.n) for I, v in point_expansion(p)),
                  SquareFreePoly(p.n))
    assert rebuilt == p
    assert all(v == evaluate(p, I) for I, v in point_expansion(p))


@given(polys(), st.data())
def test_restrict_matches_evaluation(p, data):
    i = data.draw(st.integers(1, p.n))
    v = data.draw(st.sampled_from([0, 1]))
    q = restrict(p, i, v)
    bit = 1 << (i - 1)
    for s in range(1 << p.n):
        s2 = (s | bit) if v else (s & ~bit)
        assert evaluate(q, s) == evaluate(p, s2)


@given(polys(max_deg=3), polys(max_deg=3), st.data())
def test_bernstein_is_linear(p, q, data):
    if p.n != q.n:
        q = SquareFreePoly(p.n, {m: c for m, c in q.coeffs.items() if m < (1 << p.n)})
    t = data.draw(st.integers(max(p.degree, q.degree), p.n))
    a = data.draw(st.builds(Fraction, st.integers(-5, 5), st.integers(1, 3)))
    assert bernstein(p + a * q, t) == bernstein(p, t) + a * bernstein(q, t)


@given(polys())
def test_format_parse_round_trip(p):
    assert parse_poly(format_poly(p), p.n) == p


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_poly("1 * y{1}", 2)
