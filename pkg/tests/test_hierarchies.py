import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from handelman_rank import graphs as gr
from handelman_rank.graphs import Graph, WeightedGraph, unweighted
from handelman_rank.handelman import INF, stable_set_bound
from handelman_rank.hierarchies import (kp_rank, ls_operator_bound, sherali_adams_bound, zeta,
                                        zeta_by_expansion, zeta_closed_form)
from handelman_rank.stable_set import fractional_stability, stability_number, unweighted_stability_number

from test_graphs import weighted_graphs


@settings(max_examples=15)
@given(weighted_graphs(max_n=6))
def test_sherali_adams_chain(g):
    a = stability_number(g)
    for t in range(1, g.n + 1):
        sa = sherali_adams_bound(g, t).value
        assert a <= sa <= stable_set_bound(g, t, certificate=False).value


def test_sherali_adams_examples():
    c5 = unweighted(gr.odd_circuit(5))
    assert stable_set_bound(c5, 2).value == Fraction(5, 2)
    assert sherali_adams_bound(c5, 2).value <= Fraction(5, 2)
    edgeless = WeightedGraph.build(Graph(3, frozenset()), [1, 2, Fraction(1, 2)])
    assert sherali_adams_bound(edgeless, 1).value == Fraction(7, 2)
    # with an edge, the ideal removes x1 x2 and order 1 becomes finite
    assert sherali_adams_bound(unweighted(gr.path(2)), 1).value == 2
    assert sherali_adams_bound(unweighted(gr.path(2)), 2).value == 1


@settings(max_examples=15)
@given(weighted_graphs(max_n=6))
def test_ls_operator_between_alpha_and_alpha_star(g):
    v = ls_operator_bound(g).value
    assert stability_number(g) <= v <= fractional_stability(g)


@pytest.mark.parametrize("seed", range(5))
def test_ls_operator_exact_on_bipartite(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 8)
    g = WeightedGraph.build(gr.random_bipartite(n, 0.6, seed), [rng.randint(1, 9) for _ in range(n)])
    assert ls_operator_bound(g).value == stability_number(g)


def test_ls_operator_on_k4_and_c5():
    k4 = unweighted(gr.complete(4))
    assert ls_operator_bound(k4).value == stable_set_bound(k4, 3).value
    assert ls_operator_bound(unweighted(gr.odd_circuit(5))).value == 2


def test_zeta_closed_form_examples():
    assert zeta_closed_form(1, 0) == 1
    for a in range(2, 6):
        for t in range(0, a - 1):
            assert zeta_closed_form(a, t) == INF
        assert zeta_closed_form(a, a * a - 2) == a + 1
    with pytest.raises(ValueError):
        zeta_closed_form(0, 1)


def test_zeta_expansion_examples():
    assert zeta_by_expansion(gr.complete(2), 0) == 1
    assert zeta_by_expansion(gr.odd_circuit(5), 2) == 3
    assert zeta(gr.odd_circuit(5), 2) == 3
    with pytest.raises(ValueError):
        zeta_by_expansion(gr.complete(11), 1)


@pytest.mark.parametrize("graph", [gr.complete(4), gr.odd_circuit(5), gr.star(3), gr.path(4),
                                   gr.liptak_tuncel(2), gr.odd_wheel(5), Graph(3, frozenset())])
def test_zeta_closed_form_matches_expansion(graph):
    a = unweighted_stability_number(graph)
    top = 6 if graph.n <= 5 else 4
    for t in range(0, top + 1):
        assert zeta_by_expansion(graph, t) == zeta_closed_form(a, t)


@settings(max_examples=10)
@given(st.integers(1, 6), st.data())
def test_zeta_expansion_random(n, data):
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    g = Graph.from_edges(n, [e for e in pairs if data.draw(st.booleans())])
    t = data.draw(st.integers(0, 4))
    assert zeta_by_expansion(g, t) == zeta_closed_form(unweighted_stability_number(g), t)


@given(st.integers(1, 7), st.integers(0, 60))
def test_floor_of_zeta_is_alpha_beyond_the_rank(a, extra):
    t = a * a - 1 + extra
    v = zeta_closed_form(a, t)
    assert v != INF and int(v) == a


def test_kp_rank_examples():
    for n in range(1, 6):
        assert kp_rank(gr.complete(n)) == 0
        assert kp_rank(gr.star(n)) == n * n - 1
    for k in (2, 3, 4):
        assert kp_rank(gr.liptak_tuncel(k)) == k * k - 1
