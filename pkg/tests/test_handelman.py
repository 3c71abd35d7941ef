import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from handelman_rank import graphs as gr
from handelman_rank.graphs import Graph, WeightedGraph, unweighted
from handelman_rank.handelman import (INF, HandelmanCertificate, SizeGuardError, error_bound_check,
                                      error_bound_lambda, error_bound_rhs, format_value, handelman_bound,
                                      handelman_rank, parse_product_term, parse_value, rank_bounds,
                                      stable_set_bound, verify_certificate)
from handelman_rank.polynomials import SquareFreePoly, stable_set_poly
from handelman_rank.reproduce import clique_sum_of_cliques, shipped_certificate
from handelman_rank.stable_set import fractional_stability, rho, stability_number

from oracles import float_handelman
from test_graphs import weighted_graphs


def rk(g):
    return 0 if g.n == 0 else handelman_rank(g).rank


def random_weighted(n, p, seed, lo=1, hi=9):
    rng = random.Random(seed)
    return WeightedGraph.build(gr.random_graph(n, p, seed), [rng.randint(lo, hi) for _ in range(n)])


@pytest.mark.parametrize("n", range(2, 7))
def test_complete_graph_rank(n):
    r = handelman_rank(unweighted(gr.complete(n)))
    assert r.rank == n and r.alpha == 1


@pytest.mark.parametrize("graph,expected", [
    (gr.odd_circuit(5), 3), (gr.odd_circuit(7), 3),
    (gr.complement(unweighted(gr.odd_circuit(5))).graph, 3),
    (gr.complement(unweighted(gr.odd_circuit(7))).graph, 4),
    (gr.clique_fan(2), 2),
])
def test_rank_examples(graph, expected):
    assert handelman_rank(unweighted(graph)).rank == expected


def test_c5_trace():
    r = handelman_rank(unweighted(gr.odd_circuit(5)))
    assert r.trace == {1: INF, 2: Fraction(5, 2), 3: 2}


def test_order_one_is_infinite_with_an_edge():
    assert stable_set_bound(unweighted(gr.path(2)), 1).value == INF
    assert stable_set_bound(WeightedGraph.build(gr.Graph(3, frozenset()), [1, 2, 3]), 1).value == 6


@settings(max_examples=15)
@given(weighted_graphs(max_n=6))
def test_order_two_equals_fractional_stability(g):
    assert stable_set_bound(g, 2 if g.n >= 2 else 1).value == (fractional_stability(g) if g.n >= 2
                                                               else g.total_weight)


@pytest.mark.parametrize("seed", range(4))
def test_order_two_on_nine_vertices(seed):
    g = random_weighted(9, 0.4, seed)
    assert stable_set_bound(g, 2, certificate=False).value == rho(g, 2) == fractional_stability(g)


@settings(max_examples=20)
@given(weighted_graphs(max_n=5), st.data())
def test_bound_matches_float_oracle(g, data):
    t = data.draw(st.integers(1, g.n))
    exact = stable_set_bound(g, t).value
    approx = float_handelman(stable_set_poly(g), t)
    assert (exact == INF and approx == float("inf")) or abs(float(exact) - approx) < 1e-6


@settings(max_examples=15)
@given(weighted_graphs(max_n=6))
def test_invariants(g):
    a = stability_number(g)
    prev = INF
    for t in range(1, g.n + 1):
        rep = stable_set_bound(g, t)
        v = rep.value
        assert v <= prev and a <= v
        assert v >= g.total_weight / t
        if t >= 2:
            assert v <= rho(g, t)
        if v != INF:
            assert verify_certificate(rep.certificate, stable_set_poly(g))
        prev = v
    assert prev == a
    if g.n >= 2:
        assert (stable_set_bound(g, 2).value == a) == (a == fractional_stability(g))


@pytest.mark.parametrize("seed", range(5))
def test_bipartite_rank_at_most_two(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 8)
    g = WeightedGraph.build(gr.random_bipartite(n, 0.6, seed),
                            [Fraction(rng.randint(1, 9), rng.randint(1, 3)) for _ in range(n)])
    assert handelman_rank(g).rank <= 2


def test_fig1_family_rank_two():
    for t in (2, 3):
        assert handelman_rank(unweighted(gr.clique_fan(t))).rank == 2


# ----------------------------------------------------------------------------
# node, edge and clique-sum laws

@settings(max_examples=15)
@given(weighted_graphs(max_n=6, mode="MAX"), st.data())
def test_node_deletion_laws(g, data):
    if g.n < 2:
        return
    j = data.draw(st.integers(1, g.n))
    h = gr.delete_node(g, j)
    a, ah = stability_number(g), stability_number(h)
    r, rh = rk(g), rk(h)
    if ah == a:
        assert rh <= r
    if g.graph.degree(j) == 0 and g.w(j) > 0:
        assert r == max(rh, 1)


@pytest.mark.parametrize("seed", range(6))
def test_node_deletion_unit_weights(seed):
    g = unweighted(gr.random_graph(7, 0.5, seed))
    for j in g.graph.vertices:
        h = gr.delete_node(g, j)
        if stability_number(h) == stability_number(g) - 1:
            assert rk(g) <= rk(h)
        else:
            assert rk(h) <= rk(g)


@pytest.mark.parametrize("seed", range(6))
def test_critical_edge_law(seed):
    g = unweighted(gr.random_graph(7, 0.6, seed))
    for e in g.graph.sorted_edges():
        h = gr.delete_edge(g, e)
        if stability_number(h) == stability_number(g) + 1:
            assert rk(h) <= rk(g)


def _glued(seed):
    rng = random.Random(seed)
    t = rng.randint(1, 2)
    parts = []
    for _ in range(2):
        n = rng.randint(t + 1, 5)
        base = gr.random_graph(n, 0.5, rng.randrange(10 ** 6))
        edges = set(base.edges) | {(a, b) for a in range(1, t + 1) for b in range(a + 1, t + 1)}
        parts.append(unweighted(Graph.from_edges(n, edges)))
    c = list(range(1, t + 1))
    return parts[0], parts[1], c, gr.clique_sum(parts[0], parts[1], c, c)


def _sides(g1, g2, c, g):
    """H_1 and H_2 as induced subgraphs of G; G_2's private vertices follow G_1's."""
    h1 = gr.delete_nodes(g1, c)
    h2 = gr.induced_subgraph(g, range(g1.n + 1, g.n + 1))
    return h1, h2


def _max_stable_support(g, c):
    from handelman_rank.stable_set import stable_sets
    a = stability_number(g)
    best = [m for m in stable_sets(g.graph) if m.bit_count() == a]
    return [v for v in c if any(m >> (v - 1) & 1 for m in best)]


@pytest.mark.parametrize("seed", range(12))
def test_clique_sum_laws(seed):
    g1, g2, c, g = _glued(seed)
    h1, h2 = _sides(g1, g2, c, g)
    a, a1, a2 = stability_number(g), stability_number(g1), stability_number(g2)
    r = rk(g)
    if a == a1 + a2:
        assert r <= min(max(rk(g1), rk(h2)), max(rk(h1), rk(g2)))
        assert r <= max(rk(g1), rk(g2))
    elif a == a1 + a2 - 1:
        if a1 == stability_number(h1) + 1:
            assert r <= max(rk(h1), rk(g2))
        else:
            g2_private = gr.delete_nodes(g2, c)
            assert a2 == stability_number(g2_private) + 1
            assert r <= max(rk(g1), rk(g2_private))
    else:
        assert a == a1 + a2 - 2
        c1 = _max_stable_support(g1, c)
        hp1 = gr.delete_nodes(g1, c1)
        hp2 = gr.delete_nodes(g, [v for v in range(1, g1.n + 1) if v not in c1])
        assert stability_number(hp1) == a1 - 1 and stability_number(hp2) == a2 - 1
        assert r <= max(rk(hp1), rk(hp2))


def test_clique_sum_cases_are_all_reached():
    cases = set()
    for seed in range(12):
        g1, g2, c, g = _glued(seed)
        cases.add(stability_number(g1) + stability_number(g2) - stability_number(g))
    assert cases == {0, 1, 2}


@pytest.mark.parametrize("n1,n2,t", [(2, 3, 1), (3, 3, 1), (4, 5, 2), (2, 6, 1), (3, 6, 2), (4, 4, 3)])
def test_clique_sum_of_cliques_rank(n1, n2, t):
    g = clique_sum_of_cliques(n1, n2, t)
    assert handelman_rank(g).rank == max(-(-(n1 + n2 - t) // 2), n2 - t)


# ----------------------------------------------------------------------------
# certificates

def test_shipped_certificates_verify():
    c5 = unweighted(gr.odd_circuit(5))
    cert = shipped_certificate("c5")
    assert cert.t == 3 and cert.lam == 2
    assert verify_certificate(cert, stable_set_poly(c5))
    g2 = unweighted(gr.liptak_tuncel(2))
    cert2 = shipped_certificate("g2")
    assert cert2.t == 4 and verify_certificate(cert2, stable_set_poly(g2))


def test_perturbed_certificate_fails():
    cert = shipped_certificate("c5")
    p = stable_set_poly(unweighted(gr.odd_circuit(5)))
    T, I, c = cert.terms[0]
    bad = HandelmanCertificate(cert.n, cert.t, cert.lam, ((T, I, c + Fraction(1, 7)),) + cert.terms[1:])
    assert not verify_certificate(bad, p)
    neg = HandelmanCertificate(cert.n, cert.t, cert.lam, ((T, I, -c),) + cert.terms[1:])
    assert not verify_certificate(neg, p)
    wrong_order = HandelmanCertificate(cert.n, cert.t + 1, cert.lam, cert.terms)
    assert not verify_certificate(wrong_order, p)
    with pytest.raises(ValueError):
        verify_certificate(cert, SquareFreePoly(4))


def test_certificate_json_and_product_form():
    rep = stable_set_bound(unweighted(gr.odd_circuit(5)), 3)
    cert = rep.certificate
    again = HandelmanCertificate.from_json(cert.to_json())
    assert again == cert
    terms = tuple(parse_product_term(s) for s in cert.product_form())
    assert terms == cert.terms
    with pytest.raises(ValueError):
        parse_product_term("1 * x1*x1")
    with pytest.raises(ValueError):
        parse_product_term("1 * y2")


def test_elevation_keeps_the_identity():
    p = stable_set_poly(unweighted(gr.odd_circuit(5)))
    cert = stable_set_bound(unweighted(gr.odd_circuit(5)), 3).certificate
    for t in (3, 4, 5):
        up = cert.elevate(t)
        assert up.t == t and verify_certificate(up, p)
    with pytest.raises(ValueError):
        cert.elevate(2)


def test_value_text():
    assert format_value(INF) == "INF" and parse_value("inf") == INF
    assert parse_value(format_value(Fraction(5, 2))) == Fraction(5, 2)


def test_size_guard_and_order_range():
    g = unweighted(gr.Graph(20, frozenset()))
    with pytest.raises(SizeGuardError):
        stable_set_bound(g, 10)
    with pytest.raises(ValueError):
        stable_set_bound(unweighted(gr.complete(3)), 4)
    with pytest.raises(ValueError):
        stable_set_bound(unweighted(gr.complete(3)), 0)


# ----------------------------------------------------------------------------
# closed-form bounds and the error bound

def test_rank_bounds_examples():
    b = rank_bounds(unweighted(gr.odd_circuit(5)))
    assert (b.lower, b.upper1, b.upper2) == (3, 4, 3)
    for n in range(2, 7):
        b = rank_bounds(unweighted(gr.complete(n)))
        assert b.lower == n and b.upper1 == n
    b = rank_bounds(unweighted(gr.Graph(4, frozenset())))
    assert b.upper1 == 1 and b.upper2 == 2
    b = rank_bounds(WeightedGraph.build(gr.path(3), [1, 3, 2], "MIN"))
    assert b.upper1 is None and b.upper2 is None


@settings(max_examples=10)
@given(weighted_graphs(max_n=6))
def test_rank_within_closed_form_bounds(g):
    b = rank_bounds(g)
    r = rk(g)
    if g.n:
        assert b.lower <= r
    if b.upper1 is not None and g.n:
        assert r <= b.upper1
    if b.upper2 is not None and g.n:
        assert r <= b.upper2


def test_error_bound_examples():
    p = stable_set_poly(unweighted(gr.odd_circuit(5)))
    chk = error_bound_check(p, 3)
    assert chk.lhs == 2 and chk.p_max == 2 and chk.holds
    assert chk.rhs >= Fraction(10, 3)
    assert all(error_bound_lambda(5, 5, k) == 0 for k in range(6))
    full = error_bound_check(p, 5)
    assert full.lhs == full.rhs == 2
    with pytest.raises(ValueError):
        error_bound_rhs(p + 1, 3)


@settings(max_examples=20)
@given(st.integers(2, 5), st.data())
def test_error_bound_holds_for_nonpositive_higher_terms(n, data):
    masks = [m for m in range(1, 1 << n)]
    chosen = data.draw(st.lists(st.sampled_from(masks), min_size=1, max_size=6))
    coeffs = {}
    for m in chosen:
        v = Fraction(data.draw(st.integers(-6, 6)), data.draw(st.integers(1, 3)))
        coeffs[m] = abs(v) if m.bit_count() == 1 else -abs(v)
    p = SquareFreePoly(n, coeffs)
    t = data.draw(st.integers(max(p.degree, 1), n))
    chk = error_bound_check(p, t)
    assert chk.lhs == handelman_bound(p, t, certificate=False).value
    assert chk.holds and chk.rhs == Fraction(n, t) * chk.p_max
