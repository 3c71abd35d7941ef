"""Comparison bounds: Sherali-Adams style LP, first Lovasz-Schrijver level, and zeta.

The Sherali-Adams variant enlarges the Handelman cone by the truncated edge
ideal.  Every product ``x_i x_j x^S`` reduces to the monomial ``x^{S+ij}``,
and its multiplier is free, so the ideal contributes one free column for each
monomial of size at most ``t`` that contains an edge.
"""
from __future__ import annotations

import itertools
import math
import time
from fractions import Fraction

from .graphs import Graph, WeightedGraph
from .handelman import INF, BoundReport, Value, _report, membership_lp
from .polynomials import SquareFreePoly, binomial
from .rational_lp import LinearProgram, Sense, Status, solve
from .stable_set import unweighted_stability_number

MAX_ZETA_VERTICES = 10
MAX_ZETA_ORDER = 8


def _ideal_monomials(graph: Graph, t: int) -> list[int]:
    adj = graph.adjacency
    out = []
    for k in range(2, t + 1):
        for S in itertools.combinations(graph.vertices, k):
            m = 0
            for v in S:
                m |= 1 << (v - 1)
            if any(adj[v] & m for v in S):
                out.append(m)
    return out


def sherali_adams_bound(g: WeightedGraph, t: int, certificate: bool = False,
                        method: str = "auto") -> BoundReport:
    """sa^(t)(G, w) = min lam with ``lam - w.x`` in H_t plus the edge ideal of degree <= t."""
    start = time.perf_counter()
    p = SquareFreePoly(g.n, {1 << (i - 1): g.w(i) for i in g.graph.vertices})
    lp, basis, lam, _ = membership_lp(p, t, _ideal_monomials(g.graph, t))
    sol = solve(lp, method=method)
    return _report("sherali_adams", t, g.n, sol, basis, lam, certificate, start)


def ls_operator_bound(g: WeightedGraph) -> BoundReport:
    """ls^(1)(G, w): max w.x over the first N-operator lift of FR(G).

    Variables are ``x_i = Y_0i = Y_ii`` and symmetric ``Y_ij``.  Each column
    ``v`` in {``Y e_i``, ``Y (e_0 - e_i)``} must lie in the homogenised cone
    ``v >= 0``, ``v_j <= v_0``, ``v_j + v_k <= v_0`` for ``jk`` in E.
    """
    start = time.perf_counter()
    lp = LinearProgram("ls1")
    x = lp.add_variables(f"x{i}" for i in g.graph.vertices)
    Y: dict[tuple[int, int], int] = {}
    for i, j in itertools.combinations(g.graph.vertices, 2):
        Y[i, j] = lp.add_variable(f"Y{i}_{j}")

    def entry(i: int, j: int) -> dict[int, int]:
        if i == j:
            return {x[i - 1]: 1}
        return {Y[min(i, j), max(i, j)]: 1}

    def combo(*parts) -> dict[int, int]:
        out: dict[int, int] = {}
        for sign, row in parts:
            for k, v in row.items():
                out[k] = out.get(k, 0) + sign * v
        return out

    edges = g.graph.sorted_edges()
    for i in g.graph.vertices:
        xi = {x[i - 1]: 1}
        # column Y e_i: v_0 = x_i, v_j = Y_ij;  column Y (e_0 - e_i): v_0 = 1 - x_i, v_j = x_j - Y_ij
        for tag, v0, v0_const, vj in (
            ("a", xi, 0, lambda j: entry(i, j)),
            ("b", combo((-1, xi)), 1, lambda j: combo((1, {x[j - 1]: 1}), (-1, entry(i, j)))),
        ):
            lp.add_constraint(v0, ">=", -v0_const, f"{tag}{i}_0")
            for j in g.graph.vertices:
                lp.add_constraint(vj(j), ">=", 0, f"{tag}{i}_nn{j}")
                lp.add_constraint(combo((1, vj(j)), (-1, v0)), "<=", v0_const, f"{tag}{i}_up{j}")
            for j, k in edges:
                lp.add_constraint(combo((1, vj(j)), (1, vj(k)), (-1, v0)), "<=", v0_const,
                                  f"{tag}{i}_e{j}_{k}")
    lp.set_objective({x[i - 1]: g.w(i) for i in g.graph.vertices}, Sense.MAX)
    sol = solve(lp)
    if sol.status is not Status.OPTIMAL:
        raise RuntimeError(f"unexpected LP status {sol.status}")
    return BoundReport("ls1", 1, sol.objective, None, time.perf_counter() - start)


# ----------------------------------------------------------------------------
# zeta

def zeta_closed_form(alpha: int, t: int) -> Value:
    """``C(t+2, 2) / (C(u, 2) alpha + u v)`` with ``t + 2 = u alpha + v``, ``0 <= v < alpha``."""
    if alpha < 1 or t < 0:
        raise ValueError("need alpha >= 1 and t >= 0")
    u, v = divmod(t + 2, alpha)
    den = binomial(u, 2) * alpha + u * v
    return INF if den == 0 else Fraction(binomial(t + 2, 2), den)


def _multinomial(beta) -> int:
    out = math.factorial(sum(beta))
    for b in beta:
        out //= math.factorial(b)
    return out


def zeta_by_expansion(graph: Graph, t: int) -> Value:
    """zeta^(t)(G) from coefficient comparison of ``q sigma^t`` and ``sigma^{t+2}``.

    ``q = sum x_i^2 + 2 sum_E x_i x_j`` and ``sigma = sum x_i``.  The least
    ``mu`` making every coefficient of ``(mu q - sigma^2) sigma^t``
    nonnegative is the largest ratio of coefficients; a monomial missing from
    ``q sigma^t`` forces INF.
    """
    n = graph.n
    if n > MAX_ZETA_VERTICES or t > MAX_ZETA_ORDER:
        raise ValueError(f"zeta expansion limited to n <= {MAX_ZETA_VERTICES}, t <= {MAX_ZETA_ORDER}")
    if t < 0 or n < 1:
        raise ValueError("need t >= 0 and at least one vertex")
    edges = [(i - 1, j - 1) for i, j in graph.sorted_edges()]
    best: Fraction | None = None
    for combo in itertools.combinations_with_replacement(range(n), t + 2):
        beta = [0] * n
        for i in combo:
            beta[i] += 1
        top = _multinomial(beta)
        low = 0
        for i in range(n):
            if beta[i] >= 2:
                beta[i] -= 2
                low += _multinomial(beta)
                beta[i] += 2
        for i, j in edges:
            if beta[i] and beta[j]:
                beta[i] -= 1
                beta[j] -= 1
                low += 2 * _multinomial(beta)
                beta[i] += 1
                beta[j] += 1
        if low == 0:
            return INF
        r = Fraction(top, low)
        if best is None or r > best:
            best = r
    return best


def kp_rank(graph: Graph) -> int:
    """rk_KP(G) = alpha(G)^2 - 1."""
    a = unweighted_stability_number(graph)
    return a * a - 1


def zeta(graph: Graph, t: int) -> Value:
    return zeta_closed_form(unweighted_stability_number(graph), t)


__all__ = ["sherali_adams_bound", "ls_operator_bound", "zeta_closed_form",
           "zeta_by_expansion", "kp_rank", "zeta"]
