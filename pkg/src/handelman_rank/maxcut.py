"""Handelman bounds for max-cut through the +-1 moment LP.

With ``x = (1 - z) / 2`` every Handelman product ``x^I (1-x)^{T \\ I}`` is a
positive multiple of ``(1 - z)^I (1 + z)^{T \\ I}``.  A linear functional on
square-free polynomials in ``z`` is a vector ``y_S`` with ``y_{} = 1``, and it
is nonnegative on these products iff
``sum_{A <= T} (-1)^{|A & I|} y_A >= 0``.  Maximising the expected cut
weight under such a functional gives the dual of the membership LP.
"""
from __future__ import annotations

import itertools
import time
from fractions import Fraction

from .graphs import WeightedGraph, mask_of, members
from .handelman import INF, BoundReport, check_order, handelman_bound
from .polynomials import SquareFreePoly, subsets
from .rational_lp import LinearProgram, Sense, Status, solve
from .stable_set import max_cut_value


def maxcut_objective_poly(g: WeightedGraph) -> SquareFreePoly:
    """``sum_i d_i x_i - 2 sum_ij w_ij x_i x_j`` with ``d_i`` the weighted degree."""
    c: dict[int, Fraction] = {}
    for (i, j), w in g.edge_weights.items():
        for v in (i, j):
            c[1 << (v - 1)] = c.get(1 << (v - 1), Fraction(0)) + w
        c[(1 << (i - 1)) | (1 << (j - 1))] = -2 * w
    return SquareFreePoly(g.n, c)


def moment_lp(g: WeightedGraph, t: int) -> tuple[LinearProgram, dict[int, int]]:
    n = g.n
    if t < 2:
        raise ValueError("max-cut bounds need order t >= 2")
    check_order(n, t)
    lp = LinearProgram(f"maxcut_moments_t{t}")
    y: dict[int, int] = {}
    for k in range(1, t + 1):
        for S in itertools.combinations(range(1, n + 1), k):
            y[mask_of(S)] = lp.add_variable("y" + "_".join(map(str, S)), lower=None)
    for T in itertools.combinations(range(1, n + 1), t):
        tm = mask_of(T)
        for I in subsets(tm):
            row: dict[int, int] = {}
            const = 1  # the A = {} term, y_{} = 1
            for A in subsets(tm):
                if A:
                    row[y[A]] = -1 if (A & I).bit_count() % 2 else 1
            lp.add_constraint(row, ">=", -const,
                              "T" + "".join(map(str, T)) + "_I" + "".join(map(str, members(I))))
    obj: dict[int, Fraction] = {}
    const = Fraction(0)
    for (i, j), w in g.edge_weights.items():
        obj[y[(1 << (i - 1)) | (1 << (j - 1))]] = -w / 2
        const += w / 2
    lp.set_objective(obj, Sense.MAX, const)
    return lp, y


def maxcut_handelman_bound(g: WeightedGraph, t: int, method: str = "auto") -> BoundReport:
    """Order-``t`` Handelman bound for ``mc(G, w)``, solved in moment form."""
    start = time.perf_counter()
    lp, y = moment_lp(g, t)
    sol = solve(lp, method=method)
    if sol.status is Status.INFEASIBLE:
        # the cut points are always feasible, so this cannot happen for a valid model
        raise RuntimeError("moment LP infeasible")
    value = INF if sol.status is Status.UNBOUNDED else sol.objective
    moments = None
    if sol.status is Status.OPTIMAL:
        moments = {S: sol.values[j] for S, j in y.items()}
    return BoundReport("maxcut_moment", t, value, moments, time.perf_counter() - start)


def maxcut_primal_bound(g: WeightedGraph, t: int, method: str = "auto") -> BoundReport:
    """Same quantity through Handelman membership of the 0/1 objective polynomial."""
    return handelman_bound(maxcut_objective_poly(g), t, certificate=False, method=method)


def cut_moments(n: int, side: int, t: int) -> dict[int, int]:
    """``y_S = prod_{i in S} v_i`` for the sign vector with ``v_i = -1`` on ``side``."""
    out = {}
    for k in range(1, t + 1):
        for S in itertools.combinations(range(1, n + 1), k):
            m = mask_of(S)
            out[m] = -1 if (m & side).bit_count() % 2 else 1
    return out


def maxcut_rank(g: WeightedGraph, method: str = "auto") -> tuple[int, dict[int, Fraction]]:
    """Smallest ``t >= 2`` whose bound equals ``mc(G, w)``, with the per-order trace."""
    if g.n < 2:
        raise ValueError("max-cut rank needs at least two vertices")
    mc = max_cut_value(g)
    trace = {}
    for t in range(2, g.n + 1):
        v = maxcut_handelman_bound(g, t, method=method).value
        trace[t] = v
        if v == mc:
            return t, trace
    raise RuntimeError(f"bound did not reach mc = {mc} by t = n")
