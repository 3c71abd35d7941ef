"""Combinatorial baselines: stability numbers, clique covers, the defect and max-cut."""
from __future__ import annotations

import itertools
import json
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .graphs import Graph, WeightedGraph, mask_of, members
from .rational_lp import LinearProgram, Sense, solve

MAX_CUT_BRUTE_FORCE = 24


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length()


def maximum_stable_set(g: WeightedGraph) -> tuple[Fraction, tuple[int, ...]]:
    """Exact maximum weight stable set by branch and bound.

    Branches on a vertex of maximum degree in the candidate set (take it, or
    drop it); prunes with a greedy sequential clique cover whose bound is the
    sum of the heaviest weight in each clique.
    """
    adj = g.graph.adjacency
    w = (Fraction(0),) + g.node_weights
    best_val = Fraction(-1)
    best_set = 0

    def clique_cover_bound(cand: int) -> Fraction:
        bound = Fraction(0)
        rest = cand
        while rest:
            v = _lowest(rest)
            clique = 1 << (v - 1)
            heavy = w[v]
            common = rest & adj[v]
            while common:
                u = _lowest(common)
                clique |= 1 << (u - 1)
                heavy = max(heavy, w[u])
                common &= adj[u]
            rest &= ~clique
            bound += heavy
        return bound

    def search(cand: int, chosen: int, value: Fraction):
        nonlocal best_val, best_set
        # vertices with no neighbour among the candidates are always taken
        free = 0
        for v in members(cand):
            if not adj[v] & cand:
                free |= 1 << (v - 1)
        if free:
            value += sum((w[v] for v in members(free)), Fraction(0))
            chosen |= free
            cand &= ~free
        if not cand:
            if value > best_val:
                best_val, best_set = value, chosen
            return
        if value + clique_cover_bound(cand) <= best_val:
            return
        v = max(members(cand), key=lambda u: ((adj[u] & cand).bit_count(), -u))
        search(cand & ~(1 << (v - 1)) & ~adj[v], chosen | (1 << (v - 1)), value + w[v])
        search(cand & ~(1 << (v - 1)), chosen, value)

    search((1 << g.n) - 1, 0, Fraction(0))
    return best_val, members(best_set)


def stability_number(g: WeightedGraph) -> Fraction:
    """alpha(G, w)."""
    return maximum_stable_set(g)[0]


def unweighted_stability_number(graph: Graph) -> int:
    """alpha(G) of the underlying unweighted graph."""
    return int(stability_number(WeightedGraph.build(graph, None, "UNIT")))


def clique_number(graph: Graph) -> int:
    return max((len(c) for c in enumerate_cliques(graph, graph.n).cliques), default=0)


def fractional_stability(g: WeightedGraph) -> Fraction:
    """alpha*(G, w) = max w.x over x >= 0, x_i <= 1, x_i + x_j <= 1 on edges.

    The bounds ``x_i <= 1`` only matter for isolated vertices; they make the
    value agree with the fractional edge cover number.
    """
    lp = LinearProgram("fractional_stability")
    xs = lp.add_variables(f"x{i}" for i in g.graph.vertices)
    for i in g.graph.vertices:
        lp.add_constraint({xs[i - 1]: 1}, "<=", 1, f"single{i}")
    for i, j in g.graph.sorted_edges():
        lp.add_constraint({xs[i - 1]: 1, xs[j - 1]: 1}, "<=", 1, f"edge{i}_{j}")
    lp.set_objective({xs[i - 1]: g.w(i) for i in g.graph.vertices}, Sense.MAX)
    return solve(lp).objective


@dataclass(frozen=True)
class CliqueList:
    cliques: tuple[tuple[int, ...], ...]
    t: int


def enumerate_cliques(graph: Graph, t: int) -> CliqueList:
    """All cliques with 1..t vertices, extended in ascending vertex order."""
    if t < 1:
        raise ValueError("clique size cap must be at least 1")
    adj = graph.adjacency
    out: list[tuple[int, ...]] = []

    def extend(clique: tuple[int, ...], cand: int):
        out.append(clique)
        if len(clique) == t:
            return
        for v in members(cand):
            extend(clique + (v,), cand & adj[v] & ~((1 << v) - 1))

    for v in graph.vertices:
        extend((v,), adj[v] & ~((1 << v) - 1))
    out.sort(key=lambda c: (len(c), c))
    return CliqueList(tuple(out), t)


@dataclass(frozen=True)
class CliqueCover:
    """An optimal fractional t-clique cover: ``value = sum(lam)`` and ``sum lam_C chi^C >= w``."""

    value: Fraction
    multipliers: dict[tuple[int, ...], Fraction]
    t: int

    def to_json(self) -> str:
        return json.dumps([{"clique": list(c), "lambda": str(v)}
                           for c, v in sorted(self.multipliers.items(), key=lambda kv: (len(kv[0]), kv[0]))])

    @staticmethod
    def multipliers_from_json(text: str) -> dict[tuple[int, ...], Fraction]:
        return {tuple(d["clique"]): Fraction(d["lambda"]) for d in json.loads(text)}


def fractional_clique_cover(g: WeightedGraph, t: int) -> CliqueCover:
    """rho_t(G, w): min sum lam_C over cliques with |C| <= t, covering every w_i."""
    cl = enumerate_cliques(g.graph, t)
    lp = LinearProgram(f"clique_cover_t{t}")
    cols = lp.add_variables("lam_" + "_".join(map(str, c)) for c in cl.cliques)
    for i in g.graph.vertices:
        row = {cols[k]: 1 for k, c in enumerate(cl.cliques) if i in c}
        lp.add_constraint(row, ">=", g.w(i), f"cover{i}")
    lp.set_objective({c: 1 for c in cols}, Sense.MIN)
    sol = solve(lp)
    mult = {c: sol.values[k] for k, c in enumerate(cl.cliques) if sol.values[k]}
    return CliqueCover(sol.objective, mult, t)


def rho(g: WeightedGraph, t: int) -> Fraction:
    return fractional_clique_cover(g, t).value


def defect(g: WeightedGraph, b) -> Fraction:
    """``2 (alpha* - min(b, alpha*))`` for the valid inequality ``w.x <= b``."""
    if not g.has_integer_weights:
        warnings.warn("the defect is meant for integer node weights", stacklevel=2)
    b = Fraction(b)
    a = fractional_stability(g)
    return 2 * (a - min(b, a))


def max_cut_value(g: WeightedGraph) -> Fraction:
    """mc(G, w) by enumerating all bipartitions (vertex ``n`` fixed on one side)."""
    if g.n > MAX_CUT_BRUTE_FORCE:
        raise ValueError(f"brute-force max-cut limited to n <= {MAX_CUT_BRUTE_FORCE}")
    if g.n == 0 or not g.edges:
        return Fraction(0)
    edges = [((1 << (i - 1)) | (1 << (j - 1)), wij) for (i, j), wij in g.edge_weights.items()]
    best = None
    for s in range(1 << (g.n - 1)):
        val = sum((wij for e, wij in edges if (s & e).bit_count() == 1), Fraction(0))
        if best is None or val > best:
            best = val
    return best


def is_stable_mask(graph: Graph, mask: int) -> bool:
    return all(not (graph.adjacency[v] & mask) for v in members(mask))


def stable_sets(graph: Graph):
    """Every stable set as a bitmask (small graphs only)."""
    for r in range(graph.n + 1):
        for vs in itertools.combinations(graph.vertices, r):
            m = mask_of(vs)
            if is_stable_mask(graph, m):
                yield m
