"""Machine-checked reproduction of the rank results.

Each ``criterion_k`` returns a :class:`CriterionResult`.  Random instances are
drawn from fixed seeds, every comparison is exact rational equality or
inequality, and the whole run executes inside :func:`rational_lp.audit` so
each optimal LP solution is independently re-substituted.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Callable

from . import graphs as gr
from .graphs import WeightedGraph, WeightMode, unweighted
from .handelman import (INF, HandelmanCertificate, error_bound_check, handelman_bound,
                        handelman_rank, rank_bounds, verify_certificate)
from .hierarchies import (kp_rank, ls_operator_bound, sherali_adams_bound,
                          zeta_by_expansion, zeta_closed_form)
from .maxcut import maxcut_handelman_bound, maxcut_primal_bound, maxcut_rank
from .polynomials import (SquareFreePoly, expand_basis_term, point_expansion, restrict,
                          stable_set_poly, subsets)
from .rational_lp import Audit, audit
from .stable_set import (fractional_clique_cover, fractional_stability, max_cut_value,
                         stability_number, unweighted_stability_number)

DEFAULT_SEED = 20240617


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0
    limit: float | None = None
    parts: dict[str, bool] = field(default_factory=dict)

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        budget = f" (limit {self.limit:.0f}s)" if self.limit else ""
        return f"[{verdict}] criterion {self.number:2d}: {self.title} | {self.detail} | {self.seconds:.1f}s{budget}"


@dataclass
class Workspace:
    """Seeded instances and cached results shared between criteria."""

    seed: int = DEFAULT_SEED
    ranks: dict[str, tuple[WeightedGraph, int]] = field(default_factory=dict)
    _bounds: dict[tuple[str, int], object] = field(default_factory=dict)
    _random: list[tuple[str, WeightedGraph]] | None = None
    audit: Audit | None = None

    def rng(self, tag: str) -> random.Random:
        return random.Random(f"{self.seed}:{tag}")

    def random_set(self) -> list[tuple[str, WeightedGraph]]:
        """20 random graphs on 5..9 vertices with random rational weights (MAX edges)."""
        if self._random is None:
            rng = self.rng("random-set")
            out = []
            for k in range(20):
                n = 5 + k % 5
                g = gr.random_graph(n, rng.choice((0.3, 0.4, 0.5, 0.6)), rng.randrange(10**9))
                if not g.edges:
                    g = gr.Graph.from_edges(n, [(1, 2)])
                w = [Fraction(rng.randint(1, 12), rng.randint(1, 4)) for _ in range(n)]
                out.append((f"rand{k}_n{n}", WeightedGraph.build(g, w, WeightMode.MAX)))
            self._random = out
        return self._random

    def bound(self, label: str, g: WeightedGraph, t: int):
        key = (label, t)
        if key not in self._bounds:
            self._bounds[key] = handelman_bound(stable_set_poly(g), t, certificate=False).value
        return self._bounds[key]

    def rank(self, label: str, g: WeightedGraph, tmax: int | None = None) -> int:
        if label not in self.ranks:
            r = handelman_rank(g, tmax=tmax)
            for t, v in r.trace.items():
                self._bounds.setdefault((label, t), v)
            self.ranks[label] = (g, r.rank)
        return self.ranks[label][1]


def _random_integer_weights(rng: random.Random, n: int, top: int = 6) -> list[int]:
    return [rng.randint(1, top) for _ in range(n)]


def _fmt(v) -> str:
    return "INF" if v == INF else str(v)


# ----------------------------------------------------------------------------
# criteria

def criterion_1(ws: Workspace) -> CriterionResult:
    got = {n: ws.rank(f"K{n}", unweighted(gr.complete(n))) for n in range(2, 7)}
    ok = all(r == n for n, r in got.items())
    return CriterionResult(1, "rk_H(K_n) = n, n = 2..6", ok,
                           ", ".join(f"K{n}:{r}" for n, r in got.items()), limit=30)


def criterion_2(ws: Workspace) -> CriterionResult:
    parts, ok = [], True
    for n in (5, 7):
        r = ws.rank(f"C{n}", unweighted(gr.odd_circuit(n)))
        ok &= r == 3
        parts.append(f"C{n}:{r}")
    rng = ws.rng("odd-circuit-weights")
    worst = 0
    for n in (5, 7):
        for k in range(5):
            g = WeightedGraph.build(gr.odd_circuit(n), _random_integer_weights(rng, n), WeightMode.MAX)
            r = ws.rank(f"C{n}_w{k}", g)
            worst = max(worst, r)
    ok &= worst <= 3
    parts.append(f"max weighted rank {worst} over 10 weightings")
    return CriterionResult(2, "odd circuits have rank 3 (weighted <= 3)", ok, ", ".join(parts), limit=60)


def criterion_3(ws: Workspace) -> CriterionResult:
    r5 = ws.rank("coC5", unweighted(gr.circuit_complement(5)))
    r7 = ws.rank("coC7", unweighted(gr.circuit_complement(7)))
    return CriterionResult(3, "complements of C_5, C_7 have rank 3, 4", r5 == 3 and r7 == 4,
                           f"coC5:{r5}, coC7:{r7}", limit=120)


def criterion_4(ws: Workspace) -> CriterionResult:
    bad = []
    for label, g in ws.random_set():
        p2 = ws.bound(label, g, 2)
        r2 = fractional_clique_cover(g, 2).value
        a = fractional_stability(g)
        if not p2 == r2 == a:
            bad.append(f"{label}: {p2} {r2} {a}")
    return CriterionResult(4, "p_han^(2) = rho_2 = alpha* on 20 random graphs", not bad,
                           "; ".join(bad) or "20/20 equal", limit=60)


def criterion_5(ws: Workspace) -> CriterionResult:
    bad, checks = [], 0
    for label, g in ws.random_set():
        a = stability_number(g)
        for t in range(2, 5):
            v = ws.bound(label, g, t)
            rho = fractional_clique_cover(g, t).value
            checks += 1
            if not (a <= v <= rho and v >= g.total_weight / t):
                bad.append(f"{label} t={t}: alpha={a} p={v} rho={rho}")
    return CriterionResult(5, "alpha <= p_han^(t) <= rho_t and p_han^(t) >= sum w / t", not bad,
                           "; ".join(bad) or f"{checks} (graph, t) pairs")


def criterion_6(ws: Workspace) -> CriterionResult:
    rng = ws.rng("bipartite")
    bad = []
    for k in range(10):
        n = rng.randint(4, 10)
        g = WeightedGraph.build(gr.random_bipartite(n, 0.6, rng.randrange(10**9)),
                                [Fraction(rng.randint(1, 9), rng.randint(1, 3)) for _ in range(n)])
        label = f"bip{k}_n{n}"
        a = stability_number(g)
        hit = next((t for t in (1, 2) if ws.bound(label, g, t) == a), None)
        if hit is None:
            bad.append(label)
        else:
            ws.ranks[label] = (g, hit)
    return CriterionResult(6, "bipartite graphs have rank <= 2", not bad,
                           "; ".join(bad) or "10/10 exact by order 2")


def criterion_7(ws: Workspace) -> CriterionResult:
    got = {t: ws.rank(f"fan{t}", unweighted(gr.clique_fan(t))) for t in (2, 3)}
    return CriterionResult(7, "clique fans have rank 2", all(r == 2 for r in got.values()),
                           ", ".join(f"t={t}:{r}" for t, r in got.items()))


def clique_sum_of_cliques(n1: int, n2: int, t: int) -> WeightedGraph:
    a = unweighted(gr.complete(n1))
    b = unweighted(gr.complete(n2))
    return gr.clique_sum(a, b, list(range(1, t + 1)), list(range(1, t + 1)))


def criterion_8(ws: Workspace) -> CriterionResult:
    parts, ok = [], True
    for n1, n2, t in ((3, 3, 1), (3, 4, 2), (2, 5, 1), (4, 4, 3)):
        g = clique_sum_of_cliques(n1, n2, t)
        expect = max(-(-(n1 + n2 - t) // 2), n2 - t)
        r = ws.rank(f"K{n1}+K{n2}@{t}", g)
        ok &= r == expect
        parts.append(f"({n1},{n2},{t}):{r}/{expect}")
    return CriterionResult(8, "clique sums of two cliques", ok, ", ".join(parts), limit=120)


def shipped_certificate(name: str) -> HandelmanCertificate:
    text = (resources.files("handelman_rank") / "data" / f"{name}_certificate.json").read_text()
    return HandelmanCertificate.from_json(text)


def criterion_9(ws: Workspace) -> CriterionResult:
    g2 = unweighted(gr.liptak_tuncel(2))
    r = ws.rank("G2", g2)
    c5_ok = verify_certificate(shipped_certificate("c5"), stable_set_poly(unweighted(gr.odd_circuit(5))))
    g2_ok = verify_certificate(shipped_certificate("g2"), stable_set_poly(g2))
    gk = [(k, stability_number(unweighted(gr.liptak_tuncel(k))),
           fractional_stability(unweighted(gr.liptak_tuncel(k)))) for k in range(2, 6)]
    gk_ok = all(a == k and s == Fraction(3 * k, 2) for k, a, s in gk)
    ok = 3 <= r <= 4 and c5_ok and g2_ok and gk_ok
    return CriterionResult(9, "G_2 rank in {3, 4}; hand certificates verify", ok,
                           f"rk(G2)={r}, C5 cert {c5_ok}, G2 cert {g2_ok}, G_k alpha/alpha* {gk_ok}")


def criterion_10(ws: Workspace) -> CriterionResult:
    bad = []
    for label, (g, r) in ws.ranks.items():
        b = rank_bounds(g)
        if r < b.lower or (b.upper1 is not None and r > b.upper1) or (b.upper2 is not None and r > b.upper2):
            bad.append(f"{label}: rank {r} vs {b}")
    return CriterionResult(10, "closed-form rank bounds hold", not bad and bool(ws.ranks),
                           "; ".join(bad) or f"{len(ws.ranks)} instances")


def criterion_11(ws: Workspace) -> CriterionResult:
    w5 = ws.rank("W5", unweighted(gr.odd_wheel(5)), tmax=4)
    w7 = ws.rank("W7", unweighted(gr.odd_wheel(7)), tmax=4)
    cw5 = ws.rank("coW5", gr.complement(unweighted(gr.odd_wheel(5))))
    cc5 = ws.rank("coC5", unweighted(gr.circuit_complement(5)))
    ok = w5 <= 4 and w7 <= 4 and cw5 == cc5
    return CriterionResult(11, "odd wheels rank <= 4; complement of W_5 matches complement of C_5",
                           ok, f"W5:{w5}, W7:{w7}, coW5:{cw5}, coC5:{cc5}")


def criterion_12(ws: Workspace) -> CriterionResult:
    bad, n = [], 0
    for name, g in (("K3", gr.complete(3)), ("C5", gr.odd_circuit(5)), ("K13", gr.star(3)),
                    ("G2", gr.liptak_tuncel(2))):
        a = unweighted_stability_number(g)
        for t in range(7):
            e, c = zeta_by_expansion(g, t), zeta_closed_form(a, t)
            n += 1
            if e != c:
                bad.append(f"{name} t={t}: {_fmt(e)} vs {_fmt(c)}")
            if t <= a - 2 and e != INF:
                bad.append(f"{name} t={t}: expected INF")
            if t == a * a - 2 and e != a + 1:
                bad.append(f"{name} t={t}: expected {a + 1}")
        if kp_rank(g) != a * a - 1:
            bad.append(f"{name}: kp rank")
    return CriterionResult(12, "zeta expansion equals closed form", not bad,
                           "; ".join(bad) or f"{n} (graph, t) pairs", limit=60)


def criterion_13(ws: Workspace) -> CriterionResult:
    bad, n = [], 0
    rng = ws.rng("ls-weights")
    for name, g in (("K4", gr.complete(4)), ("W5", gr.odd_wheel(5)), ("G2", gr.liptak_tuncel(2)),
                    ("G3", gr.liptak_tuncel(3))):
        weightings = [unweighted(g)] + [WeightedGraph.build(g, _random_integer_weights(rng, g.n, 5))
                                         for _ in range(3)]
        for k, wg in enumerate(weightings):
            ls = ls_operator_bound(wg).value
            ph = ws.bound(f"{name}_ls{k}", wg, 3)
            n += 1
            if ls != ph:
                bad.append(f"{name}#{k} ({[str(w) for w in wg.node_weights]}): ls1={ls} p_han3={_fmt(ph)}")
    for label, g in ws.random_set():
        for t in range(2, 5):
            sa = sherali_adams_bound(g, t).value
            n += 1
            if not stability_number(g) <= sa <= ws.bound(label, g, t):
                bad.append(f"{label} t={t}: sa={sa}")
    return CriterionResult(13, "ls^(1) = p_han^(3) on the tested graphs; sa^(t) <= p_han^(t)", not bad,
                           "; ".join(bad) or f"{n} comparisons")


def _signed_graph(rng: random.Random, n: int) -> WeightedGraph:
    g = gr.random_graph(n, 0.6, rng.randrange(10**9))
    ew = {e: Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 3)) for e in g.edges}
    return WeightedGraph.build(g, None, WeightMode.CUSTOM, ew)


def small_graphs(max_n: int = 6):
    """Every graph on 2..max_n vertices up to isomorphism (the networkx atlas)."""
    import networkx as nx
    for h in nx.graph_atlas_g():
        if 2 <= h.number_of_nodes() <= max_n:
            yield gr.Graph.from_edges(h.number_of_nodes(), [(u + 1, v + 1) for u, v in h.edges()])


def criterion_14(ws: Workspace) -> CriterionResult:
    parts: dict[str, bool] = {}
    notes = []
    rng = ws.rng("signed")
    abs_hits = pos_hits = 0
    for k in range(10):
        g = _signed_graph(rng, rng.randint(4, 8))
        v = maxcut_handelman_bound(g, 2).value
        weights = list(g.edge_weights.values())
        abs_hits += v == sum((abs(w) for w in weights), Fraction(0))
        pos_hits += v == sum((w for w in weights if w > 0), Fraction(0))
    parts["order2_abs_sum"] = abs_hits == 10
    parts["order2_positive_part"] = pos_hits == 10
    notes.append(f"order 2 = sum|w| on {abs_hits}/10 signed graphs, = sum of positive w on {pos_hits}/10")
    exact3 = {}
    for name, g in (("C5", gr.odd_circuit(5)), ("C7", gr.odd_circuit(7)), ("K4", gr.complete(4))):
        wg = unweighted(g)
        exact3[name] = maxcut_handelman_bound(wg, 3).value == max_cut_value(wg)
    parts["order3_exact"] = all(exact3.values())
    notes.append("order 3 exact on " + ",".join(k for k, v in exact3.items() if v))
    ranks = {n: maxcut_rank(unweighted(gr.complete(n)))[0] for n in (3, 4, 5)}
    parts["complete_graph_ranks"] = ranks == {3: 3, 4: 3, 5: 5}
    notes.append(f"K_n ranks {ranks}")
    pairs = mismatches = 0
    for g in small_graphs(6):
        wg = unweighted(g)
        for t in (2, 3):
            if t > g.n:
                continue
            pairs += 1
            mismatches += maxcut_handelman_bound(wg, t).value != maxcut_primal_bound(wg, t).value
    parts["moment_equals_primal"] = mismatches == 0
    notes.append(f"moment = primal on {pairs - mismatches}/{pairs} (graph, t) pairs")
    return CriterionResult(14, "max-cut moment LP results", all(parts.values()), "; ".join(notes),
                           limit=180, parts=parts)


def random_poly(rng: random.Random, n: int, terms: int = 8) -> SquareFreePoly:
    return SquareFreePoly(n, {rng.randrange(1 << n): Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                              for _ in range(terms)})


def criterion_15(ws: Workspace) -> CriterionResult:
    rng = ws.rng("polys")
    bad = []
    for _ in range(100):
        n = rng.randint(1, 8)
        p = random_poly(rng, n)
        T = rng.randrange(1 << n)
        unity = SquareFreePoly(n)
        for I in subsets(T):
            unity = unity + expand_basis_term(T, I, n)
        if unity != SquareFreePoly.constant(n, 1):
            bad.append(f"partition of unity fails for T={T}")
        for i in range(1, n + 1):
            xi = SquareFreePoly.variable(n, i)
            if (1 - xi) * restrict(p, i, 0) + xi * restrict(p, i, 1) != p:
                bad.append(f"restriction identity fails for {p} at x{i}")
        full = (1 << n) - 1
        back = SquareFreePoly(n)
        for I, v in point_expansion(p):
            back = back + v * expand_basis_term(full, I, n)
        if back != p:
            bad.append(f"point expansion round trip fails for {p}")
    checks = 0
    for label, g in ws.random_set():
        p = stable_set_poly(g)
        for t in range(max(p.degree, 1), g.n + 1):
            checks += 1
            if not error_bound_check(p, t, lhs=ws.bound(label, g, t)).holds:
                bad.append(f"error bound fails on {label} t={t}")
    if ws.audit is not None:
        if ws.audit.failures:
            bad.extend(ws.audit.failures[:5])
        audited = f"; {ws.audit.solves} LP solutions re-substituted"
    else:
        audited = ""
    return CriterionResult(15, "polynomial identities, error bound, LP re-substitution", not bad,
                           "; ".join(bad[:5]) or f"100 random polynomials; {checks} error-bound orders{audited}")


CRITERIA: dict[int, Callable[[Workspace], CriterionResult]] = {
    k: globals()[f"criterion_{k}"] for k in range(1, 16)
}


def run_criteria(numbers=None, seed: int = DEFAULT_SEED, report=None) -> list[CriterionResult]:
    """Run the selected criteria (all by default) in order; ``report`` gets each result."""
    ws = Workspace(seed)
    results = []
    with audit() as a:
        ws.audit = a
        for k in sorted(numbers or CRITERIA):
            start = time.perf_counter()
            try:
                res = CRITERIA[k](ws)
            except Exception as exc:  # a crash is a failed criterion, not a crashed run
                res = CriterionResult(k, f"criterion {k}", False, f"error: {exc!r}")
            res.seconds = time.perf_counter() - start
            if res.limit is not None and res.seconds > res.limit:
                res.passed = False
                res.detail += "; over time budget"
            results.append(res)
            if report is not None:
                report(res)
    return results


__all__ = ["CriterionResult", "Workspace", "run_criteria", "CRITERIA", "shipped_certificate",
           "small_graphs", "clique_sum_of_cliques", "DEFAULT_SEED"]
