"""Graphs with rational node/edge weights, graph operations and named families.

Vertices are the integers ``1..n``.  Vertex subsets are encoded as bitmasks
with vertex ``i`` on bit ``i - 1``; this caps graphs at 63 vertices.
"""
from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

MAX_VERTICES = 63

Edge = tuple[int, int]


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def members(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _edge(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


def as_fraction(value) -> Fraction:
    """Parse ints, Fractions and ``"p/q"`` strings into a Fraction (floats are refused)."""
    if isinstance(value, float):
        raise TypeError(f"refusing inexact float weight {value!r}")
    return Fraction(value)


class WeightMode(enum.Enum):
    MIN = "MIN"
    MAX = "MAX"
    UNIT = "UNIT"
    CUSTOM = "CUSTOM"


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        for i, j in self.edges:
            if not (1 <= i < j <= self.n):
                raise ValueError(f"bad edge {(i, j)} for n={self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        es = set()
        for i, j in edges:
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            e = _edge(i, j)
            if e in es:
                raise ValueError(f"duplicate edge {e}")
            es.add(e)
        return cls(n, frozenset(es))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def adjacency(self) -> tuple[int, ...]:
        """``adjacency[i]`` is the neighbour bitmask of vertex ``i`` (index 0 unused)."""
        try:
            return self.__dict__["_adj"]
        except KeyError:
            adj = [0] * (self.n + 1)
            for i, j in self.edges:
                adj[i] |= 1 << (j - 1)
                adj[j] |= 1 << (i - 1)
            adj = tuple(adj)
            object.__setattr__(self, "_adj", adj)
            return adj

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        return _edge(i, j) in self.edges

    def neighbors(self, i: int) -> tuple[int, ...]:
        return members(self.adjacency[i])

    def degree(self, i: int) -> int:
        return self.adjacency[i].bit_count()

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(self.has_edge(a, b) for a, b in itertools.combinations(vs, 2))

    def is_stable(self, vertices: Iterable[int]) -> bool:
        m = mask_of(vertices)
        return all(not (self.adjacency[v] & m) for v in members(m))

    def is_bipartite(self) -> bool:
        color = {}
        for s in self.vertices:
            if s in color:
                continue
            color[s] = 0
            stack = [s]
            while stack:
                u = stack.pop()
                for v in self.neighbors(u):
                    if v not in color:
                        color[v] = 1 - color[u]
                        stack.append(v)
                    elif color[v] == color[u]:
                        return False
        return True


@dataclass(frozen=True)
class WeightedGraph:
    """A graph with node weights ``w_i >= 0`` and edge weights ``w_ij``.

    ``labels[k - 1]`` records which vertex of the parent graph became vertex
    ``k`` after a deletion; for freshly built graphs it is ``(1, ..., n)``.
    """

    graph: Graph
    node_weights: tuple[Fraction, ...]
    edge_weights: Mapping[Edge, Fraction]
    weight_mode: WeightMode = WeightMode.MAX
    labels: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        n = self.graph.n
        if len(self.node_weights) != n:
            raise ValueError("one node weight per vertex required")
        if any(w < 0 for w in self.node_weights):
            raise ValueError("node weights must be nonnegative")
        if set(self.edge_weights) != set(self.graph.edges):
            raise ValueError("edge weights must be given for exactly the edges")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(1, n + 1)))
        mode = self.weight_mode
        for (i, j), wij in self.edge_weights.items():
            wi, wj = self.w(i), self.w(j)
            if mode is WeightMode.MIN and wij != min(wi, wj):
                raise ValueError(f"MIN mode violated on edge {(i, j)}")
            if mode is WeightMode.MAX and wij != max(wi, wj):
                raise ValueError(f"MAX mode violated on edge {(i, j)}")
            if mode is WeightMode.UNIT and (wi != 1 or wj != 1 or wij != 1):
                raise ValueError("UNIT mode requires all weights equal to 1")

    # construction -------------------------------------------------------

    @classmethod
    def build(cls, graph: Graph, node_weights: Sequence | None = None,
              mode: WeightMode | str = WeightMode.MAX,
              edge_weights: Mapping[Edge, object] | None = None) -> "WeightedGraph":
        """Attach weights to ``graph``; edge weights are derived unless ``mode`` is CUSTOM."""
        mode = WeightMode(mode)
        if node_weights is None:
            ws = tuple(Fraction(1) for _ in graph.vertices)
        else:
            ws = tuple(as_fraction(w) for w in node_weights)
        if mode is WeightMode.UNIT and any(w != 1 for w in ws):
            raise ValueError("UNIT mode requires unit node weights")
        if mode is WeightMode.CUSTOM:
            if edge_weights is None:
                raise ValueError("CUSTOM mode requires explicit edge weights")
            ew = {_edge(*e): as_fraction(v) for e, v in edge_weights.items()}
        else:
            ew = {e: _derive(mode, ws[e[0] - 1], ws[e[1] - 1]) for e in graph.edges}
        return cls(graph, ws, ew, mode)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], node_weights=None,
                   mode: WeightMode | str = WeightMode.MAX, edge_weights=None) -> "WeightedGraph":
        return cls.build(Graph.from_edges(n, edges), node_weights, mode, edge_weights)

    # accessors ----------------------------------------------------------

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def edges(self) -> frozenset[Edge]:
        return self.graph.edges

    def w(self, i: int) -> Fraction:
        return self.node_weights[i - 1]

    def wij(self, i: int, j: int) -> Fraction:
        return self.edge_weights[_edge(i, j)]

    @property
    def total_weight(self) -> Fraction:
        return sum(self.node_weights, Fraction(0))

    @property
    def is_unweighted(self) -> bool:
        return all(w == 1 for w in self.node_weights) and all(
            v == 1 for v in self.edge_weights.values())

    @property
    def has_integer_weights(self) -> bool:
        return all(w.denominator == 1 for w in self.node_weights)

    @property
    def satisfies_wedge0(self) -> bool:
        return all(wij >= min(self.w(i), self.w(j)) for (i, j), wij in self.edge_weights.items())

    @property
    def satisfies_wedge1(self) -> bool:
        return all(wij >= max(self.w(i), self.w(j)) for (i, j), wij in self.edge_weights.items())

    @property
    def relabeling(self) -> dict[int, int]:
        """Map from parent-graph labels to the current vertex numbers."""
        return {old: new for new, old in enumerate(self.labels, start=1)}

    def with_weights(self, node_weights: Sequence, mode: WeightMode | str | None = None,
                     edge_weights=None) -> "WeightedGraph":
        return WeightedGraph.build(self.graph, node_weights, mode or self.weight_mode, edge_weights)


def _derive(mode: WeightMode, wi: Fraction, wj: Fraction) -> Fraction:
    if mode is WeightMode.MIN:
        return min(wi, wj)
    if mode is WeightMode.MAX:
        return max(wi, wj)
    return Fraction(1)


# ----------------------------------------------------------------------------
# operations

def _check_vertex(g: WeightedGraph, i: int):
    if not (isinstance(i, int) and 1 <= i <= g.n):
        raise ValueError(f"vertex {i!r} not in 1..{g.n}")


def induced_subgraph(g: WeightedGraph, keep: Iterable[int]) -> WeightedGraph:
    """Restrict ``g`` to ``keep`` (relabelled ``1..k`` in increasing order)."""
    keep = sorted(set(keep))
    for v in keep:
        _check_vertex(g, v)
    new = {old: k for k, old in enumerate(keep, start=1)}
    edges = {}
    for (i, j), wij in g.edge_weights.items():
        if i in new and j in new:
            edges[_edge(new[i], new[j])] = wij
    graph = Graph(len(keep), frozenset(edges))
    labels = tuple(g.labels[old - 1] for old in keep)
    return WeightedGraph(graph, tuple(g.w(v) for v in keep), edges, g.weight_mode, labels)


def delete_nodes(g: WeightedGraph, nodes: Iterable[int]) -> WeightedGraph:
    drop = set(nodes)
    for v in drop:
        _check_vertex(g, v)
    return induced_subgraph(g, (v for v in g.graph.vertices if v not in drop))


def delete_node(g: WeightedGraph, i: int) -> WeightedGraph:
    """G - i.  ``result.labels`` gives the parent label of every remaining vertex."""
    _check_vertex(g, i)
    return delete_nodes(g, [i])


def delete_closed_neighborhood(g: WeightedGraph, i: int) -> WeightedGraph:
    """G (-) i: remove ``i`` together with all its neighbours."""
    _check_vertex(g, i)
    return delete_nodes(g, (i,) + g.graph.neighbors(i))


def delete_edge(g: WeightedGraph, e: Sequence[int]) -> WeightedGraph:
    e = _edge(*e)
    if e not in g.edges:
        raise ValueError(f"edge {e} not in graph")
    edges = {k: v for k, v in g.edge_weights.items() if k != e}
    return WeightedGraph(Graph(g.n, frozenset(edges)), g.node_weights, edges, g.weight_mode, g.labels)


def contract_edge(g: WeightedGraph, e: Sequence[int]) -> WeightedGraph:
    """G / e.  The merged vertex keeps the lower endpoint's label and weight."""
    a, b = _edge(*e)
    if (a, b) not in g.edges:
        raise ValueError(f"edge {(a, b)} not in graph")
    keep = [v for v in g.graph.vertices if v != b]
    new = {old: k for k, old in enumerate(keep, start=1)}
    new[b] = new[a]
    weights = tuple(g.w(v) for v in keep)
    edges: dict[Edge, Fraction] = {}
    # edges at the kept endpoint win over parallel edges from the removed one
    for (i, j), wij in sorted(g.edge_weights.items(), key=lambda kv: b in kv[0]):
        u, v = new[i], new[j]
        if u == v:
            continue
        edges.setdefault(_edge(u, v), wij)
    mode = g.weight_mode
    if mode is not WeightMode.CUSTOM:
        edges = {k: _derive(mode, weights[k[0] - 1], weights[k[1] - 1]) for k in edges}
    labels = tuple(g.labels[v - 1] for v in keep)
    return WeightedGraph(Graph(len(keep), frozenset(edges)), weights, edges, mode, labels)


def complement(g: WeightedGraph) -> WeightedGraph:
    """Complementary graph; edge weights are re-derived from the weight mode."""
    if g.weight_mode is WeightMode.CUSTOM:
        raise ValueError("cannot derive complement edge weights in CUSTOM mode")
    edges = [e for e in itertools.combinations(g.graph.vertices, 2) if e not in g.edges]
    out = WeightedGraph.build(Graph(g.n, frozenset(edges)), g.node_weights, g.weight_mode)
    return WeightedGraph(out.graph, out.node_weights, out.edge_weights, out.weight_mode, g.labels)


def clique_sum(g1: WeightedGraph, g2: WeightedGraph, c1: Sequence[int], c2: Sequence[int]) -> WeightedGraph:
    """Glue ``g2`` onto ``g1`` identifying ``c2[k]`` with ``c1[k]``.

    Vertices of ``g1`` keep their numbers; the remaining vertices of ``g2``
    follow as ``g1.n + 1, ...`` in increasing order.
    """
    if len(c1) != len(c2):
        raise ValueError("clique sizes differ")
    if len(set(c1)) != len(c1) or len(set(c2)) != len(c2):
        raise ValueError("repeated vertex in clique")
    for v in c1:
        _check_vertex(g1, v)
    for v in c2:
        _check_vertex(g2, v)
    if not g1.graph.is_clique(c1) or not g2.graph.is_clique(c2):
        raise ValueError("identified vertex sets must be cliques")
    for a, b in zip(c1, c2):
        if g1.w(a) != g2.w(b):
            raise ValueError(f"node weights disagree on identified vertices {a} ~ {b}")
    if g1.weight_mode is not g2.weight_mode:
        raise ValueError("weight modes differ")
    mapping = dict(zip(c2, c1))
    nxt = g1.n + 1
    for v in g2.graph.vertices:
        if v not in mapping:
            mapping[v] = nxt
            nxt += 1
    n = nxt - 1
    weights = list(g1.node_weights) + [Fraction(0)] * (n - g1.n)
    for v in g2.graph.vertices:
        if mapping[v] > g1.n:
            weights[mapping[v] - 1] = g2.w(v)
    edges = dict(g1.edge_weights)
    for (i, j), wij in g2.edge_weights.items():
        e = _edge(mapping[i], mapping[j])
        if e in edges and edges[e] != wij:
            raise ValueError(f"edge weights disagree on identified edge {e}")
        edges[e] = wij
    return WeightedGraph(Graph(n, frozenset(edges)), tuple(weights), edges, g1.weight_mode)


# ----------------------------------------------------------------------------
# named families

def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(1, n + 1), 2))


def empty(n: int) -> Graph:
    return Graph(n, frozenset())


def circuit(n: int) -> Graph:
    if n < 3:
        raise ValueError("a circuit needs at least 3 vertices")
    return Graph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


def odd_circuit(n: int) -> Graph:
    if n < 3 or n % 2 == 0:
        raise ValueError(f"odd circuit requested with n={n}")
    return circuit(n)


def circuit_complement(n: int) -> Graph:
    c = circuit(n)
    return Graph.from_edges(n, [e for e in itertools.combinations(range(1, n + 1), 2)
                                if e not in c.edges])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def star(n: int) -> Graph:
    """K_{1,n}: vertex 1 is the centre."""
    return Graph.from_edges(n + 1, [(1, i) for i in range(2, n + 2)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(1, a + 1) for j in range(1, b + 1)])


def odd_wheel(rim: int) -> Graph:
    """W_{rim}: odd circuit on ``1..rim`` plus apex ``rim + 1`` joined to every rim vertex."""
    c = odd_circuit(rim)
    return Graph.from_edges(rim + 1, sorted(c.edges) + [(i, rim + 1) for i in range(1, rim + 1)])


def liptak_tuncel(k: int) -> Graph:
    """The graph G_k on ``3k`` vertices with alpha = k and fractional alpha = 3k/2.

    Built from overlapping 4-blocks sharing one vertex, with missing block
    edges compensated by chords ``{3i, 3i+3}``.  ``G_2`` is the 5-circuit
    ``1-3-6-5-4`` plus vertex 2 adjacent to 4, 1, 3.
    """
    if k < 2:
        raise ValueError("G_k needs k >= 2")
    edges = set()

    def block(vs, missing):
        for a, b in itertools.combinations(vs, 2):
            if _edge(a, b) not in missing:
                edges.add(_edge(a, b))

    block([1, 2, 3, 4], {(3, 4)})
    for i in range(2, k):
        a = 3 * i - 2
        block([a, a + 1, a + 2, a + 3], {(a, a + 2), (a + 2, a + 3)})
    a = 3 * k - 2
    block([a, a + 1, a + 2], {(a, a + 2)})
    for i in range(1, k):
        edges.add((3 * i, 3 * i + 3))
    return Graph.from_edges(3 * k, sorted(edges))


def clique_fan(t: int) -> Graph:
    """Clique sum of ``t`` copies of K_{t+1} along a common K_t (``2t`` vertices).

    The common clique is ``1..t``; vertex ``t + k`` is the apex of copy ``k``.
    For ``t = 2`` this is K_4 minus the edge ``{3, 4}``.
    """
    if t < 1:
        raise ValueError("t must be positive")
    edges = list(itertools.combinations(range(1, t + 1), 2))
    edges += [(i, t + k) for k in range(1, t + 1) for i in range(1, t + 1)]
    return Graph.from_edges(2 * t, edges)


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    return Graph.from_edges(n, [e for e in itertools.combinations(range(1, n + 1), 2)
                                if rng.random() < p])


def random_bipartite(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    side = [rng.random() < 0.5 for _ in range(n)]
    return Graph.from_edges(n, [(i, j) for i, j in itertools.combinations(range(1, n + 1), 2)
                                if side[i - 1] != side[j - 1] and rng.random() < p])


_FAMILIES = {
    "complete": complete,
    "empty": empty,
    "circuit": circuit,
    "odd_circuit": odd_circuit,
    "circuit_complement": circuit_complement,
    "odd_wheel": odd_wheel,
    "star": star,
    "complete_bipartite": complete_bipartite,
    "path": path,
    "liptak_tuncel": liptak_tuncel,
    "fig1_example": clique_fan,
    "random": random_graph,
    "random_bipartite": random_bipartite,
}

FAMILIES = tuple(_FAMILIES)


def generate(family: str, *params, mode: WeightMode | str = WeightMode.MAX,
             weights: Sequence | None = None) -> WeightedGraph:
    """Build a named family, e.g. ``generate("odd_circuit", 5)`` or ``generate("random", 8, 0.4, 7)``."""
    try:
        factory = _FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}") from None
    return WeightedGraph.build(factory(*params), weights, mode)


def unweighted(graph: Graph) -> WeightedGraph:
    return WeightedGraph.build(graph, None, WeightMode.UNIT)


# ----------------------------------------------------------------------------
# text format

def parse_graph(text: str) -> WeightedGraph:
    """Parse the ``nodes / nodeweights / edgemode / edge`` text format."""
    n = None
    weights = None
    mode = WeightMode.MAX
    edges: list[Edge] = []
    ews: dict[Edge, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *rest = line.split()
        try:
            if key == "nodes":
                if n is not None or len(rest) != 1:
                    raise ValueError("expected a single 'nodes <n>' line")
                n = int(rest[0])
            elif n is None:
                raise ValueError("'nodes <n>' must come first")
            elif key == "nodeweights":
                if len(rest) != n:
                    raise ValueError(f"expected {n} node weights, got {len(rest)}")
                weights = [Fraction(r) for r in rest]
            elif key == "edgemode":
                mode = WeightMode(rest[0].upper())
            elif key == "edge":
                if len(rest) not in (2, 3):
                    raise ValueError("edge line needs 'edge <i> <j> [<wij>]'")
                e = _edge(int(rest[0]), int(rest[1]))
                edges.append(e)
                if len(rest) == 3:
                    ews[e] = Fraction(rest[2])
            else:
                raise ValueError(f"unknown keyword {key!r}")
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if n is None:
        raise ValueError("missing 'nodes <n>' line")
    if mode is WeightMode.CUSTOM and set(ews) != set(edges):
        raise ValueError("CUSTOM edge mode needs a weight on every edge")
    if mode is not WeightMode.CUSTOM and ews:
        raise ValueError("edge weights are only allowed with 'edgemode CUSTOM'")
    return WeightedGraph.build(Graph.from_edges(n, edges), weights, mode, ews or None)


def read_graph(path) -> WeightedGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def format_graph(g: WeightedGraph) -> str:
    lines = [f"nodes {g.n}"]
    if any(w != 1 for w in g.node_weights):
        lines.append("nodeweights " + " ".join(str(w) for w in g.node_weights))
    lines.append(f"edgemode {g.weight_mode.value}")
    for i, j in g.graph.sorted_edges():
        if g.weight_mode is WeightMode.CUSTOM:
            lines.append(f"edge {i} {j} {g.wij(i, j)}")
        else:
            lines.append(f"edge {i} {j}")
    return "\n".join(lines) + "\n"
