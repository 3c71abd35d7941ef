"""Square-free polynomials over 0/1 variables ``x_1..x_n``.

A polynomial is a sparse map from monomials ``x^I`` to rational coefficients,
where ``I`` is a vertex subset stored as a bitmask (vertex ``i`` on bit
``i - 1``).  Products are reduced with ``x_i^2 = x_i``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .graphs import WeightedGraph, mask_of, members

MAX_EXPANSION_VARS = 20


@lru_cache(maxsize=None)
def binomial(n: int, k: int) -> int:
    """C(n, k) by Pascal's rule; zero outside ``0 <= k <= n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    if k == 0 or k == n:
        return 1
    return binomial(n - 1, k - 1) + binomial(n - 1, k)


def subsets(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, ascending."""
    out = []
    s = mask
    while True:
        out.append(s)
        if s == 0:
            break
        s = (s - 1) & mask
    return reversed(out)


class SquareFreePoly:
    __slots__ = ("n", "_c")

    def __init__(self, n: int, coeffs: Mapping[int, object] | None = None):
        self.n = n
        self._c: dict[int, Fraction] = {}
        full = (1 << n) - 1
        for mask, c in (coeffs or {}).items():
            if mask & ~full:
                raise ValueError(f"monomial {members(mask)} uses variables outside 1..{n}")
            c = Fraction(c)
            if c:
                self._c[mask] = c

    @classmethod
    def constant(cls, n: int, c) -> "SquareFreePoly":
        return cls(n, {0: c})

    @classmethod
    def monomial(cls, n: int, vertices: Iterable[int], c=1) -> "SquareFreePoly":
        return cls(n, {mask_of(vertices): c})

    @classmethod
    def variable(cls, n: int, i: int) -> "SquareFreePoly":
        return cls(n, {1 << (i - 1): 1})

    @classmethod
    def _raw(cls, n: int, coeffs: dict[int, Fraction]) -> "SquareFreePoly":
        p = cls.__new__(cls)
        p.n = n
        p._c = {k: v for k, v in coeffs.items() if v}
        return p

    # basic protocol -------------------------------------------------------

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    def coefficient(self, monomial) -> Fraction:
        mask = monomial if isinstance(monomial, int) else mask_of(monomial)
        return self._c.get(mask, Fraction(0))

    def terms(self) -> list[tuple[int, Fraction]]:
        """(mask, coefficient) pairs in ascending mask order."""
        return sorted(self._c.items())

    @property
    def degree(self) -> int:
        return max((m.bit_count() for m in self._c), default=0)

    def is_zero(self) -> bool:
        return not self._c

    def __eq__(self, other):
        if isinstance(other, SquareFreePoly):
            return self.n == other.n and self._c == other._c
        return NotImplemented

    __hash__ = None

    def _check(self, other: "SquareFreePoly"):
        if other.n != self.n:
            raise ValueError(f"variable counts differ ({self.n} vs {other.n})")

    def __add__(self, other):
        if not isinstance(other, SquareFreePoly):
            other = SquareFreePoly.constant(self.n, other)
        self._check(other)
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, 0) + v
        return SquareFreePoly._raw(self.n, c)

    __radd__ = __add__

    def __neg__(self):
        return SquareFreePoly._raw(self.n, {k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        if not isinstance(other, SquareFreePoly):
            other = SquareFreePoly.constant(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, SquareFreePoly):
            self._check(other)
            c: dict[int, Fraction] = {}
            for a, u in self._c.items():
                for b, v in other._c.items():
                    c[a | b] = c.get(a | b, 0) + u * v
            return SquareFreePoly._raw(self.n, c)
        s = Fraction(other)
        return SquareFreePoly._raw(self.n, {k: v * s for k, v in self._c.items()})

    __rmul__ = __mul__

    def __call__(self, point: Sequence) -> Fraction:
        return evaluate(self, point)

    def __repr__(self):
        return f"SquareFreePoly(n={self.n}, {self})"

    def __str__(self):
        return format_poly(self)


def format_poly(p: SquareFreePoly) -> str:
    """Text form ``c * x{1,3} + ...`` (the constant term prints as ``c * x{}``)."""
    if p.is_zero():
        return "0"
    return " + ".join(f"{c} * x{{{','.join(map(str, members(m)))}}}" for m, c in p.terms())


def parse_poly(text: str, n: int) -> SquareFreePoly:
    """Inverse of :func:`format_poly`."""
    coeffs: dict[int, Fraction] = {}
    text = text.strip()
    if text == "0":
        return SquareFreePoly(n)
    for term in text.split(" + "):
        c, mono = term.split("*")
        mono = mono.strip()
        if not (mono.startswith("x{") and mono.endswith("}")):
            raise ValueError(f"bad monomial {mono!r}")
        inner = mono[2:-1].strip()
        vs = [int(v) for v in inner.split(",")] if inner else []
        m = mask_of(vs)
        coeffs[m] = coeffs.get(m, 0) + Fraction(c.strip())
    return SquareFreePoly(n, coeffs)


# ----------------------------------------------------------------------------
# polynomials attached to graphs

def stable_set_poly(g: WeightedGraph) -> SquareFreePoly:
    """``sum_i w_i x_i - sum_ij w_ij x_i x_j``."""
    c: dict[int, Fraction] = {}
    for i in g.graph.vertices:
        c[1 << (i - 1)] = g.w(i)
    for (i, j), wij in g.edge_weights.items():
        c[(1 << (i - 1)) | (1 << (j - 1))] = -wij
    return SquareFreePoly(g.n, c)


def target_poly(g: WeightedGraph, alpha) -> SquareFreePoly:
    """``alpha - p_{G,w}``; nonnegative on the cube iff ``alpha >= alpha(G, w)``."""
    return Fraction(alpha) - stable_set_poly(g)


# ----------------------------------------------------------------------------
# evaluation and the 0/1 basis

def _point_mask(p: SquareFreePoly, point) -> int:
    if isinstance(point, int):
        return point
    if len(point) != p.n:
        raise ValueError(f"point has length {len(point)}, expected {p.n}")
    m = 0
    for i, v in enumerate(point):
        if v not in (0, 1):
            raise ValueError("evaluation points must be 0/1 vectors")
        if v:
            m |= 1 << i
    return m


def evaluate(p: SquareFreePoly, point) -> Fraction:
    """Value at a 0/1 point, given as a vector or as the bitmask of its support."""
    s = _point_mask(p, point)
    return sum((c for m, c in p._c.items() if m & s == m), Fraction(0))


def restrict(p: SquareFreePoly, i: int, value: int) -> SquareFreePoly:
    """Fix ``x_i = value``; the result still lives in ``n`` variables."""
    if not 1 <= i <= p.n:
        raise ValueError(f"variable {i} out of range")
    if value not in (0, 1):
        raise ValueError("value must be 0 or 1")
    bit = 1 << (i - 1)
    c: dict[int, Fraction] = {}
    for m, v in p._c.items():
        if m & bit:
            if value:
                c[m & ~bit] = c.get(m & ~bit, 0) + v
        else:
            c[m] = c.get(m, 0) + v
    return SquareFreePoly._raw(p.n, c)


def point_expansion(p: SquareFreePoly) -> list[tuple[int, Fraction]]:
    """``[(I, p(chi^I))]`` for every subset ``I`` of ``[n]``: the coefficients of ``p``
    in the basis ``x^I (1-x)^{[n] \\ I}``."""
    if p.n > MAX_EXPANSION_VARS:
        raise ValueError(f"point expansion limited to n <= {MAX_EXPANSION_VARS}")
    # subset-sum (zeta) transform over the 2^n cube
    vals = [Fraction(0)] * (1 << p.n)
    for m, c in p._c.items():
        vals[m] = c
    for b in range(p.n):
        bit = 1 << b
        for s in range(1 << p.n):
            if s & bit:
                vals[s] += vals[s ^ bit]
    return list(enumerate(vals))


def expand_basis_term(T, I, n: int | None = None) -> SquareFreePoly:
    """``x^I (1-x)^{T \\ I}`` expanded into monomials; ``T`` and ``I`` are vertex sets or masks."""
    tm = T if isinstance(T, int) else mask_of(T)
    im = I if isinstance(I, int) else mask_of(I)
    if im & ~tm:
        raise ValueError("I must be a subset of T")
    if n is None:
        n = tm.bit_length()
    rest = tm & ~im
    c = {}
    for j in subsets(rest):
        c[im | j] = Fraction(-1 if j.bit_count() % 2 else 1)
    return SquareFreePoly(n, c)


def bernstein(p: SquareFreePoly, t: int) -> SquareFreePoly:
    """Combinatorial Bernstein operator: ``p_J -> C(n-|J|, t-|J|) p_J``."""
    if not p.degree <= t <= p.n:
        raise ValueError(f"order {t} outside deg(p)={p.degree} .. n={p.n}")
    n = p.n
    return SquareFreePoly._raw(n, {m: c * binomial(n - m.bit_count(), t - m.bit_count())
                                   for m, c in p._c.items()})
