"""Handelman bounds and ranks for square-free polynomials on the 0/1 cube.

``lambda - p`` belongs to the Handelman set ``H_t`` if it is a nonnegative
combination of the products ``x^I (1-x)^{T \\ I}`` with ``|T| = t`` and
``I`` a subset of ``T``.  The bound ``p_han^(t)`` is the least such
``lambda``; it is found by one exact LP that matches the coefficients of
every monomial ``x^S`` with ``|S| <= max(t, deg p)``.
"""
from __future__ import annotations

import itertools
import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .graphs import WeightedGraph, mask_of, members
from .polynomials import (SquareFreePoly, binomial, expand_basis_term,
                          point_expansion, stable_set_poly, subsets)
from .rational_lp import LinearProgram, LpSolution, Sense, Status, solve
from .stable_set import (fractional_stability, stability_number,
                         unweighted_stability_number)

INF = math.inf
MAX_HANDELMAN_COLUMNS = 200_000

Value = Union[Fraction, float]


class SizeGuardError(ValueError):
    """Requested order would build an LP larger than the configured guard."""


@dataclass(frozen=True)
class HandelmanCertificate:
    """``lam - p = sum c * x^I (1-x)^{T \\ I}`` with every ``c > 0`` and ``|T| = t``.

    Subsets are bitmasks over ``1..n``.
    """

    n: int
    t: int
    lam: Fraction
    terms: tuple[tuple[int, int, Fraction], ...]

    def expand(self) -> SquareFreePoly:
        total = SquareFreePoly(self.n)
        for T, I, c in self.terms:
            total = total + c * expand_basis_term(T, I, self.n)
        return total

    def to_json(self) -> str:
        return json.dumps({
            "n": self.n,
            "lambda": str(self.lam),
            "t": self.t,
            "terms": [{"T": list(members(T)), "I": list(members(I)), "c": str(c)}
                      for T, I, c in self.terms],
        }, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "HandelmanCertificate":
        d = json.loads(text)
        terms = tuple((mask_of(e["T"]), mask_of(e["I"]), Fraction(e["c"])) for e in d["terms"])
        n = d.get("n") or max((T.bit_length() for T, _, _ in terms), default=0)
        return cls(n, int(d["t"]), Fraction(d["lambda"]), terms)

    def elevate(self, t: int) -> "HandelmanCertificate":
        """Rewrite every term with ``|T| < t`` at order ``t``.

        Uses ``1 = x_j + (1 - x_j)`` with the smallest vertices missing from
        ``T``; coefficients of coinciding terms are merged.
        """
        if not 1 <= t <= self.n:
            raise ValueError(f"order {t} outside 1..{self.n}")
        acc: dict[tuple[int, int], Fraction] = {}
        for T, I, c in self.terms:
            size = T.bit_count()
            if size > t:
                raise ValueError(f"term of order {size} cannot be lowered to {t}")
            missing = [v for v in range(1, self.n + 1) if not T >> (v - 1) & 1][:t - size]
            extra = mask_of(missing)
            for J in subsets(extra):
                key = (T | extra, I | J)
                acc[key] = acc.get(key, Fraction(0)) + c
        terms = tuple((T, I, c) for (T, I), c in sorted(acc.items()) if c)
        return HandelmanCertificate(self.n, t, self.lam, terms)

    def product_form(self) -> list[str]:
        """Each term as ``c * x1*x3*(1-x2)``."""
        out = []
        for T, I, c in self.terms:
            factors = [f"x{i}" for i in members(I)] + [f"(1-x{i})" for i in members(T & ~I)]
            out.append(f"{c} * " + ("*".join(factors) or "1"))
        return out


def parse_product_term(text: str) -> tuple[int, int, Fraction]:
    """Inverse of one :meth:`HandelmanCertificate.product_form` line."""
    coeff, _, rest = text.partition("*")
    T = I = 0
    rest = rest.strip()
    if rest != "1":
        for factor in rest.split("*"):
            factor = factor.strip()
            if factor.startswith("(1-x") and factor.endswith(")"):
                v = int(factor[4:-1])
            elif factor.startswith("x"):
                v = int(factor[1:])
                I |= 1 << (v - 1)
            else:
                raise ValueError(f"bad factor {factor!r} in {text!r}")
            if T >> (v - 1) & 1:
                raise ValueError(f"variable x{v} repeated in {text!r}")
            T |= 1 << (v - 1)
    return T, I, Fraction(coeff.strip())


@dataclass(frozen=True)
class BoundReport:
    method: str
    t: int
    value: Value
    certificate: object = None
    seconds: float = field(default=0.0, compare=False)

    @property
    def is_infinite(self) -> bool:
        return self.value == INF

    def value_str(self) -> str:
        return "INF" if self.is_infinite else str(self.value)


def format_value(v: Value) -> str:
    return "INF" if v == INF else str(v)


def parse_value(s: str) -> Value:
    return INF if s.strip().upper() == "INF" else Fraction(s)


# ----------------------------------------------------------------------------
# the membership LP

def basis_columns(n: int, t: int) -> list[tuple[int, int]]:
    """(T, I) pairs with |T| = t and I a subset of T, in deterministic order."""
    out = []
    for T in itertools.combinations(range(1, n + 1), t):
        tm = mask_of(T)
        for I in subsets(tm):
            out.append((tm, I))
    return out


def check_order(n: int, t: int):
    if not 1 <= t <= n:
        raise ValueError(f"order t={t} outside 1..{n}")
    cols = binomial(n, t) << t
    if cols > MAX_HANDELMAN_COLUMNS:
        raise SizeGuardError(f"order {t} on {n} variables needs {cols} columns "
                             f"(limit {MAX_HANDELMAN_COLUMNS})")


def membership_lp(p: SquareFreePoly, t: int, free_monomials=()):
    """LP for ``min lam`` s.t. ``lam - p`` lies in ``H_t`` (+ span of ``free_monomials``).

    Returns ``(lp, basis, lam_column, free_columns)``.  Rows are indexed by
    monomials ``S`` with ``|S| <= max(t, deg p)``; column ``(T, I)``
    contributes ``(-1)^{|S \\ I|}`` to row ``S`` whenever ``I <= S <= T``.
    Free monomial columns model an ideal added to the cone (used by the
    Sherali-Adams variant).
    """
    n = p.n
    check_order(n, t)
    top = max(t, p.degree)
    rows: dict[int, int] = {}
    lp = LinearProgram(f"handelman_t{t}")
    for k in range(top + 1):
        for S in itertools.combinations(range(1, n + 1), k):
            rows[mask_of(S)] = len(rows)
    basis = basis_columns(n, t)
    row_coeffs: list[dict[int, int]] = [dict() for _ in rows]
    for (T, I) in basis:
        j = lp.add_variable("c_" + "".join(map(str, members(T))) + "_" + "".join(map(str, members(I))))
        for J in subsets(T & ~I):
            row_coeffs[rows[I | J]][j] = -1 if J.bit_count() % 2 else 1
    lam = lp.add_variable("lambda", lower=None)
    row_coeffs[rows[0]][lam] = -1
    free_cols = []
    for S in free_monomials:
        j = lp.add_variable("u_" + "".join(map(str, members(S))), lower=None)
        row_coeffs[rows[S]][j] = 1
        free_cols.append(j)
    for S, r in rows.items():
        lp.add_constraint(row_coeffs[r], "=", -p.coefficient(S), "m" + "".join(map(str, members(S))))
    lp.set_objective({lam: 1}, Sense.MIN)
    return lp, basis, lam, free_cols


def handelman_bound(p: SquareFreePoly, t: int, certificate: bool = True,
                    method: str = "auto") -> BoundReport:
    """p_han^(t) = inf { lam : lam - p in H_t }, or INF when no ``lam`` works."""
    start = time.perf_counter()
    lp, basis, lam, _ = membership_lp(p, t)
    sol = solve(lp, method=method)
    return _report("handelman", t, p.n, sol, basis, lam, certificate, start)


def _report(tag, t, n, sol: LpSolution, basis, lam, certificate, start) -> BoundReport:
    if sol.status is Status.INFEASIBLE:
        return BoundReport(tag, t, INF, None, time.perf_counter() - start)
    if sol.status is not Status.OPTIMAL:
        # lam - p in H_t forces lam >= p(0), so the minimum cannot run off to -inf
        raise RuntimeError(f"unexpected LP status {sol.status}")
    cert = None
    if certificate:
        terms = tuple((T, I, sol.values[j]) for j, (T, I) in enumerate(basis) if sol.values[j])
        cert = HandelmanCertificate(n, t, sol.values[lam], terms)
    return BoundReport(tag, t, sol.objective, cert, time.perf_counter() - start)


def stable_set_bound(g: WeightedGraph, t: int, **kw) -> BoundReport:
    """p_han^(t)(G, w)."""
    return handelman_bound(stable_set_poly(g), t, **kw)


def verify_certificate(cert: HandelmanCertificate, p: SquareFreePoly) -> bool:
    """True iff every multiplier is positive, ``|T| = t``, and the terms expand to ``lam - p``."""
    if cert.n != p.n:
        raise ValueError(f"certificate is over {cert.n} variables, polynomial over {p.n}")
    for T, I, c in cert.terms:
        if c <= 0 or T.bit_count() != cert.t or I & ~T or T >> cert.n:
            return False
    return cert.expand() == cert.lam - p


# ----------------------------------------------------------------------------
# ranks

@dataclass(frozen=True)
class RankResult:
    rank: int
    alpha: Fraction
    trace: dict[int, Value]


def handelman_rank(g: WeightedGraph, tmax: int | None = None, method: str = "auto") -> RankResult:
    """Smallest ``t`` with ``p_han^(t)(G, w) == alpha(G, w)`` (exact equality).

    Always stops by ``t = n``; ``tmax`` caps the search and raises if reached.
    """
    alpha = stability_number(g)
    p = stable_set_poly(g)
    trace: dict[int, Value] = {}
    last = max(g.n, 1) if tmax is None else min(tmax, max(g.n, 1))
    if g.n == 0:
        return RankResult(1, alpha, {1: Fraction(0)})
    for t in range(1, last + 1):
        v = handelman_bound(p, t, certificate=False, method=method).value
        trace[t] = v
        if v == alpha:
            return RankResult(t, alpha, trace)
    raise RuntimeError(f"no exact order found up to t={last}")


@dataclass(frozen=True)
class RankBounds:
    lower: int
    upper1: int | None
    upper2: int | None


def rank_bounds(g: WeightedGraph) -> RankBounds:
    """Closed-form bounds: ``ceil(sum w / alpha)``, ``n - alpha(G) + 1`` and ``2(alpha* - alpha) + 2``.

    The upper bounds need edge weights with ``w_ij >= max(w_i, w_j)``; the
    second also needs integer node weights.
    """
    alpha = stability_number(g)
    total = g.total_weight
    if alpha == 0:
        lower = 1
    else:
        q = total / alpha
        lower = max(1, -((-q.numerator) // q.denominator))
    upper1 = upper2 = None
    if g.satisfies_wedge1:
        upper1 = g.n - unweighted_stability_number(g.graph) + 1
        if g.has_integer_weights:
            gap = 2 * (fractional_stability(g) - alpha) + 2
            upper2 = int(gap)
    return RankBounds(lower, upper1, upper2)


# ----------------------------------------------------------------------------
# error bound

@dataclass(frozen=True)
class ErrorBoundCheck:
    t: int
    lhs: Value
    rhs: Fraction
    p_max: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


def error_bound_lambda(n: int, t: int, size: int) -> Fraction:
    top = binomial(n - 1, t - 1)
    return Fraction(top - binomial(n - size, t - size), top)


def error_bound_rhs(p: SquareFreePoly, t: int) -> tuple[Fraction, Fraction]:
    """``((n/t) p_max + sum_{|J|>=2, p_J>0} p_J lam_J, p_max)``."""
    n = p.n
    if not p.degree <= t <= n:
        raise ValueError(f"order {t} outside deg(p)={p.degree} .. n={n}")
    if p.coefficient(0):
        raise ValueError("error bound requires p(0) = 0")
    p_max = max(v for _, v in point_expansion(p))
    rhs = Fraction(n, t) * p_max
    for m, c in p.terms():
        if m.bit_count() >= 2 and c > 0:
            rhs += c * error_bound_lambda(n, t, m.bit_count())
    return rhs, p_max


def error_bound_check(p: SquareFreePoly, t: int, method: str = "auto",
                      lhs: Value | None = None) -> ErrorBoundCheck:
    """Compare ``p_han^(t)`` with ``(n/t) p_max + sum_{|J|>=2, p_J>0} p_J lam_J``.

    ``lhs`` may carry an already computed ``p_han^(t)``.
    """
    rhs, p_max = error_bound_rhs(p, t)
    if lhs is None:
        lhs = handelman_bound(p, t, certificate=False, method=method).value
    return ErrorBoundCheck(t, lhs, rhs, p_max)
