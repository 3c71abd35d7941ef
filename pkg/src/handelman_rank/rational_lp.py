"""Exact rational linear programming.

Models are built with :class:`LinearProgram` and solved by :func:`solve`, a
two-phase revised simplex method over exact rationals with Bland's pivoting
rule.  For larger models a floating point solve (HiGHS) is used only to
propose a starting basis; that basis is then checked and, if necessary,
improved by exact pivots, so every reported status and value is exact.
"""
from __future__ import annotations

import contextlib
import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import flint

log = logging.getLogger(__name__)

MAX_NONZEROS = 1_000_000
HINT_MIN_COLUMNS = 60

_ZERO = flint.fmpq(0)


class LpSizeError(ValueError):
    """The model exceeds the configured size guard."""


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


class Sense(enum.Enum):
    MIN = "min"
    MAX = "max"


_SENSES = {"<=": "<=", ">=": ">=", "=": "=", "==": "="}


def _q(x) -> flint.fmpq:
    if isinstance(x, flint.fmpq):
        return x
    f = Fraction(x)
    return flint.fmpq(f.numerator, f.denominator)


def _frac(x: flint.fmpq) -> Fraction:
    return Fraction(int(x.p), int(x.q))


@dataclass
class Variable:
    name: str
    lower: Fraction | None = Fraction(0)


@dataclass
class Constraint:
    coeffs: dict[int, Fraction]
    sense: str
    rhs: Fraction
    name: str = ""


class LinearProgram:
    """Exact LP: variables with lower bound 0 or free, rows with sense ``<=``, ``>=`` or ``=``."""

    def __init__(self, name: str = "lp"):
        self.name = name
        self.variables: list[Variable] = []
        self.constraints: list[Constraint] = []
        self.objective: dict[int, Fraction] = {}
        self.objective_constant = Fraction(0)
        self.sense = Sense.MAX

    @property
    def num_variables(self) -> int:
        return len(self.variables)

    @property
    def nnz(self) -> int:
        return sum(len(c.coeffs) for c in self.constraints)

    def add_variable(self, name: str, lower=0) -> int:
        if lower is not None and Fraction(lower) != 0:
            raise ValueError("only lower bounds 0 or None (free) are supported")
        self.variables.append(Variable(name, None if lower is None else Fraction(0)))
        return len(self.variables) - 1

    def add_variables(self, names: Iterable[str], lower=0) -> list[int]:
        return [self.add_variable(n, lower) for n in names]

    def add_constraint(self, coeffs: Mapping[int, object], sense: str, rhs, name: str = "") -> int:
        try:
            sense = _SENSES[sense]
        except KeyError:
            raise ValueError(f"unknown constraint sense {sense!r}") from None
        row = {}
        for j, a in coeffs.items():
            if not 0 <= j < len(self.variables):
                raise ValueError(f"constraint refers to unknown variable {j}")
            a = Fraction(a)
            if a:
                row[j] = a
        self.constraints.append(Constraint(row, sense, Fraction(rhs), name))
        return len(self.constraints) - 1

    def set_objective(self, coeffs: Mapping[int, object], sense: Sense | str = Sense.MAX, constant=0):
        self.sense = Sense(sense)
        self.objective = {}
        for j, a in coeffs.items():
            if not 0 <= j < len(self.variables):
                raise ValueError(f"objective refers to unknown variable {j}")
            if Fraction(a):
                self.objective[j] = Fraction(a)
        self.objective_constant = Fraction(constant)

    def objective_value(self, values: Sequence[Fraction]) -> Fraction:
        return self.objective_constant + sum((a * values[j] for j, a in self.objective.items()), Fraction(0))

    def to_text(self) -> str:
        """Human readable dump with exact ``p/q`` coefficients."""
        names = [v.name for v in self.variables]

        def expr(coeffs):
            if not coeffs:
                return "0"
            parts = []
            for j in sorted(coeffs):
                a = coeffs[j]
                sign = "-" if a < 0 else "+"
                parts.append(f"{sign} {abs(a)} {names[j]}")
            s = " ".join(parts)
            return s[2:] if s.startswith("+ ") else s

        lines = [f"\\ {self.name}", ("Maximize" if self.sense is Sense.MAX else "Minimize")]
        obj = expr(self.objective)
        if self.objective_constant:
            obj += f" + {self.objective_constant}"
        lines.append(f"  obj: {obj}")
        lines.append("Subject To")
        for k, c in enumerate(self.constraints):
            lines.append(f"  {c.name or f'c{k}'}: {expr(c.coeffs)} {c.sense} {c.rhs}")
        free = [v.name for v in self.variables if v.lower is None]
        if free:
            lines.append("Bounds")
            lines.extend(f"  {nm} free" for nm in free)
        lines.append("End")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class LpSolution:
    status: Status
    objective: Fraction | None = None
    values: tuple[Fraction, ...] | None = None
    pivots: int = 0
    warm_start: bool = field(default=False, compare=False)

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


def check_solution(lp: LinearProgram, sol: LpSolution) -> list[str]:
    """Re-substitute an optimal assignment; returns a list of violations (empty if exact)."""
    if sol.status is not Status.OPTIMAL:
        return []
    x = sol.values
    problems = []
    if len(x) != lp.num_variables:
        return ["assignment length mismatch"]
    for j, v in enumerate(lp.variables):
        if v.lower is not None and x[j] < v.lower:
            problems.append(f"{v.name} = {x[j]} below its lower bound")
    for k, c in enumerate(lp.constraints):
        lhs = sum((a * x[j] for j, a in c.coeffs.items()), Fraction(0))
        ok = {"<=": lhs <= c.rhs, ">=": lhs >= c.rhs, "=": lhs == c.rhs}[c.sense]
        if not ok:
            problems.append(f"row {c.name or k}: {lhs} {c.sense} {c.rhs} fails")
    if lp.objective_value(x) != sol.objective:
        problems.append("objective value does not match the assignment")
    return problems


# ----------------------------------------------------------------------------
# standard form  min c.x  s.t.  A x = b,  x >= 0,  b >= 0

class _StandardForm:
    def __init__(self, lp: LinearProgram):
        m = len(lp.constraints)
        self.m = m
        self.columns: list[list[tuple[int, flint.fmpq]]] = []
        self.cost: list[flint.fmpq] = []
        self.origin: list[list[tuple[int, int]]] = []   # var -> [(column, sign)]
        flip = [c.rhs < 0 for c in lp.constraints]
        self.b = [_q(-c.rhs if f else c.rhs) for c, f in zip(lp.constraints, flip)]
        rows_of: list[list[tuple[int, flint.fmpq]]] = [[] for _ in lp.variables]
        for i, c in enumerate(lp.constraints):
            s = -1 if flip[i] else 1
            for j, a in c.coeffs.items():
                rows_of[j].append((i, _q(a * s)))
        obj_sign = 1 if lp.sense is Sense.MIN else -1
        for j, v in enumerate(lp.variables):
            cj = _q(lp.objective.get(j, 0) * obj_sign)
            col = sorted(rows_of[j])
            self.origin.append([(len(self.columns), 1)])
            self.columns.append(col)
            self.cost.append(cj)
            if v.lower is None:
                self.origin[j].append((len(self.columns), -1))
                self.columns.append([(i, -a) for i, a in col])
                self.cost.append(-cj)
        # slack for <=, surplus for >=
        self.unit_slack: dict[int, int] = {}
        for i, c in enumerate(lp.constraints):
            if c.sense == "=":
                continue
            a = 1 if c.sense == "<=" else -1
            if flip[i]:
                a = -a
            if a == 1:
                self.unit_slack[i] = len(self.columns)
            self.columns.append([(i, flint.fmpq(a))])
            self.cost.append(_ZERO)
        self.n = len(self.columns)

    def recover(self, x: Sequence[flint.fmpq]) -> list[Fraction]:
        out = []
        for parts in self.origin:
            out.append(_frac(sum((x[col] * s for col, s in parts), _ZERO)))
        return out


# ----------------------------------------------------------------------------
# the simplex method

class _Simplex:
    """Revised simplex with an explicit sparse basis inverse and Bland's rule.

    Columns ``0..n-1`` are structural; ``n + i`` is the artificial for row ``i``.
    """

    def __init__(self, sf: _StandardForm):
        self.sf = sf
        self.m = sf.m
        self.n = sf.n
        self.pivots = 0

    def column(self, j: int):
        if j >= self.n:
            return [(j - self.n, flint.fmpq(1))]
        return self.sf.columns[j]

    # basis handling --------------------------------------------------------

    def start_slack_basis(self):
        m = self.m
        self.head = [self.sf.unit_slack.get(i, self.n + i) for i in range(m)]
        self.binv = [{i: flint.fmpq(1)} for i in range(m)]
        self.xb = list(self.sf.b)

    def start_from(self, head: list[int]) -> bool:
        """Install ``head`` as basis; returns False if singular or not primal feasible."""
        m = self.m
        rows = [[0] * m for _ in range(m)]
        for k, j in enumerate(head):
            for i, a in self.column(j):
                rows[i][k] = a
        B = flint.fmpq_mat(rows) if m else None
        try:
            inv = B.inv() if m else None
        except ZeroDivisionError:
            return False
        table = inv.table() if m else []
        binv = [{k: v for k, v in enumerate(row) if v != 0} for row in table]
        xb = [sum((a * self.sf.b[k] for k, a in r.items()), _ZERO) for r in binv]
        for i, v in enumerate(xb):
            if v < 0 or (head[i] >= self.n and v != 0):
                return False
        self.head = list(head)
        self.binv = binv
        self.xb = xb
        return True

    def duals(self, cost) -> dict[int, flint.fmpq]:
        y: dict[int, flint.fmpq] = {}
        for i, j in enumerate(self.head):
            c = cost(j)
            if c == 0:
                continue
            for k, a in self.binv[i].items():
                y[k] = y.get(k, _ZERO) + c * a
        return y

    def reduced_cost(self, j: int, cost, y) -> flint.fmpq:
        d = cost(j)
        for i, a in self.column(j):
            yi = y.get(i)
            if yi is not None:
                d -= yi * a
        return d

    def entering(self, cost, allow_artificial: bool) -> int | None:
        y = self.duals(cost)
        basic = set(self.head)
        top = self.n + self.m if allow_artificial else self.n
        for j in range(top):
            if j in basic:
                continue
            if self.reduced_cost(j, cost, y) < 0:
                return j
        return None

    def ftran(self, j: int) -> list[flint.fmpq]:
        col = self.column(j)
        out = []
        for r in self.binv:
            s = _ZERO
            for i, a in col:
                v = r.get(i)
                if v is not None:
                    s += v * a
            out.append(s)
        return out

    def pivot(self, r: int, q: int, alpha: list[flint.fmpq]):
        piv = alpha[r]
        row_r = {k: v / piv for k, v in self.binv[r].items()}
        self.binv[r] = row_r
        theta = self.xb[r] / piv
        self.xb[r] = theta
        for i, a in enumerate(alpha):
            if i == r or a == 0:
                continue
            row = self.binv[i]
            for k, v in row_r.items():
                nv = row.get(k, _ZERO) - a * v
                if nv == 0:
                    row.pop(k, None)
                else:
                    row[k] = nv
            self.xb[i] -= a * theta
        self.head[r] = q
        self.pivots += 1

    # main loop -----------------------------------------------------------

    def optimize(self, cost, allow_artificial: bool) -> bool:
        """Run Bland pivots; returns False if the objective is unbounded."""
        while True:
            q = self.entering(cost, allow_artificial)
            if q is None:
                return True
            alpha = self.ftran(q)
            best = None
            for i, a in enumerate(alpha):
                if a == 0:
                    continue
                if self.head[i] >= self.n and not allow_artificial:
                    # artificial stuck in the basis at level zero: leave first
                    key = (_ZERO, self.head[i])
                elif a > 0:
                    key = (self.xb[i] / a, self.head[i])
                else:
                    continue
                if best is None or key < best[0]:
                    best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], q, alpha)

    def objective(self, cost) -> flint.fmpq:
        return sum((cost(j) * v for j, v in zip(self.head, self.xb)), _ZERO)

    def phase_one(self) -> bool:
        """Find a feasible basis from the slack/artificial start; False if infeasible."""
        n = self.n
        self.start_slack_basis()
        if all(j < n for j in self.head):
            return True
        one, zero = flint.fmpq(1), _ZERO
        cost1 = lambda j: one if j >= n else zero  # noqa: E731
        self.optimize(cost1, allow_artificial=True)
        if self.objective(cost1) > 0:
            return False
        # drive zero-level artificials out where possible; the rest sit on redundant rows
        for r in range(self.m):
            if self.head[r] < n:
                continue
            row = self.binv[r]
            basic = set(self.head)
            for j in range(n):
                if j in basic:
                    continue
                a = sum((row.get(i, _ZERO) * v for i, v in self.column(j)), _ZERO)
                if a != 0:
                    self.pivot(r, j, self.ftran(j))
                    break
        return True

    def values(self) -> list[flint.fmpq]:
        x = [_ZERO] * self.n
        for j, v in zip(self.head, self.xb):
            if j < self.n:
                x[j] = v
        return x


def _highs_basis(sf: _StandardForm) -> list[int] | None:
    """Ask HiGHS (floating point) for an optimal basis of the standard form."""
    try:
        import highspy
        import numpy as np
    except ImportError:  # pragma: no cover - optional accelerator
        return None
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("solver", "simplex")
    h.setOptionValue("threads", 1)
    lp = highspy.HighsLp()
    lp.num_col_ = sf.n
    lp.num_row_ = sf.m
    lp.col_cost_ = np.array([float(c) for c in sf.cost])
    lp.col_lower_ = np.zeros(sf.n)
    lp.col_upper_ = np.full(sf.n, highspy.kHighsInf)
    b = np.array([float(v) for v in sf.b])
    lp.row_lower_ = b
    lp.row_upper_ = b
    starts, index, value = [0], [], []
    for col in sf.columns:
        for i, a in col:
            index.append(i)
            value.append(float(a))
        starts.append(len(index))
    lp.a_matrix_.format_ = highspy.MatrixFormat.kColwise
    lp.a_matrix_.start_ = np.array(starts, dtype=np.int32)
    lp.a_matrix_.index_ = np.array(index, dtype=np.int32)
    lp.a_matrix_.value_ = np.array(value)
    h.passModel(lp)
    h.run()
    if h.getModelStatus() != highspy.HighsModelStatus.kOptimal:
        return None
    basis = h.getBasis()
    basic = highspy.HighsBasisStatus.kBasic
    # the status lists are rebuilt on every attribute access, so fetch them once
    col_status, row_status = list(basis.col_status), list(basis.row_status)
    head = [j for j, s in enumerate(col_status) if s == basic]
    head += [sf.n + i for i, s in enumerate(row_status) if s == basic]
    if len(head) != sf.m:
        return None
    # order basic columns so that each sits on a row where it is nonzero
    return _assign_rows(sf, head)


def _assign_rows(sf: _StandardForm, head: list[int]) -> list[int] | None:
    m = sf.m
    rows_of = []
    for j in head:
        rows_of.append([j - sf.n] if j >= sf.n else [i for i, _ in sf.columns[j]])
    match_row: dict[int, int] = {}

    def augment(k, seen):
        for i in rows_of[k]:
            if i in seen:
                continue
            seen.add(i)
            if i not in match_row or augment(match_row[i], seen):
                match_row[i] = k
                return True
        return False

    for k in range(len(head)):
        if not augment(k, set()):
            return None
    out = [0] * m
    for i, k in match_row.items():
        out[i] = head[k]
    return out


def solve(lp: LinearProgram, method: str = "auto", max_nonzeros: int = MAX_NONZEROS) -> LpSolution:
    """Solve ``lp`` exactly.

    ``method="simplex"`` runs the pure exact two-phase simplex from the slack
    basis; ``"auto"`` first tries a basis proposed by HiGHS for models with
    at least ``HINT_MIN_COLUMNS`` columns.  Either way the answer is exact.
    """
    if method not in ("auto", "simplex"):
        raise ValueError(f"unknown method {method!r}")
    if lp.nnz > max_nonzeros:
        raise LpSizeError(f"model has {lp.nnz} nonzeros, limit is {max_nonzeros}")
    sf = _StandardForm(lp)
    sx = _Simplex(sf)
    cost = lambda j: sf.cost[j] if j < sf.n else _ZERO  # noqa: E731
    warm = False
    if method == "auto" and sf.n >= HINT_MIN_COLUMNS and sf.m:
        head = _highs_basis(sf)
        if head is not None and sx.start_from(head):
            warm = True
        elif head is not None:
            log.debug("%s: HiGHS basis rejected, falling back to phase one", lp.name)
    if not warm and not sx.phase_one():
        return LpSolution(Status.INFEASIBLE, pivots=sx.pivots)
    if not sx.optimize(cost, allow_artificial=False):
        return LpSolution(Status.UNBOUNDED, pivots=sx.pivots, warm_start=warm)
    values = sf.recover(sx.values())
    sol = LpSolution(Status.OPTIMAL, lp.objective_value(values), tuple(values), sx.pivots, warm)
    for a in _AUDITS:
        a.record(lp, sol)
    return sol


@dataclass
class Audit:
    """Counts optimal solves and any re-substitution failures seen while active."""

    solves: int = 0
    failures: list[str] = field(default_factory=list)

    def record(self, lp: LinearProgram, sol: LpSolution):
        self.solves += 1
        self.failures.extend(f"{lp.name}: {msg}" for msg in check_solution(lp, sol))


_AUDITS: list[Audit] = []


@contextlib.contextmanager
def audit():
    """Within the block every optimal solve is re-checked by :func:`check_solution`."""
    a = Audit()
    _AUDITS.append(a)
    try:
        yield a
    finally:
        _AUDITS.remove(a)
