"""Exact rational linear programming.

:class:`ExactSimplex` keeps a compact dictionary (one row per constraint, one
column per nonbasic variable) as Python integers over a single common
denominator and pivots fraction-free, so every intermediate quantity is exact
and no ``Fraction`` arithmetic happens inside the pivot loop.  Bland's
least-index rule is used in both the primal and the dual simplex, which rules
out cycling and makes the final basis a deterministic function of the input.

Constraints may be added to a solved instance; the dual simplex then restores
optimality from the previous basis.  :func:`solve_with_separation` uses this
for constraint generation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Callable, Optional, Sequence

from .game import to_fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

SENSES = (">=", "<=", "==")

# Set by the test-suite to verify that every fraction-free division is exact.
CHECK_DIVISIONS = False


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple
    sense: str
    rhs: Fraction

    def __post_init__(self):
        if self.sense not in SENSES:
            raise ValueError(f"unknown constraint sense {self.sense!r}")
        object.__setattr__(self, "coeffs", tuple(to_fraction(a) for a in self.coeffs))
        object.__setattr__(self, "rhs", to_fraction(self.rhs))

    def holds(self, x: Sequence[Fraction]) -> bool:
        lhs = sum((a * v for a, v in zip(self.coeffs, x)), Fraction(0))
        if self.sense == ">=":
            return lhs >= self.rhs
        if self.sense == "<=":
            return lhs <= self.rhs
        return lhs == self.rhs


@dataclass
class LinearProgram:
    """``min objective . x`` subject to ``constraints``.

    ``lower_bounds[j]`` is the lower bound of ``x_j`` or ``None`` for a free
    variable; omitted means ``x >= 0``.
    """

    objective: Sequence
    constraints: Sequence[Constraint] = ()
    lower_bounds: Optional[Sequence] = None

    def __post_init__(self):
        self.objective = tuple(to_fraction(c) for c in self.objective)
        nvar = len(self.objective)
        if self.lower_bounds is None:
            self.lower_bounds = (Fraction(0),) * nvar
        else:
            self.lower_bounds = tuple(None if b is None else to_fraction(b) for b in self.lower_bounds)
        if len(self.lower_bounds) != nvar:
            raise ValueError("lower_bounds length differs from objective length")
        self.constraints = list(self.constraints)
        for c in self.constraints:
            if len(c.coeffs) != nvar:
                raise ValueError(f"constraint has {len(c.coeffs)} coefficients, expected {nvar}")


@dataclass
class LpSolution:
    status: str
    values: tuple = ()
    objective_value: Optional[Fraction] = None
    cuts: list = field(default_factory=list)
    history: list = field(default_factory=list)  # relaxation optimum before each cut

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def _row_scale(values) -> int:
    return lcm(1, *(v.denominator for v in values))


class ExactSimplex:
    """Incremental exact simplex solver for one :class:`LinearProgram`."""

    def __init__(self, lp: LinearProgram):
        self.lp = lp
        # map original variables onto nonnegative internal columns
        self._cols: list[list[tuple[int, int]]] = []
        ntv = 0
        for lb in lp.lower_bounds:
            if lb is None:
                self._cols.append([(ntv, 1), (ntv + 1, -1)])
                ntv += 2
            else:
                self._cols.append([(ntv, 1)])
                ntv += 1
        self._ntv = ntv
        self._shift = [lb if lb is not None else Fraction(0) for lb in lp.lower_bounds]

        cost = [Fraction(0)] * ntv
        for j, c in enumerate(lp.objective):
            for t, sign in self._cols[j]:
                cost[t] += sign * c
        self._cost_scale = _row_scale(cost)
        self._cost = [int(c * self._cost_scale) for c in cost]

        self.d = 1
        self.rows: list[list[int]] = [[0] + self._cost[:]]
        self.nonbasic = [None] + list(range(ntv))
        self.basis: list[Optional[int]] = [None]
        self.pos: list[int] = [-(k + 1) for k in range(ntv)]  # >0: row index, <0: -column
        self.status: Optional[str] = None
        self.pivots = 0
        for c in lp.constraints:
            self._append(c)

    # -- construction ---------------------------------------------------------

    def _internal_rows(self, c: Constraint):
        """``(coeffs, rhs)`` pairs of ``<=`` rows over internal columns."""
        a = [Fraction(0)] * self._ntv
        rhs = c.rhs
        for j, coef in enumerate(c.coeffs):
            if coef:
                rhs -= coef * self._shift[j]
                for t, sign in self._cols[j]:
                    a[t] += sign * coef
        if c.sense == "<=":
            return [(a, rhs)]
        neg = ([-x for x in a], -rhs)
        if c.sense == ">=":
            return [neg]
        return [(a, rhs), neg]

    def _append(self, c: Constraint) -> None:
        d = self.d
        ncol = len(self.nonbasic)
        for a, rhs in self._internal_rows(c):
            lam = _row_scale(a + [rhs])
            ia = [int(x * lam) for x in a]
            # slack = rhs - a.t, with basic internal variables substituted out
            row = [0] * ncol
            row[0] = int(rhs * lam) * d
            for t, coef in enumerate(ia):
                if not coef:
                    continue
                p = self.pos[t]
                if p < 0:
                    row[-p] -= coef * d
                else:
                    brow = self.rows[p]
                    for k in range(ncol):
                        row[k] -= coef * brow[k]
            # row[k] for k>0 now holds coefficients of the dictionary slack = const + sum row[k] N_k
            slack = len(self.pos)
            self.pos.append(len(self.rows))
            self.rows.append(row)
            self.basis.append(slack)
        self.status = None

    def add_constraint(self, c: Constraint) -> None:
        if len(c.coeffs) != len(self.lp.objective):
            raise ValueError("constraint arity differs from the objective")
        self.lp.constraints.append(c)
        self._append(c)

    # -- pivoting ------------------------------------------------------------------

    def _pivot(self, r: int, s: int) -> None:
        rows = self.rows
        prow = rows[r]
        prs = prow[s]
        d = self.d
        sg = 1 if prs > 0 else -1
        for i, row in enumerate(rows):
            if i == r:
                continue
            ais = row[s]
            if CHECK_DIVISIONS:
                for a, b in zip(row, prow):
                    assert (a * prs - ais * b) % d == 0, "inexact fraction-free division"
            if sg > 0:
                new = [(a * prs - ais * b) // d for a, b in zip(row, prow)]
            else:
                new = [(ais * b - a * prs) // d for a, b in zip(row, prow)]
            new[s] = sg * ais
            rows[i] = new
        newp = [-sg * b for b in prow]
        newp[s] = sg * d
        rows[r] = newp
        self.d = sg * prs
        leaving, entering = self.basis[r], self.nonbasic[s]
        self.basis[r], self.nonbasic[s] = entering, leaving
        self.pos[entering] = r
        self.pos[leaving] = -s
        self.pivots += 1

    def _primal(self) -> str:
        rows = self.rows
        while True:
            obj = rows[0]
            s = None
            for k in range(1, len(obj)):
                if obj[k] < 0 and (s is None or self.nonbasic[k] < self.nonbasic[s]):
                    s = k
            if s is None:
                return OPTIMAL
            r = None
            for i in range(1, len(rows)):
                a = rows[i][s]
                if a >= 0:
                    continue
                if r is None:
                    r = i
                    continue
                # compare rows[i][0] / -a  with  rows[r][0] / -rows[r][s]
                lhs = rows[i][0] * -rows[r][s]
                rhs = rows[r][0] * -a
                if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[r]):
                    r = i
            if r is None:
                return UNBOUNDED
            self._pivot(r, s)

    def _dual(self) -> str:
        rows = self.rows
        while True:
            r = None
            for i in range(1, len(rows)):
                if rows[i][0] < 0 and (r is None or self.basis[i] < self.basis[r]):
                    r = i
            if r is None:
                return OPTIMAL
            prow, obj = rows[r], rows[0]
            s = None
            for k in range(1, len(prow)):
                a = prow[k]
                if a <= 0:
                    continue
                if s is None:
                    s = k
                    continue
                lhs = obj[k] * prow[s]
                rhs = obj[s] * a
                if lhs < rhs or (lhs == rhs and self.nonbasic[k] < self.nonbasic[s]):
                    s = k
            if s is None:
                return INFEASIBLE
            self._pivot(r, s)

    def _load_objective(self, cost: Sequence[int]) -> None:
        d = self.d
        ncol = len(self.nonbasic)
        row = [0] * ncol
        for k in range(1, ncol):
            v = self.nonbasic[k]
            if v < self._ntv:
                row[k] = cost[v] * d
        for i in range(1, len(self.rows)):
            v = self.basis[i]
            if v < self._ntv and cost[v]:
                c = cost[v]
                brow = self.rows[i]
                for k in range(ncol):
                    row[k] += c * brow[k]
        self.rows[0] = row

    def solve(self) -> str:
        rows = self.rows
        infeasible_rows = any(rows[i][0] < 0 for i in range(1, len(rows)))
        if infeasible_rows:
            if any(x < 0 for x in rows[0][1:]):
                # phase one: zero objective is dual feasible
                self._load_objective([0] * self._ntv)
                if self._dual() == INFEASIBLE:
                    self._load_objective(self._cost)
                    self.status = INFEASIBLE
                    return self.status
                self._load_objective(self._cost)
            elif self._dual() == INFEASIBLE:
                self.status = INFEASIBLE
                return self.status
        self.status = self._primal()
        return self.status

    # -- results ------------------------------------------------------------------

    def internal_values(self) -> list[Fraction]:
        out = [Fraction(0)] * self._ntv
        for i in range(1, len(self.rows)):
            v = self.basis[i]
            if v < self._ntv:
                out[v] = Fraction(self.rows[i][0], self.d)
        return out

    def values(self) -> tuple:
        t = self.internal_values()
        return tuple(
            self._shift[j] + sum((sign * t[col] for col, sign in cols), Fraction(0))
            for j, cols in enumerate(self._cols))

    def solution(self) -> LpSolution:
        if self.status is None:
            self.solve()
        if self.status == INFEASIBLE:
            return LpSolution(INFEASIBLE)
        x = self.values()
        if self.status == UNBOUNDED:
            return LpSolution(UNBOUNDED, x)
        obj = sum((c * v for c, v in zip(self.lp.objective, x)), Fraction(0))
        return LpSolution(OPTIMAL, x, obj)


def simplex_min(lp: LinearProgram) -> LpSolution:
    """Solve ``lp`` exactly; the basic optimum is fixed by Bland's rule."""
    solver = ExactSimplex(lp)
    solver.solve()
    return solver.solution()


Oracle = Callable[[tuple], Optional[Constraint]]


def solve_with_separation(objective, base_constraints, oracle: Oracle,
                          lower_bounds=None, max_rounds: int = 1_000_000) -> LpSolution:
    """Constraint generation: minimise over ``base_constraints`` plus oracle cuts.

    The oracle receives the current relaxation optimum and returns a violated
    constraint of the full program, or ``None`` when the point is feasible.
    Returning a constraint it already returned means the oracle is unsound
    and raises ``RuntimeError``.
    """
    lp = LinearProgram(objective, list(base_constraints), lower_bounds)
    solver = ExactSimplex(lp)
    solver.solve()
    cuts: list[Constraint] = []
    history: list[Fraction] = []
    seen: set = set()
    for _ in range(max_rounds):
        sol = solver.solution()
        if not sol.optimal:
            sol.cuts, sol.history = cuts, history
            return sol
        history.append(sol.objective_value)
        cut = oracle(sol.values)
        if cut is None:
            sol.cuts, sol.history = cuts, history
            return sol
        key = (cut.coeffs, cut.sense, cut.rhs)
        if key in seen:
            raise RuntimeError(f"separation oracle repeated a cut: {cut}")
        seen.add(key)
        cuts.append(cut)
        solver.add_constraint(cut)
        solver.solve()
    raise RuntimeError(f"constraint generation did not converge in {max_rounds} rounds")
