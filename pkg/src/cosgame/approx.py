"""Approximate cost of stability for weighted voting games.

The approximation scheme works on the feasibility programs

    p >= 0,  p(I) <= baseline + eps' * k,  p(C) >= 1 for every winning C,

for increasing ``k``.  Candidates are checked by a rounding oracle that moves
payoffs up to a grid of step ``eps' / n`` and then runs a knapsack over the
(polynomially many) grid costs, so its running time does not depend on the
magnitude of the weights.  The oracle either returns a winning coalition that
the candidate underpays or a rounded vector that is feasible for level ``k`` or
``k + 1``; either way the reported level is at most one above the smallest
feasible one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Optional, Sequence, Union

import numpy as np

from . import kernels
from .cos import WVG_PARTITION_CAP, TABULAR_PARTITION_CAP, cost_of_stability, optimal_cs_value
from .errors import DomainError, ResourceLimitError
from .game import (
    ZERO, CoalitionStructure, Game, WeightedVotingGame, cs_value, full_mask, to_fraction,
)
from .lp import Constraint, ExactSimplex, LinearProgram
from .stability import _indicator, least_core_value, value_vector, veto_agents

FPTAS_CELL_BUDGET = 50_000_000


@dataclass(frozen=True)
class FptasParams:
    epsilon: Fraction
    n: int

    def __post_init__(self):
        eps = to_fraction(self.epsilon)
        if eps <= 0:
            raise DomainError(f"epsilon must be positive, got {eps}")
        if self.n < 1:
            raise DomainError("need at least one player")
        object.__setattr__(self, "epsilon", eps)

    @property
    def X(self) -> int:
        return 2 * ceil(1 / self.epsilon)

    @property
    def epsilon_prime(self) -> Fraction:
        return Fraction(1, self.X)

    @property
    def grid_step(self) -> Fraction:
        return Fraction(1, self.X * self.n)


@dataclass(frozen=True)
class RoundedPoint:
    """Rounded candidate that satisfies every constraint of feasibility level ``level``."""

    payoffs: tuple
    level: int


@dataclass
class ApproxResult:
    value: Fraction
    witness: tuple
    level: int = 0
    epsilon_prime: Optional[Fraction] = None
    cuts: int = 0
    method: str = "fptas"


def _cheap_winning_coalition(game: WeightedVotingGame, ticks: Sequence[int], budget: int) -> Optional[int]:
    """A winning coalition whose total tick count is at most ``budget``, if any."""
    n = game.n
    if game.quota == 0:
        i = min(range(n), key=lambda j: (ticks[j], j))
        return 1 << i if ticks[i] <= budget else None
    if (n + 1) * (budget + 1) > FPTAS_CELL_BUDGET:
        raise ResourceLimitError("rounding grid too fine for the knapsack budget; increase epsilon")
    costs = kernels.int_array(ticks, headroom=1)
    weights = kernels.int_array(game.weights, headroom=n)
    best, reach = kernels.max_weight_by_cost(costs, weights, budget)
    ok = reach[n] & (best[n] >= game.quota)
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        return None
    x = int(hits[0])
    mask = 0
    for i in range(n, 0, -1):
        if reach[i - 1, x] and best[i - 1, x] == best[i, x]:
            continue
        mask |= 1 << (i - 1)
        x -= int(ticks[i - 1])
    # a minimal winning subset is still underpaid and gives a stronger cut
    for i in range(n):
        if mask >> i & 1 and game.weight(mask & ~(1 << i)) >= game.quota:
            mask &= ~(1 << i)
    return mask


def rounded_separation(game: WeightedVotingGame, p: Sequence, params: FptasParams, k: int,
                       baseline: Fraction = Fraction(1)) -> Union[Constraint, RoundedPoint]:
    """Separation step for feasibility level ``k``.

    Returns a constraint of level ``k`` violated by ``p``, or a rounded vector
    ``p'`` with ``p <= p' <= p + eps'/n`` feasible for level ``k`` or ``k + 1``.
    """
    n = game.n
    p = tuple(to_fraction(x) for x in p)
    for i, x in enumerate(p):
        if x < 0:
            return Constraint(_indicator(1 << i, n), ">=", 0)
    cap = baseline + params.epsilon_prime * k
    if sum(p, ZERO) > cap:
        return Constraint((1,) * n, "<=", cap)
    scale = params.X * n  # one tick is eps'/n
    ticks = [ceil(x * scale) for x in p]
    coalition = _cheap_winning_coalition(game, ticks, scale - 1)
    if coalition is not None:
        return Constraint(_indicator(coalition, n), ">=", 1)
    rounded = tuple(Fraction(t, scale) for t in ticks)
    level = k if sum(rounded, ZERO) <= cap else k + 1
    return RoundedPoint(rounded, level)


def _pad(p: tuple, total: Fraction) -> tuple:
    # raising a payoff keeps a stable vector stable
    return (p[0] + total - sum(p, ZERO),) + p[1:]


def _additive_run(game: WeightedVotingGame, epsilon, baseline: Fraction = Fraction(1)) -> ApproxResult:
    n = game.n
    params = FptasParams(epsilon, n)
    eps1 = params.epsilon_prime
    solver = ExactSimplex(LinearProgram((1,) * n))
    k = 0
    cuts = 0
    while True:
        solver.solve()
        p = solver.values()
        total = sum(p, ZERO)
        # levels below this one are infeasible already for the cuts found so far
        k = max(k, ceil((total - baseline) / eps1))
        if k > n * params.X:
            raise RuntimeError("approximation scheme ran past the last feasibility level")
        res = rounded_separation(game, p, params, k, baseline)
        if isinstance(res, Constraint):
            solver.add_constraint(res)
            cuts += 1
            continue
        value = eps1 * res.level
        return ApproxResult(value, _pad(res.payoffs, baseline + value), res.level, eps1, cuts,
                            "additive_fptas")


def additive_result(game: WeightedVotingGame, epsilon) -> ApproxResult:
    return _additive_run(game, epsilon)


def additive_fptas(game: WeightedVotingGame, epsilon) -> Fraction:
    """Value ``D`` with ``CoS(G) <= D <= CoS(G) + epsilon``."""
    return _additive_run(game, epsilon).value


def fptas_result(game: WeightedVotingGame, epsilon) -> ApproxResult:
    epsilon = to_fraction(epsilon)
    FptasParams(epsilon, game.n)
    veto = veto_agents(game)
    if veto:
        witness = tuple(Fraction(1) if i == min(veto) else ZERO for i in range(game.n))
        return ApproxResult(ZERO, witness, 0, None, 0, "veto")
    res = _additive_run(game, epsilon / game.n)
    res.method = "fptas"
    return res


def fptas(game: WeightedVotingGame, epsilon) -> Fraction:
    """Value ``D`` with ``CoS(G) <= D <= (1 + epsilon) CoS(G)``."""
    return fptas_result(game, epsilon).value


def fptas_cs(game: WeightedVotingGame, cs: CoalitionStructure, epsilon) -> ApproxResult:
    """Approximate ``CoS(CS, G)`` by the same scheme measured against ``v(CS)``.

    Guarantee: ``CoS(CS, G) <= value <= CoS(CS, G) + epsilon / n``.
    """
    res = _additive_run(game, to_fraction(epsilon) / game.n, cs_value(game, cs))
    res.method = "fptas_cs"
    return res


def proportional_payoff(game: WeightedVotingGame) -> tuple:
    """``p_i = min(1, w_i / q)``: always stable, total within twice the optimum."""
    if game.quota <= 0:
        raise DomainError("proportional payoff needs a positive quota")
    return tuple(min(Fraction(1), Fraction(w, game.quota)) for w in game.weights)


# --- bounds report ------------------------------------------------------------------

@dataclass(frozen=True)
class BoundCheck:
    name: str
    lhs: object
    relation: str
    rhs: object
    passed: bool


@dataclass
class BoundsReport:
    cos: Fraction
    least_core: Fraction
    optimal_cs_value: Optional[Fraction]
    checks: list = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _check(name, lhs, relation, rhs) -> BoundCheck:
    ok = {"<=": lhs <= rhs, ">=": lhs >= rhs, "==": lhs == rhs, "<=>": lhs == rhs}[relation]
    return BoundCheck(name, lhs, relation, rhs, bool(ok))


def is_superadditive(game: Game) -> bool:
    """Brute-force ``v(S) + v(T) <= v(S | T)`` over disjoint pairs (3^n pairs)."""
    vals, _ = value_vector(game)
    vals = vals.astype(object)
    full = full_mask(game.n)
    for s in range(1, full + 1):
        rest = full & ~s
        t = rest
        while t:
            if t > s and vals[s] + vals[t] > vals[s | t]:
                return False
            t = (t - 1) & rest
    return True


def is_anonymous(game: Game) -> bool:
    vals, _ = value_vector(game)
    by_size: dict[int, object] = {}
    for m in range(1 << game.n):
        size = m.bit_count()
        if by_size.setdefault(size, vals[m]) != vals[m]:
            return False
    return True


def bounds_report(game: Game) -> BoundsReport:
    n = game.n
    res = cost_of_stability(game)
    cos = res.cos
    eps = least_core_value(game)
    vals, den = value_vector(game)
    grand = game.value(full_mask(n))
    vmax = Fraction(int(vals.max()), den)
    cap = WVG_PARTITION_CAP if isinstance(game, WeightedVotingGame) else TABULAR_PARTITION_CAP
    best_cs = optimal_cs_value(game)[0] if n <= cap else None

    checks = []
    if best_cs is not None:
        checks.append(_check("structure_lower_bound", best_cs - grand, "<=", cos))
    checks.append(_check("max_value_upper_bound", cos, "<=", n * vmax))
    checks.append(_check("least_core_upper_bound", cos, "<=", n * eps))
    checks.append(_check("least_core_positivity", eps > 0, "<=>", cos > 0))
    if isinstance(game, WeightedVotingGame):
        if not veto_agents(game):
            checks.append(_check("veto_free_lower_bound", cos, ">=", Fraction(1, n)))
        if game.quota > 0:
            prop = sum(proportional_payoff(game), ZERO)
            checks.append(_check("proportional_two_approx", prop, "<=", 2 * (grand + cos)))
    if n <= 12 and is_superadditive(game):
        # cos <= (sqrt(n) - 1) v(I)  <=>  (cos + v(I))^2 <= n v(I)^2
        checks.append(_check("superadditive_sqrt_bound", (cos + grand) ** 2, "<=", n * grand ** 2))
        if is_anonymous(game):
            checks.append(_check("anonymous_superadditive_bound", cos, "<=", 2 * grand))
    return BoundsReport(cos, eps, best_cs, checks)

