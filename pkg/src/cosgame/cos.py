"""Exact cost of stability for the grand coalition and for coalition structures."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import kernels
from .errors import DomainError, ResourceLimitError
from .game import (
    ZERO, CoalitionStructure, Game, WeightedVotingGame, cs_value, full_mask, payoff_of,
)
from .lp import Constraint, LinearProgram, simplex_min, solve_with_separation
from .stability import (
    BRUTE_FORCE_CAP, DP_CELL_BUDGET, _dp_cells, _indicator, max_deficit_wvg_dp,
    positive_coalitions, value_vector,
)

WVG_PARTITION_CAP = 16
TABULAR_PARTITION_CAP = 12

CLOSED_FORM = "closed_form"
FULL_LP = "full_lp"
CONSTRAINT_GENERATION = "constraint_generation"


@dataclass(frozen=True)
class CosResult:
    """Cost of stability with a stable payoff vector attaining it.

    ``witness`` sums to ``v(I) + cos`` (or ``v(CS) + cos`` when ``structure``
    is set, in which case ``deltas[j]`` is the supplement paid to part ``j``).
    """

    cos: Fraction
    witness: tuple
    cuts_generated: int
    method: str
    structure: Optional[CoalitionStructure] = None
    deltas: tuple = ()

    @property
    def total(self) -> Fraction:
        return sum(self.witness, ZERO)


def _full_lp_total(game: Game):
    n = game.n
    if n > BRUTE_FORCE_CAP:
        raise ResourceLimitError(f"{n} players exceeds the enumeration cap of {BRUTE_FORCE_CAP}")
    # rows with v(C) = 0 are implied by p >= 0
    rows = [Constraint(_indicator(m, n), ">=", v) for m, v in positive_coalitions(game)]
    sol = simplex_min(LinearProgram((1,) * n, rows))
    return sol.values, 0, FULL_LP


def _wvg_total(game: WeightedVotingGame):
    if _dp_cells(game) > DP_CELL_BUDGET:
        raise ResourceLimitError(
            f"weights too large for the exact knapsack oracle ({_dp_cells(game)} cells > "
            f"{DP_CELL_BUDGET}); use the FPTAS (approx) instead")
    n = game.n

    def oracle(p):
        rep = max_deficit_wvg_dp(game, p)
        if rep.max_deficit > 0:
            return Constraint(_indicator(rep.witness, n), ">=", 1)
        return None

    sol = solve_with_separation((1,) * n, [], oracle)
    return sol.values, len(sol.cuts), CONSTRAINT_GENERATION


def min_stable_total(game: Game):
    """``(p, cuts, method)`` where ``p`` is a stable super-imputation of least total."""
    if isinstance(game, WeightedVotingGame):
        return _wvg_total(game)
    return _full_lp_total(game)


def cos_exact(game: Game) -> CosResult:
    """Cost of stability from the linear program with every coalition enumerated."""
    p, cuts, method = _full_lp_total(game)
    return CosResult(sum(p, ZERO) - game.value(full_mask(game.n)), p, cuts, method)


def cos_exact_wvg(game: WeightedVotingGame) -> CosResult:
    """Cost of stability by constraint generation with the knapsack deficit oracle."""
    p, cuts, method = _wvg_total(game)
    return CosResult(sum(p, ZERO) - 1, p, cuts, method)


def cost_of_stability(game: Game) -> CosResult:
    if isinstance(game, WeightedVotingGame):
        return cos_exact_wvg(game)
    return cos_exact(game)


def cos_uniform(n: int, w: int, q: int) -> Fraction:
    """Closed form ``n / ceil(q/w) - 1`` for the game with ``n`` players of weight ``w``."""
    if n < 1 or w < 1 or q < 1:
        raise DomainError("need n >= 1, w >= 1 and q >= 1")
    if q > n * w:
        raise DomainError(f"grand coalition loses: {n}*{w} < {q}")
    return Fraction(n, -(-q // w)) - 1


def cos_cs(game: Game, cs: CoalitionStructure) -> CosResult:
    """Least total supplement stabilising the structure ``cs``.

    The program only differs from the grand-coalition one in the baseline
    ``v(CS)`` that the supplement is measured against.
    """
    base = cs_value(game, cs)
    p, cuts, method = min_stable_total(game)
    deltas = tuple(payoff_of(p, part) - game.value(part) for part in cs.parts)
    return CosResult(sum(p, ZERO) - base, p, cuts, method, cs, deltas)


def optimal_cs_value(game: Game) -> tuple[Fraction, CoalitionStructure]:
    """Welfare-maximising coalition structure (lexicographically least among optima)."""
    n = game.n
    cap = WVG_PARTITION_CAP if isinstance(game, WeightedVotingGame) else TABULAR_PARTITION_CAP
    if n > cap:
        raise ResourceLimitError(
            f"{n} players exceeds the coalition-structure search cap of {cap}")
    vals, den = value_vector(game)
    if vals.dtype == object or int(abs(vals).max()) * n >= kernels.INT64_SAFE:
        vals = vals.astype(object)
    best, choice = kernels.partition_dp(vals)
    full = full_mask(n)
    parts = []
    s = full
    while s:
        t = int(choice[s])
        parts.append(t)
        s ^= t
    return Fraction(int(best[full]), den), CoalitionStructure(n, tuple(parts))


def cos_with_cs(game: Game) -> CosResult:
    """Cheapest structure to stabilise; it is always a welfare-maximising one."""
    _, cs = optimal_cs_value(game)
    return cos_cs(game, cs)
