"""Stability checks: veto agents, maximum deficit, CS-core membership, least core."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from . import kernels
from .errors import DomainError, PreconditionError, ResourceLimitError
from .game import (
    ZERO, AdjustedGame, CoalitionStructure, Game, TabularGame, WeightedVotingGame,
    adjust_game_cs, as_super_imputation, full_mask, payoff_of, to_fraction,
)
from .lp import Constraint, LinearProgram, simplex_min, solve_with_separation

BRUTE_FORCE_CAP = 20
DP_CELL_BUDGET = 20_000_000


@dataclass(frozen=True)
class DeficitReport:
    """Largest ``v(C) - p(C)`` over all coalitions and the coalition attaining it.

    Among several maximisers the witness is the lexicographically least bit
    string ``b_0 b_1 ... b_{n-1}``; the empty coalition is therefore the
    witness whenever the maximum is 0.
    """

    max_deficit: Fraction
    witness: int


# --- dense value vectors ---------------------------------------------------------

def _scale(arr: np.ndarray, factor: int) -> np.ndarray:
    if factor == 1:
        return arr
    if arr.dtype == np.int64:
        top = int(np.abs(arr).max()) if arr.size else 0
        if top * factor < kernels.INT64_SAFE:
            return arr * factor
    return arr.astype(object) * factor


def value_vector(game: Game) -> tuple[np.ndarray, int]:
    """``(vals, den)`` with ``v(mask) == vals[mask] / den`` for every mask."""
    n = game.n
    if n > BRUTE_FORCE_CAP:
        raise ResourceLimitError(f"{n} players exceeds the enumeration cap of {BRUTE_FORCE_CAP}")
    if isinstance(game, WeightedVotingGame):
        sums = kernels.subset_sums(kernels.int_array(game.weights, headroom=n))
        wins = (sums >= game.quota).astype(np.int64)
        wins[0] = 0
        return wins, 1
    if isinstance(game, TabularGame):
        den = lcm(1, *(v.denominator for _, v in game.entries))
        nums = [int(v * den) for _, v in game.entries]
        probe = kernels.int_array(nums or [0], headroom=n)
        arr = np.zeros(1 << n, dtype=probe.dtype)
        for (mask, _), num in zip(game.entries, nums):
            arr[mask] = num
        return arr, den
    if isinstance(game, AdjustedGame):
        base, bden = value_vector(game.base)
        den = lcm(bden, *(d.denominator for _, d in game.supplements))
        arr = _scale(base, den // bden)
        if arr.dtype == np.int64:
            extra = max((abs(int(d * den)) for _, d in game.supplements), default=0)
            if int(np.abs(arr).max()) + extra >= kernels.INT64_SAFE // max(n, 1):
                arr = arr.astype(object)
        for mask, d in game.supplements:
            arr[mask] += int(d * den)
        return arr, den
    vals = [game.value(m) for m in range(1 << n)]
    den = lcm(1, *(v.denominator for v in vals))
    return kernels.int_array([int(v * den) for v in vals], headroom=n), den


def _lex_least(masks: np.ndarray, n: int) -> int:
    masks = masks.astype(np.int64)
    rev = np.zeros_like(masks)
    for i in range(n):
        rev |= ((masks >> i) & 1) << (n - 1 - i)
    return int(masks[int(np.argmin(rev))])


# --- veto agents -----------------------------------------------------------------

def is_simple(game: Game) -> bool:
    """Whether the game is increasing with values in {0, 1}."""
    if isinstance(game, WeightedVotingGame):
        return True
    vals, den = value_vector(game)
    if not np.all((vals == 0) | (vals == den)):
        return False
    masks = np.arange(1 << game.n, dtype=np.int64)
    for i in range(game.n):
        has = (masks >> i) & 1 == 1
        if np.any(vals[masks[has] ^ (1 << i)] > vals[masks[has]]):
            return False
    return True


def veto_agents(game: Game) -> frozenset[int]:
    """Players without whom no coalition wins (simple games only)."""
    n = game.n
    if isinstance(game, WeightedVotingGame):
        total = game.total_weight
        return frozenset(
            i for i in range(n)
            if n == 1 or total - game.weights[i] < game.quota)
    if not is_simple(game):
        raise PreconditionError("veto agents are defined for simple (increasing 0/1) games only")
    full = full_mask(n)
    # increasing: all subsets of I \ {i} lose iff I \ {i} loses
    return frozenset(i for i in range(n) if game.value(full & ~(1 << i)) == 0)


def simple_core_nonempty(game: Game) -> bool:
    return bool(veto_agents(game))


# --- maximum deficit ------------------------------------------------------------------

def max_deficit_brute(game: Game, p: Sequence) -> DeficitReport:
    """Exhaustive ``max_C v(C) - p(C)`` over all ``2^n`` coalitions."""
    n = game.n
    if n > BRUTE_FORCE_CAP:
        raise ResourceLimitError(f"{n} players exceeds the enumeration cap of {BRUTE_FORCE_CAP}")
    p = as_super_imputation(p, n)
    vals, vden = value_vector(game)
    pden = lcm(1, *(x.denominator for x in p))
    den = lcm(vden, pden)
    vals = _scale(vals, den // vden)
    pay = kernels.subset_sums(kernels.int_array((x * den for x in p), headroom=n))
    if vals.dtype != pay.dtype:
        vals, pay = vals.astype(object), pay.astype(object)
    deficit = vals - pay
    top = deficit.max()
    witness = _lex_least(np.flatnonzero(deficit == top), n)
    return DeficitReport(Fraction(int(top), den), witness)


def _dp_cells(game: WeightedVotingGame) -> int:
    return (game.n + 1) * (game.total_weight + 1)


def max_deficit_wvg_dp(game: WeightedVotingGame, p: Sequence) -> DeficitReport:
    """Maximum deficit of a weighted voting game by a knapsack table over exact weights.

    For every weight ``w`` the table holds the cheapest payment of a coalition of
    weight exactly ``w``; the cheapest winning coalition is then read off the
    columns ``w >= q``.  Exact for any rational payoffs (they are scaled to a
    common integer denominator).
    """
    n = game.n
    p = as_super_imputation(p, n)
    if _dp_cells(game) > DP_CELL_BUDGET:
        raise ResourceLimitError(
            f"knapsack table of {_dp_cells(game)} cells exceeds the budget of {DP_CELL_BUDGET}; "
            "use max_deficit_brute for few players or the FPTAS for large weights")
    den = lcm(1, *(x.denominator for x in p))
    costs = [int(x * den) for x in p]
    if game.quota == 0:
        cheapest = min(costs)
        if cheapest >= den:
            return DeficitReport(ZERO, 0)
        j = max(i for i in range(n) if costs[i] == cheapest)
        return DeficitReport(Fraction(den - cheapest, den), 1 << j)

    # players in reverse so that backtracking decides player 0 first
    w_rev = kernels.int_array(game.weights[::-1], headroom=1)
    c_rev = kernels.int_array(costs[::-1], headroom=n)
    cost, reach = kernels.min_cost_by_weight(w_rev, c_rev)
    total = game.total_weight
    winning = reach[n].copy()
    winning[: game.quota] = False
    cheapest = min(cost[n][winning])
    if cheapest >= den:
        return DeficitReport(ZERO, 0)

    targets = winning & (cost[n] == cheapest)
    remaining = cheapest
    mask = 0
    for k in range(n, 0, -1):
        player = n - k
        prev_c, prev_r = cost[k - 1], reach[k - 1]
        skip = targets & prev_r & (prev_c == remaining)
        if skip.any():
            targets = skip
            continue
        w, c = game.weights[player], costs[player]
        moved = np.zeros(total + 1, dtype=np.bool_)
        moved[: total + 1 - w] = targets[w:]
        targets = moved & prev_r & (prev_c == remaining - c)
        remaining -= c
        mask |= 1 << player
    return DeficitReport(Fraction(den - int(cheapest), den), mask)


def max_deficit(game: Game, p: Sequence) -> DeficitReport:
    """Dispatch: knapsack table for weighted voting games within budget, else enumeration."""
    if isinstance(game, WeightedVotingGame) and _dp_cells(game) <= DP_CELL_BUDGET:
        return max_deficit_wvg_dp(game, p)
    return max_deficit_brute(game, p)


def is_stable(game: Game, p: Sequence) -> bool:
    return max_deficit(game, p).max_deficit <= 0


def cs_core_membership(game: Game, cs: CoalitionStructure, deltas: Sequence, p: Sequence) -> bool:
    """Whether ``(cs, p)`` is in the CS-core of ``G(deltas)``.

    Raises :class:`PreconditionError` if ``p`` is not an imputation for the
    structure in the adjusted game, which is a different failure from instability.
    """
    adjusted = adjust_game_cs(game, cs, deltas)
    p = tuple(to_fraction(x) for x in p)
    if len(p) != game.n or any(x < 0 for x in p) or any(
            payoff_of(p, part) != adjusted.value(part) for part in cs.parts):
        raise PreconditionError("payoff vector is not an imputation for the structure")
    # supplemented parts are paid exactly their adjusted value, every other
    # coalition keeps its original value
    return is_stable(game, p)


# --- least core ----------------------------------------------------------------------

def positive_coalitions(game: Game) -> list[tuple[int, Fraction]]:
    """``(mask, v(mask))`` for every coalition of positive value, in mask order."""
    if isinstance(game, TabularGame):
        return list(game.entries)
    vals, den = value_vector(game)
    return [(int(m), Fraction(int(vals[m]), den)) for m in np.flatnonzero(vals > 0)]


def _indicator(mask: int, n: int, extra: tuple = ()) -> tuple:
    return tuple(1 if mask >> i & 1 else 0 for i in range(n)) + extra


def least_core(game: Game) -> tuple[Fraction, tuple]:
    """``(epsilon, p)``: least-core value and an imputation attaining it.

    The maximum runs over every coalition including the empty one, so the
    value is never negative.  Individual rationality is imposed whenever some
    imputation exists.  When the singleton values already exceed ``v(I)`` (the
    all-nonempty-win game, say) the minimum is taken over nonnegative vectors
    with ``p(I) = v(I)``, which is how the uniform split is used as a least-core
    point for that game.
    """
    n = game.n
    grand = game.value(full_mask(n))
    singles = [game.value(1 << i) for i in range(n)]
    if sum(singles) > grand:
        if grand < 0:
            raise DomainError("no payoff vector distributes v(I): it is negative")
        singles = [ZERO] * n
    objective = (0,) * n + (1,)
    bounds = tuple(singles) + (None,)
    base = [
        Constraint((1,) * n + (0,), "==", grand),
        Constraint((0,) * n + (1,), ">=", 0),
    ]
    if isinstance(game, WeightedVotingGame) and _dp_cells(game) <= DP_CELL_BUDGET:
        def oracle(x):
            rep = max_deficit_wvg_dp(game, x[:n])
            if rep.max_deficit > x[n]:
                return Constraint(_indicator(rep.witness, n, (1,)), ">=", game.value(rep.witness))
            return None
        sol = solve_with_separation(objective, base, oracle, bounds)
    else:
        rows = base + [Constraint(_indicator(m, n, (1,)), ">=", v)
                       for m, v in positive_coalitions(game)]
        sol = simplex_min(LinearProgram(objective, rows, bounds))
    return sol.values[n], sol.values[:n]


def least_core_value(game: Game) -> Fraction:
    return least_core(game)[0]
