"""Integer kernels behind the exact solvers.

Every kernel exists twice: a loop version compiled with ``numba.njit`` and a
vectorised pure-numpy version.  The numba path is used for ``int64`` inputs
when numba imports and ``COSGAME_DISABLE_NUMBA`` is unset (or ``0``).  Inputs
whose magnitudes could overflow ``int64`` arrive as ``object`` arrays of Python
ints and always take the numpy path, so results stay exact either way.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("COSGAME_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError("disabled by COSGAME_DISABLE_NUMBA")
    from numba import njit
    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAS_NUMBA = False

INT64_SAFE = 1 << 62


def backend() -> str:
    return "numba" if HAS_NUMBA else "numpy"


def int_array(values, headroom: int = 1) -> np.ndarray:
    """Array of Python ints as ``int64`` when ``headroom * max|v|`` fits, else ``object``."""
    values = [int(v) for v in values]
    biggest = max((abs(v) for v in values), default=0)
    if biggest * max(headroom, 1) < INT64_SAFE:
        return np.array(values, dtype=np.int64)
    return np.array(values, dtype=object)


# --- pure numpy implementations ---------------------------------------------

def _subset_sums_numpy(values: np.ndarray) -> np.ndarray:
    out = np.zeros(1, dtype=values.dtype)
    for v in values:
        out = np.concatenate([out, out + v])
    return out


def _min_cost_by_weight_numpy(weights: np.ndarray, costs: np.ndarray):
    n = len(weights)
    total = int(sum(int(w) for w in weights))
    cost = np.zeros((n + 1, total + 1), dtype=costs.dtype)
    reach = np.zeros((n + 1, total + 1), dtype=np.bool_)
    reach[0, 0] = True
    for i in range(n):
        w, c = int(weights[i]), costs[i]
        prev_c, prev_r = cost[i], reach[i]
        take_r = np.zeros(total + 1, dtype=np.bool_)
        take_c = np.zeros(total + 1, dtype=costs.dtype)
        take_r[w:] = prev_r[: total + 1 - w]
        take_c[w:] = prev_c[: total + 1 - w] + c
        both = prev_r & take_r
        cost[i + 1] = np.where(prev_r, prev_c, take_c)
        cost[i + 1][both] = np.minimum(prev_c[both], take_c[both])
        reach[i + 1] = prev_r | take_r
    return cost, reach


def _max_weight_by_cost_numpy(costs: np.ndarray, weights: np.ndarray, budget: int):
    n = len(costs)
    best = np.zeros((n + 1, budget + 1), dtype=weights.dtype)
    reach = np.zeros((n + 1, budget + 1), dtype=np.bool_)
    reach[0, 0] = True
    for i in range(n):
        c, w = int(costs[i]), weights[i]
        prev_b, prev_r = best[i], reach[i]
        best[i + 1] = prev_b
        reach[i + 1] = prev_r
        if c > budget:
            continue
        take_r = np.zeros(budget + 1, dtype=np.bool_)
        take_b = np.zeros(budget + 1, dtype=weights.dtype)
        take_r[c:] = prev_r[: budget + 1 - c]
        take_b[c:] = prev_b[: budget + 1 - c] + w
        both = prev_r & take_r
        only_take = take_r & ~prev_r
        best[i + 1][only_take] = take_b[only_take]
        best[i + 1][both] = np.maximum(prev_b[both], take_b[both])
        reach[i + 1] = prev_r | take_r
    return best, reach


def _lex_less_py(a: int, b: int) -> bool:
    # compares sorted member tuples of two coalitions
    while a != b:
        if a == 0:
            return True
        if b == 0:
            return False
        la, lb = a & -a, b & -b
        if la != lb:
            return la < lb
        a ^= la
        b ^= lb
    return False


def _partition_dp_numpy(values: np.ndarray):
    size = len(values)
    n = size.bit_length() - 1
    best = np.zeros(size, dtype=values.dtype)
    choice = np.zeros(size, dtype=np.int64)
    bits = np.array([1 << i for i in range(n)], dtype=np.int64)
    for s in range(1, size):
        low = s & -s
        rest = s ^ low
        subs = _subset_sums_numpy(bits[(rest & bits) != 0]) | low
        cand = values[subs] + best[s ^ subs]
        top = cand.max()
        tied = subs[cand == top]
        pick = int(tied[0])
        for t in tied[1:]:
            if _lex_less_py(int(t), pick):
                pick = int(t)
        best[s] = top
        choice[s] = pick
    return best, choice


# --- numba implementations ------------------------------------------------------

if HAS_NUMBA:

    @njit(cache=True)
    def _subset_sums_numba(values):
        n = values.shape[0]
        out = np.zeros(1 << n, dtype=np.int64)
        for i in range(n):
            size = 1 << i
            v = values[i]
            for m in range(size):
                out[size + m] = out[m] + v
        return out

    @njit(cache=True)
    def _min_cost_by_weight_numba(weights, costs):
        n = weights.shape[0]
        total = 0
        for i in range(n):
            total += weights[i]
        cost = np.zeros((n + 1, total + 1), dtype=np.int64)
        reach = np.zeros((n + 1, total + 1), dtype=np.bool_)
        reach[0, 0] = True
        for i in range(n):
            w = weights[i]
            c = costs[i]
            for x in range(total + 1):
                r = reach[i, x]
                best = cost[i, x]
                if x >= w and reach[i, x - w]:
                    t = cost[i, x - w] + c
                    if not r or t < best:
                        best = t
                    r = True
                reach[i + 1, x] = r
                cost[i + 1, x] = best
        return cost, reach

    @njit(cache=True)
    def _max_weight_by_cost_numba(costs, weights, budget):
        n = costs.shape[0]
        best = np.zeros((n + 1, budget + 1), dtype=np.int64)
        reach = np.zeros((n + 1, budget + 1), dtype=np.bool_)
        reach[0, 0] = True
        for i in range(n):
            c = costs[i]
            w = weights[i]
            for x in range(budget + 1):
                r = reach[i, x]
                b = best[i, x]
                if c <= x and reach[i, x - c]:
                    t = best[i, x - c] + w
                    if not r or t > b:
                        b = t
                    r = True
                reach[i + 1, x] = r
                best[i + 1, x] = b
        return best, reach

    @njit(cache=True)
    def _lex_less_numba(a, b):
        while a != b:
            if a == 0:
                return True
            if b == 0:
                return False
            la = a & -a
            lb = b & -b
            if la != lb:
                return la < lb
            a ^= la
            b ^= lb
        return False

    @njit(cache=True)
    def _partition_dp_numba(values):
        size = values.shape[0]
        best = np.zeros(size, dtype=np.int64)
        choice = np.zeros(size, dtype=np.int64)
        for s in range(1, size):
            low = s & -s
            rest = s ^ low
            top = values[low] + best[rest]
            pick = low
            sub = rest
            while sub:
                t = sub | low
                cand = values[t] + best[s ^ t]
                if cand > top or (cand == top and _lex_less_numba(t, pick)):
                    top = cand
                    pick = t
                sub = (sub - 1) & rest
            best[s] = top
            choice[s] = pick
        return best, choice


def _use_numba(*arrays) -> bool:
    return HAS_NUMBA and all(a.dtype == np.int64 for a in arrays)


# --- public kernels -----------------------------------------------------------

def subset_sums(values: np.ndarray) -> np.ndarray:
    """``out[mask] = sum(values[i] for i in mask)`` for every mask over ``len(values)`` bits."""
    if _use_numba(values):
        return _subset_sums_numba(values)
    return _subset_sums_numpy(values)


def min_cost_by_weight(weights: np.ndarray, costs: np.ndarray):
    """Knapsack table indexed by exact weight.

    Row ``i`` covers the first ``i`` items: ``cost[i, w]`` is the least total
    cost of a subset of those items with total weight exactly ``w``;
    ``reach[i, w]`` is False where no such subset exists (``cost`` is then
    meaningless).
    """
    if _use_numba(weights, costs):
        return _min_cost_by_weight_numba(weights, costs)
    return _min_cost_by_weight_numpy(weights, costs)


def max_weight_by_cost(costs: np.ndarray, weights: np.ndarray, budget: int):
    """Knapsack table indexed by exact total cost ``0..budget`` holding the maximum weight."""
    if _use_numba(costs, weights):
        return _max_weight_by_cost_numba(costs, weights, int(budget))
    return _max_weight_by_cost_numpy(costs, weights, int(budget))


def partition_dp(values: np.ndarray):
    """Best partition value of every player subset.

    ``best[S]`` is the maximum of ``sum(values[T])`` over partitions of ``S``;
    ``choice[S]`` is the part containing the lowest player of ``S`` in the
    lexicographically least optimal partition.  Runs in ``O(3^n)``.
    """
    if _use_numba(values):
        return _partition_dp_numba(values)
    return _partition_dp_numpy(values)


NUMPY_KERNELS = {
    "subset_sums": _subset_sums_numpy,
    "min_cost_by_weight": _min_cost_by_weight_numpy,
    "max_weight_by_cost": _max_weight_by_cost_numpy,
    "partition_dp": _partition_dp_numpy,
}
NUMBA_KERNELS = {
    "subset_sums": _subset_sums_numba,
    "min_cost_by_weight": _min_cost_by_weight_numba,
    "max_weight_by_cost": _max_weight_by_cost_numba,
    "partition_dp": _partition_dp_numba,
} if HAS_NUMBA else {}
