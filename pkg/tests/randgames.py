"""Seeded random instances shared by the test modules."""

import random
from itertools import combinations
from fractions import Fraction

from cosgame.game import TabularGame, WeightedVotingGame


def random_wvg(rng: random.Random, n_max: int = 8, w_max: int = 8, n_min: int = 1) -> WeightedVotingGame:
    n = rng.randint(n_min, n_max)
    weights = [rng.randint(0, w_max) for _ in range(n)]
    if sum(weights) == 0:
        weights[rng.randrange(n)] = 1
    return WeightedVotingGame(weights, rng.randint(1, sum(weights)))


def random_tabular(rng: random.Random, n_max: int = 6, density: float = 0.5) -> TabularGame:
    n = rng.randint(1, n_max)
    entries = {}
    for m in range(1, 1 << n):
        if rng.random() < density:
            entries[m] = Fraction(rng.randint(0, 12), rng.randint(1, 4))
    return TabularGame(n, entries)


def random_payoff(rng: random.Random, n: int, den_max: int = 6, top: int = 4) -> tuple:
    return tuple(Fraction(rng.randint(0, top), rng.randint(1, den_max)) for _ in range(n))


def has_subset_sum(a, target: int) -> bool:
    # plain enumeration of all 2^n index subsets
    return any(sum(c) == target for r in range(len(a) + 1) for c in combinations(a, r))
