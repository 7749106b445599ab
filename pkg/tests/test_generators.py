import random
from fractions import Fraction

import pytest

from cosgame.approx import is_anonymous, is_superadditive
from cosgame.cos import cos_cs, cos_exact, cost_of_stability
from cosgame.errors import DomainError, ResourceLimitError
from cosgame.game import CoalitionStructure, WeightedVotingGame
from cosgame.generators import (
    fixtures, gen_all_nonempty_win, gen_anonymous_majority, gen_partition_wvg,
    gen_projective_plane, gen_uniform, generate, projective_plane_lines,
)
from cosgame.stability import is_simple, is_stable, veto_agents
from randgames import has_subset_sum


def test_uniform():
    assert gen_uniform(3, 1, 2) == WeightedVotingGame((1, 1, 1), 2)
    assert gen_uniform(6, 2, 5).weights == (2,) * 6
    assert gen_uniform(1, 5, 5) == WeightedVotingGame((5,), 5)
    with pytest.raises(DomainError):
        gen_uniform(2, 1, 3)


@pytest.mark.parametrize("order", [2, 3])
def test_projective_plane_axioms(order):
    lines = projective_plane_lines(order)
    n = order * order + order + 1
    assert len(lines) == n
    assert all(len(line) == order + 1 for line in lines)
    assert all(sum(p in line for line in lines) == order + 1 for p in range(n))
    assert all(a & b for i, a in enumerate(lines) for b in lines[i + 1:])
    # two points span exactly one line
    for a in range(n):
        for b in range(a + 1, n):
            assert sum(a in line and b in line for line in lines) == 1


def test_projective_plane_game():
    g = gen_projective_plane(2)
    assert g.n == 7 and is_simple(g) and is_superadditive(g)
    assert cos_exact(g).cos == Fraction(4, 3)
    with pytest.raises(DomainError):
        gen_projective_plane(4)
    with pytest.raises(ResourceLimitError):
        gen_projective_plane(5)


def test_anonymous_majority():
    assert gen_anonymous_majority(1) == WeightedVotingGame((1, 1, 1), 2)
    g = gen_anonymous_majority(2)
    assert g.n == 5 and g.quota == 3 and cost_of_stability(g).cos == Fraction(2, 3)
    assert is_anonymous(g) and is_superadditive(g)
    rng = random.Random(51)
    for _ in range(30):
        m = rng.randrange(1 << 5)
        perm = rng.sample(range(5), 5)
        pm = sum(1 << perm[i] for i in range(5) if m >> i & 1)
        assert g.value(m) == g.value(pm)
    with pytest.raises(DomainError):
        gen_anonymous_majority(0)


def test_partition_examples():
    g, d = gen_partition_wvg((1, 1, 2))
    assert g == WeightedVotingGame((1, 1, 2), 2) and d == Fraction(1, 3)
    assert cost_of_stability(g).cos > d
    g, d = gen_partition_wvg((1, 1, 4))
    assert g.quota == 3 and d == H
    assert is_stable(g, tuple(Fraction(w, 4) for w in (1, 1, 4)))
    with pytest.raises(DomainError):
        gen_partition_wvg((1, 2))


H = Fraction(1, 2)


def test_partition_core_emptiness_against_subset_sum():
    rng = random.Random(52)
    seen = set()
    for _ in range(60):
        a = [rng.randint(0, 6) for _ in range(rng.randint(1, 12))]
        if sum(a) % 2 or sum(a) < 2:
            continue
        g, d = gen_partition_wvg(a)
        empty = cost_of_stability(g).cos > d
        assert empty == has_subset_sum(a, sum(a) // 2)
        seen.add(empty)
    assert seen == {True, False}


def test_all_nonempty_win():
    assert cos_exact(gen_all_nonempty_win(3)).cos == 2
    assert cos_exact(gen_all_nonempty_win(1)).cos == 0
    with pytest.raises(DomainError):
        gen_all_nonempty_win(0)


def test_fixtures():
    fx = fixtures()
    assert fx["ex54"] == WeightedVotingGame((1, 1, 1), 2)
    assert fx["ex55"] == WeightedVotingGame((8, 8, 9, 9, 1), 10)
    assert fx["tight2approx"] == WeightedVotingGame((2, 2), 3)
    assert veto_agents(fx["tight2approx"]) == {0, 1}
    assert cost_of_stability(fx["tight2approx"]).cos == 0
    cs = CoalitionStructure.from_lists(3, [(0, 1), (2,)])
    assert cos_cs(fx["ex54"], cs).cos == H


def test_generate_dispatch():
    assert generate("uniform", ["3", "1", "2"]) == WeightedVotingGame((1, 1, 1), 2)
    assert generate("partition_reduction", [1, 1, 2]).quota == 2
    assert generate("fixture", ["ex55"]).n == 5
    for bad in [("nope", []), ("uniform", [1]), ("uniform", ["x", 1, 1]), ("fixture", ["zz"])]:
        with pytest.raises(DomainError):
            generate(*bad)
