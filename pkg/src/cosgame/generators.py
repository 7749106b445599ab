"""Game families used as fixtures and tight instances."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Callable

from .errors import DomainError, ResourceLimitError
from .game import Game, TabularGame, WeightedVotingGame, full_mask, mask_of

TABULAR_PLAYER_CAP = 20


def gen_uniform(n: int, w: int, q: int) -> WeightedVotingGame:
    """``[w, ..., w; q]`` with ``n`` players."""
    if n < 1 or w < 1 or q < 0 or q > n * w:
        raise DomainError(f"uniform game needs n >= 1, w >= 1, 0 <= q <= n*w (got {n}, {w}, {q})")
    return WeightedVotingGame((w,) * n, q)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def _normalise(v: tuple[int, ...], p: int) -> tuple[int, ...]:
    # scale so that the first nonzero coordinate is 1
    lead = next(x for x in v if x)
    inv = pow(lead, -1, p)
    return tuple(x * inv % p for x in v)


def projective_plane_lines(order: int) -> list[frozenset[int]]:
    """Lines of the projective plane over the field with ``order`` elements (prime).

    Points and lines are the normalised nonzero vectors of ``F_p^3`` in
    lexicographic order; a point lies on a line iff their dot product vanishes.
    """
    p = order
    if not _is_prime(p):
        raise DomainError(f"projective plane order must be prime, got {p}")
    points = sorted({_normalise(v, p) for v in product(range(p), repeat=3) if any(v)})
    lines = []
    for u in points:  # the dual plane has the same normalised vectors
        lines.append(frozenset(
            i for i, x in enumerate(points) if sum(a * b for a, b in zip(u, x)) % p == 0))
    _check_plane(lines, len(points), order)
    return lines


def _check_plane(lines: list[frozenset[int]], n: int, order: int) -> None:
    ok = n == order * order + order + 1 and len(lines) == n
    ok = ok and all(len(line) == order + 1 for line in lines)
    ok = ok and all(sum(pt in line for line in lines) == order + 1 for pt in range(n))
    ok = ok and all(lines[a] & lines[b] for a in range(n) for b in range(a + 1, n))
    if not ok:
        raise RuntimeError(f"plane of order {order} failed its incidence self-check")


def gen_projective_plane(order: int) -> TabularGame:
    """Simple game whose winning coalitions are the supersets of lines."""
    lines = projective_plane_lines(order)
    n = order * order + order + 1
    if n > TABULAR_PLAYER_CAP:
        raise ResourceLimitError(f"a plane of order {order} has {n} points; the table cap is {TABULAR_PLAYER_CAP}")
    line_masks = [mask_of(line) for line in lines]
    entries = {m: 1 for m in range(1, 1 << n) if any(m & lm == lm for lm in line_masks)}
    return TabularGame(n, entries)


def gen_anonymous_majority(k: int) -> WeightedVotingGame:
    """Majority game on ``2k + 1`` players: ``v(C) = 1`` iff ``|C| >= k + 1``."""
    if k < 1:
        raise DomainError(f"k must be at least 1, got {k}")
    return WeightedVotingGame((1,) * (2 * k + 1), k + 1)


def gen_partition_wvg(a) -> tuple[WeightedVotingGame, Fraction]:
    """Game ``[a_1, ..., a_n; K]`` with ``K = sum(a) / 2`` and supplement ``(K-1)/(K+1)``.

    ``G(delta)`` has an empty core exactly when ``a`` splits into two halves of
    equal sum.
    """
    a = tuple(int(x) for x in a)
    if not a or any(x < 0 for x in a):
        raise DomainError("need a nonempty list of nonnegative integers")
    total = sum(a)
    if total % 2:
        raise DomainError(f"the sum {total} is odd")
    K = total // 2
    if K < 1:
        raise DomainError("the sum must be at least 2")
    return WeightedVotingGame(a, K), Fraction(K - 1, K + 1)


def gen_all_nonempty_win(n: int) -> TabularGame:
    """Every nonempty coalition is worth 1."""
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    if n > TABULAR_PLAYER_CAP:
        raise ResourceLimitError(f"{n} players exceeds the table cap of {TABULAR_PLAYER_CAP}")
    return TabularGame(n, {m: 1 for m in range(1, full_mask(n) + 1)})


def tight_two_approx(q: int) -> WeightedVotingGame:
    """``[q-1, q-1; q]``: the proportional payoff costs ``2 - 2/q`` times the optimum."""
    if q < 2:
        raise DomainError(f"q must be at least 2, got {q}")
    return WeightedVotingGame((q - 1, q - 1), q)


def fixtures() -> dict[str, Game]:
    return {
        "ex54": WeightedVotingGame((1, 1, 1), 2),
        "ex55": WeightedVotingGame((8, 8, 9, 9, 1), 10),
        "tight2approx": tight_two_approx(3),
        "fano": gen_projective_plane(2),
        "majority5": gen_anonymous_majority(2),
        "allwin4": gen_all_nonempty_win(4),
        "partition114": gen_partition_wvg((1, 1, 4))[0],
    }


GENERATORS: dict[str, tuple[int, Callable]] = {
    "uniform": (3, gen_uniform),
    "projective_plane": (1, gen_projective_plane),
    "anonymous_majority": (1, gen_anonymous_majority),
    "all_nonempty_win": (1, gen_all_nonempty_win),
    "tight_two_approx": (1, tight_two_approx),
}


def generate(kind: str, params) -> Game:
    """Build a game by generator name.

    ``partition_reduction`` takes any number of integers and ``fixture`` a
    fixture name; the other kinds take a fixed number of integers.
    """
    params = list(params)
    if kind == "fixture":
        table = fixtures()
        if len(params) != 1 or params[0] not in table:
            raise DomainError(f"fixture takes one of: {', '.join(sorted(table))}")
        return table[params[0]]
    try:
        params = [int(x) for x in params]
    except ValueError:
        raise DomainError(f"{kind} parameters must be integers") from None
    if kind == "partition_reduction":
        return gen_partition_wvg(params)[0]
    if kind not in GENERATORS:
        raise DomainError(f"unknown generator {kind!r}")
    arity, fn = GENERATORS[kind]
    if len(params) != arity:
        raise DomainError(f"{kind} takes {arity} integer parameter(s), got {len(params)}")
    return fn(*params)
