"""Coalitional games, coalition structures and payoff vectors.

Coalitions are plain ``int`` bit masks: player ``i`` (0-based) belongs to
coalition ``c`` iff ``c >> i & 1``.  All values are exact
:class:`fractions.Fraction` instances.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

from .errors import DomainError, MalformedInputError

ZERO = Fraction(0)
ONE = Fraction(1)

SuperImputation = tuple  # tuple[Fraction, ...], one entry per player


def to_fraction(x) -> Fraction:
    """Convert ``x`` to an exact Fraction; floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, numbers.Rational):
        return Fraction(int(x.numerator), int(x.denominator))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInputError(f"not a rational number: {x!r}") from exc
    raise MalformedInputError(f"expected an exact rational, got {type(x).__name__} {x!r}")


# --- coalitions -----------------------------------------------------------

def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        if i < 0:
            raise MalformedInputError(f"negative player index {i}")
        mask |= 1 << i
    return mask


def members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def full_mask(n: int) -> int:
    return (1 << n) - 1


def lex_key(mask: int, n: int) -> int:
    """Sort key ordering coalitions lexicographically as bit strings b_0 b_1 ... b_{n-1}.

    Coalitions that leave out low-index players come first, so the empty
    coalition is the least element.
    """
    key = 0
    for i in members(mask):
        key |= 1 << (n - 1 - i)
    return key


def _check_mask(mask: int, n: int) -> None:
    if not isinstance(mask, numbers.Integral) or mask < 0 or mask >> n:
        raise MalformedInputError(f"coalition {mask!r} is not a subset of players 0..{n - 1}")


# --- games ------------------------------------------------------------------

@dataclass(frozen=True)
class WeightedVotingGame:
    """``[w_1, ..., w_n; q]``: a coalition wins iff its weight reaches the quota."""

    weights: tuple[int, ...]
    quota: int

    def __post_init__(self):
        weights = tuple(self.weights)
        for w in (*weights, self.quota):
            if isinstance(w, bool) or not isinstance(w, numbers.Integral):
                raise MalformedInputError(f"weights and quota must be integers, got {w!r}")
        weights = tuple(int(w) for w in weights)
        if not weights:
            raise MalformedInputError("a game needs at least one player")
        if any(w < 0 for w in weights) or self.quota < 0:
            raise MalformedInputError("weights and quota must be nonnegative")
        if sum(weights) < self.quota:
            raise DomainError(
                f"grand coalition loses: total weight {sum(weights)} < quota {self.quota}")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "quota", int(self.quota))

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    def weight(self, mask: int) -> int:
        return sum(self.weights[i] for i in members(mask))

    def wins(self, mask: int) -> bool:
        _check_mask(mask, self.n)
        return mask != 0 and self.weight(mask) >= self.quota

    def value(self, mask: int) -> Fraction:
        return ONE if self.wins(mask) else ZERO

    def __str__(self) -> str:
        return "[" + ", ".join(map(str, self.weights)) + f"; {self.quota}]"


@dataclass(frozen=True)
class TabularGame:
    """Game given by an explicit coalition -> value table.

    Unlisted coalitions are worth 0.  ``entries`` is normalised to a sorted
    tuple of ``(mask, value)`` pairs with zero values dropped, so equal games
    compare equal regardless of how they were built.
    """

    n: int
    entries: tuple[tuple[int, Fraction], ...] = ()

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, numbers.Integral) or self.n < 1:
            raise MalformedInputError(f"player count must be a positive integer, got {self.n!r}")
        raw = self.entries.items() if isinstance(self.entries, Mapping) else self.entries
        table: dict[int, Fraction] = {}
        for mask, value in raw:
            _check_mask(mask, self.n)
            value = to_fraction(value)
            if value < 0:
                raise MalformedInputError(f"negative value {value} for coalition {members(mask)}")
            if mask == 0 and value != 0:
                raise MalformedInputError("the empty coalition must have value 0")
            if mask in table:
                raise MalformedInputError(f"duplicate coalition {members(mask)}")
            table[int(mask)] = value
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(
            self, "entries", tuple(sorted((m, v) for m, v in table.items() if v != 0)))

    @cached_property
    def _table(self) -> dict[int, Fraction]:
        return dict(self.entries)

    def value(self, mask: int) -> Fraction:
        _check_mask(mask, self.n)
        return self._table.get(mask, ZERO)


@dataclass(frozen=True)
class AdjustedGame:
    """A base game whose values are raised by external supplements on some coalitions."""

    base: object
    supplements: tuple[tuple[int, Fraction], ...]

    @property
    def n(self) -> int:
        return self.base.n

    @cached_property
    def _extra(self) -> dict[int, Fraction]:
        return dict(self.supplements)

    def value(self, mask: int) -> Fraction:
        return self.base.value(mask) + self._extra.get(mask, ZERO)


Game = Union[WeightedVotingGame, TabularGame, AdjustedGame]


@dataclass(frozen=True)
class CoalitionStructure:
    """Partition of the players ``0..n-1`` into disjoint nonempty coalitions."""

    n: int
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        seen = 0
        for p in parts:
            _check_mask(p, self.n)
            if p == 0:
                raise MalformedInputError("coalition structure has an empty part")
            if seen & p:
                raise MalformedInputError("coalition structure parts overlap")
            seen |= p
        if seen != full_mask(self.n):
            raise MalformedInputError(
                f"coalition structure misses players {members(full_mask(self.n) & ~seen)}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_lists(cls, n: int, parts: Iterable[Iterable[int]]) -> "CoalitionStructure":
        return cls(n, tuple(mask_of(p) for p in parts))

    @classmethod
    def grand(cls, n: int) -> "CoalitionStructure":
        return cls(n, (full_mask(n),))

    def canonical(self) -> "CoalitionStructure":
        """Same partition with parts ordered by their smallest member."""
        return CoalitionStructure(self.n, tuple(sorted(self.parts, key=lambda m: m & -m)))

    def as_lists(self) -> list[tuple[int, ...]]:
        return [members(p) for p in self.parts]

    def __len__(self) -> int:
        return len(self.parts)


# --- payoffs -------------------------------------------------------------------

def as_super_imputation(values: Iterable, n: int | None = None) -> SuperImputation:
    p = tuple(to_fraction(v) for v in values)
    if n is not None and len(p) != n:
        raise MalformedInputError(f"payoff vector has {len(p)} entries, game has {n} players")
    if any(x < 0 for x in p):
        raise DomainError("payoffs must be nonnegative")
    return p


def payoff_of(p: Sequence[Fraction], mask: int) -> Fraction:
    return sum((p[i] for i in members(mask)), ZERO)


# --- operations ------------------------------------------------------------------

def coalition_value(game: Game, c: int) -> Fraction:
    return game.value(c)


def cs_value(game: Game, cs: CoalitionStructure) -> Fraction:
    if cs.n != game.n:
        raise MalformedInputError(f"structure over {cs.n} players, game has {game.n}")
    return sum((game.value(part) for part in cs.parts), ZERO)


def adjust_game(game: Game, delta) -> AdjustedGame:
    """``G(delta)``: the grand coalition's value is raised by ``delta``."""
    delta = to_fraction(delta)
    if delta < 0:
        raise DomainError(f"supplement must be nonnegative, got {delta}")
    return AdjustedGame(game, ((full_mask(game.n), delta),))


def adjust_game_cs(game: Game, cs: CoalitionStructure, deltas: Sequence) -> AdjustedGame:
    if cs.n != game.n:
        raise MalformedInputError(f"structure over {cs.n} players, game has {game.n}")
    deltas = [to_fraction(d) for d in deltas]
    if len(deltas) != len(cs.parts):
        raise DomainError(f"{len(deltas)} supplements for {len(cs.parts)} parts")
    if any(d < 0 for d in deltas):
        raise DomainError("supplements must be nonnegative")
    return AdjustedGame(game, tuple(zip(cs.parts, deltas)))


def is_imputation(game: Game, cs: CoalitionStructure, p: Sequence) -> bool:
    """Whether ``p`` splits every part's value exactly among its members.

    For the single-part structure the individual-rationality condition
    ``p_i >= v({i})`` of the grand-coalition definition is also enforced.
    """
    p = tuple(to_fraction(x) for x in p)
    if len(p) != game.n or any(x < 0 for x in p):
        return False
    if any(payoff_of(p, part) != game.value(part) for part in cs.parts):
        return False
    if len(cs.parts) == 1:
        return all(p[i] >= game.value(1 << i) for i in range(game.n))
    return True


def to_tabular(game: Game) -> TabularGame:
    """Explicit table of any game (2^n evaluations)."""
    return TabularGame(game.n, {m: game.value(m) for m in range(1, 1 << game.n)})
