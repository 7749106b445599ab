"""Text format for games, payoff vectors and coalition structures.

Weighted voting game::

    wvg
    weights 8 8 9 9 1
    quota 10

Tabular game (1-based players, unlisted coalitions are worth 0)::

    tabular 3
    coalition 1,2 value 1
    coalition 1,2,3 value 3/2

``#`` starts a comment; blank lines are ignored.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable

from .errors import CosError, MalformedInputError
from .game import CoalitionStructure, Game, TabularGame, WeightedVotingGame, mask_of, members

TABULAR_PARSE_CAP = 20

_RATIONAL = re.compile(r"^\d+(?:/\d+)?$")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_vector(p: Iterable[Fraction], sep: str = " ") -> str:
    return sep.join(format_rational(x) for x in p)


def format_coalition(mask: int) -> str:
    """1-based comma list; the empty coalition is ``-``."""
    return ",".join(str(i + 1) for i in members(mask)) or "-"


def format_structure(cs: CoalitionStructure) -> str:
    return "|".join(format_coalition(p) for p in cs.parts)


def parse_rational(text: str) -> Fraction:
    """Nonnegative integer or ``a/b``; decimals are refused to keep inputs exact."""
    text = text.strip()
    if not _RATIONAL.match(text):
        raise MalformedInputError(f"expected a nonnegative rational like 3 or 1/2, got {text!r}")
    if "/" in text and int(text.split("/")[1]) == 0:
        raise MalformedInputError(f"zero denominator in {text!r}")
    return Fraction(text)


def parse_vector(text: str) -> tuple[Fraction, ...]:
    parts = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    if not parts:
        raise MalformedInputError("empty payoff vector")
    return tuple(parse_rational(t) for t in parts)


def parse_coalition(text: str, n: int) -> int:
    items = [t.strip() for t in text.split(",")]
    players = []
    for t in items:
        if not t.isdigit():
            raise MalformedInputError(f"bad player index {t!r}")
        i = int(t)
        if not 1 <= i <= n:
            raise MalformedInputError(f"player {i} out of range 1..{n}")
        players.append(i - 1)
    if len(set(players)) != len(players):
        raise MalformedInputError(f"player repeated in coalition {text!r}")
    return mask_of(players)


def parse_structure(text: str, n: int) -> CoalitionStructure:
    """``"1,2|3"`` with 1-based players; the parts must partition all ``n`` players."""
    parts = [parse_coalition(chunk, n) for chunk in text.split("|")]
    return CoalitionStructure(n, tuple(parts))


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_game(text: str) -> Game:
    lines = list(_content_lines(text))
    if not lines:
        raise MalformedInputError("empty game file")
    lineno, head = lines[0]
    try:
        if head == ["wvg"]:
            return _parse_wvg(lines[1:], lineno)
        if head[0] == "tabular":
            return _parse_tabular(lines, lineno)
    except CosError as exc:
        if str(exc).startswith("line "):
            raise
        raise type(exc)(f"line {lineno}: {exc}") from None
    raise MalformedInputError(f"line {lineno}: expected 'wvg' or 'tabular N', got {' '.join(head)!r}")


def _parse_int(token: str, lineno: int, what: str) -> int:
    if not token.isdigit():
        raise MalformedInputError(f"line {lineno}: {what} must be a nonnegative integer, got {token!r}")
    return int(token)


def _parse_wvg(lines, first: int) -> WeightedVotingGame:
    weights = quota = None
    last = first
    for lineno, tokens in lines:
        last = lineno
        key = tokens[0]
        if key == "weights" and weights is None:
            if len(tokens) < 2:
                raise MalformedInputError(f"line {lineno}: 'weights' needs at least one value")
            weights = tuple(_parse_int(t, lineno, "a weight") for t in tokens[1:])
        elif key == "quota" and quota is None:
            if len(tokens) != 2:
                raise MalformedInputError(f"line {lineno}: expected 'quota q'")
            quota = _parse_int(tokens[1], lineno, "the quota")
        else:
            raise MalformedInputError(f"line {lineno}: unexpected {' '.join(tokens)!r}")
    if weights is None or quota is None:
        raise MalformedInputError(f"line {last}: a wvg needs both 'weights' and 'quota' lines")
    try:
        return WeightedVotingGame(weights, quota)
    except CosError as exc:
        raise type(exc)(f"line {last}: {exc}") from None


def _parse_tabular(lines, first: int) -> TabularGame:
    _, head = lines[0]
    if len(head) != 2:
        raise MalformedInputError(f"line {first}: expected 'tabular N'")
    n = _parse_int(head[1], first, "the player count")
    if n < 1:
        raise MalformedInputError(f"line {first}: need at least one player")
    if n > TABULAR_PARSE_CAP:
        raise MalformedInputError(f"line {first}: tabular games are limited to {TABULAR_PARSE_CAP} players")
    entries: dict[int, Fraction] = {}
    for lineno, tokens in lines[1:]:
        if len(tokens) != 4 or tokens[0] != "coalition" or tokens[2] != "value":
            raise MalformedInputError(f"line {lineno}: expected 'coalition i,j,... value r'")
        try:
            mask = parse_coalition(tokens[1], n)
            value = parse_rational(tokens[3])
        except MalformedInputError as exc:
            raise MalformedInputError(f"line {lineno}: {exc}") from None
        if mask in entries:
            raise MalformedInputError(f"line {lineno}: duplicate coalition {tokens[1]}")
        entries[mask] = value
    return TabularGame(n, entries)


def serialize_game(game: Game) -> str:
    if isinstance(game, WeightedVotingGame):
        return f"wvg\nweights {' '.join(map(str, game.weights))}\nquota {game.quota}\n"
    if isinstance(game, TabularGame):
        out = [f"tabular {game.n}"]
        for mask, value in game.entries:
            out.append(f"coalition {format_coalition(mask)} value {format_rational(value)}")
        return "\n".join(out) + "\n"
    raise MalformedInputError(f"cannot serialise {type(game).__name__}")


def read_game(path) -> Game:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise MalformedInputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_game(text)
