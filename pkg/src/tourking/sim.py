"""Synchronous item propagation over a schedule of tournaments.

Every processor starts with its own item.  In round ``s`` each processor
forwards everything it held at the start of the round along its out-edges in
the round-``s`` tournament; items received during a round are forwarded no
earlier than the next round.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .bits import VertexSet, bool_product, full_mask
from .tournament import Tournament, TournamentError, parse_lines, serialize


@dataclass(frozen=True)
class RoundSchedule:
    rounds: tuple[Tournament, ...]

    def __init__(self, rounds: Sequence[Tournament]) -> None:
        rounds = tuple(rounds)
        if rounds and len({t.n for t in rounds}) != 1:
            raise TournamentError("all tournaments in a schedule must have the same vertex count")
        object.__setattr__(self, "rounds", rounds)

    def __len__(self) -> int:
        return len(self.rounds)

    @property
    def n(self) -> int:
        if not self.rounds:
            raise TournamentError("empty schedule has no vertex count")
        return self.rounds[0].n


@dataclass(frozen=True)
class KnowledgeState:
    """``holders[i]`` is the bitmask of processors currently holding item ``i``.

    Equivalently ``know[i][j]`` is bit ``j`` of ``holders[i]``.
    """

    n: int
    holders: tuple[int, ...]

    def knows(self, item: int, processor: int) -> bool:
        return bool(self.holders[item] >> processor & 1)

    def matrix(self) -> list[list[bool]]:
        return [[bool(h >> j & 1) for j in range(self.n)] for h in self.holders]


def initial_state(n: int) -> KnowledgeState:
    if n < 1:
        raise ValueError(f"need at least one processor, got n={n}")
    return KnowledgeState(n, tuple(1 << i for i in range(n)))


def step(state: KnowledgeState, t: Tournament) -> KnowledgeState:
    """One synchronous round: each holder of an item passes it to all its out-neighbours."""
    if state.n != t.n:
        raise TournamentError(f"size mismatch: state has {state.n} processors, tournament {t.n}")
    sent = bool_product(state.holders, t.rows, t.n)
    return KnowledgeState(state.n, tuple(h | s for h, s in zip(state.holders, sent)))


def run(schedule: RoundSchedule, rounds: int) -> KnowledgeState:
    if rounds < 0 or rounds > len(schedule):
        raise ValueError(f"cannot run {rounds} rounds of a {len(schedule)}-round schedule")
    state = initial_state(schedule.n)
    for t in schedule.rounds[:rounds]:
        state = step(state, t)
    return state


def kings_after(state: KnowledgeState) -> VertexSet:
    """Processors whose own item has reached everybody."""
    full = full_mask(state.n)
    return VertexSet(sum(1 << i for i, h in enumerate(state.holders) if h == full), state.n)


def parse_schedule(text: str) -> RoundSchedule:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines or not lines[0].strip().isdigit():
        raise TournamentError("malformed schedule header: expected the round count")
    count = int(lines[0].strip())
    pos = 1
    rounds = []
    for _ in range(count):
        t, pos = parse_lines(lines, pos)
        rounds.append(t)
    if pos != len(lines):
        raise TournamentError(f"unexpected content after {count} rounds at line {pos + 1}")
    return RoundSchedule(rounds)


def serialize_schedule(schedule: RoundSchedule, form: str = "matrix") -> str:
    return f"{len(schedule)}\n" + "".join(serialize(t, form) for t in schedule.rounds)
