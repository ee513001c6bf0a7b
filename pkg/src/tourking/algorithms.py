"""Constructive king finders.

* :func:`find_king_inductive` removes one vertex, finds a king of the rest
  recursively, and keeps it if it also reaches the removed vertex.
* :func:`find_co_king` reverses and swaps the two rounds, then looks for an
  ordinary king.
* :func:`find_rainbow_king` repeatedly deletes a vertex of largest in-degree
  in either colour; the last survivor is a rainbow king.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bits import full_mask, iter_bits, lowest_bit, popcount
from .reach import (
    KingCertificate,
    NoKingError,
    ReachWitness,
    WitnessKind,
    _check_sizes,
    find_king_brute,
)
from .tournament import Tournament, reverse

RED = "red"
BLUE = "blue"


@dataclass(frozen=True)
class TraceStep:
    excluded: int
    candidate: int
    reached_excluded: bool


@dataclass
class ProofTrace:
    """Top-level attempts of :func:`find_king_inductive`.

    Each step removed ``excluded``, found ``candidate`` as a king of what was
    left, and recorded whether ``candidate`` also reaches ``excluded``.
    ``depth`` is the deepest recursion level visited (0 for the base case).
    """

    steps: list[TraceStep] = field(default_factory=list)
    depth: int = 0


def find_king_inductive(t1: Tournament, t2: Tournament) -> tuple[int, ProofTrace]:
    _check_sizes(t1, t2)
    r1, r2, c2 = t1.rows, t2.rows, t2.cols
    memo: dict[int, int] = {}
    trace = ProofTrace()

    def reaches_within(active: int, i: int, j: int) -> bool:
        return bool(
            i == j or (r1[i] | r2[i]) >> j & 1 or r1[i] & active & c2[j]
        )

    def brute(active: int) -> int:
        for i in iter_bits(active):
            acc = (1 << i) | r1[i] | r2[i]
            for k in iter_bits(r1[i] & active):
                acc |= r2[k]
            if acc & active == active:
                return i
        raise NoKingError(f"no king on vertex subset {active:#x}", t1, t2)

    def solve(active: int, depth: int) -> int:
        king = memo.get(active)
        if king is not None:
            return king
        if depth > trace.depth:
            trace.depth = depth
        if popcount(active) <= 3:
            king = brute(active)
        else:
            order = sorted(iter_bits(active), key=lambda j: (popcount(r2[j] & active), j))
            for j in order:
                i = solve(active ^ (1 << j), depth + 1)
                ok = reaches_within(active, i, j)
                if depth == 0:
                    trace.steps.append(TraceStep(j, i, ok))
                if ok:
                    king = i
                    break
            else:
                raise NoKingError(f"every exclusion failed on subset {active:#x}", t1, t2)
        memo[active] = king
        return king

    return solve(full_mask(t1.n), 0), trace


def dual_transform(t1: Tournament, t2: Tournament) -> tuple[Tournament, Tournament]:
    """Swap the rounds and reverse every edge; ``i => j`` becomes ``j => i``."""
    _check_sizes(t1, t2)
    return reverse(t2), reverse(t1)


_DUAL_KIND = {
    WitnessKind.SAME: WitnessKind.SAME,
    WitnessKind.EDGE1: WitnessKind.EDGE2,
    WitnessKind.EDGE2: WitnessKind.EDGE1,
    WitnessKind.TWO_STEP: WitnessKind.TWO_STEP,
}


def find_co_king(t1: Tournament, t2: Tournament) -> tuple[int, KingCertificate]:
    """A vertex reached by everyone, with witnesses ``i => mu`` in the original rounds."""
    cert = find_king_brute(*dual_transform(t1, t2))
    # mu -> k in reverse(t2) is k -> mu in t2; k -> i in reverse(t1) is i -> k in t1
    witnesses = {
        i: ReachWitness(_DUAL_KIND[w.kind], w.via) for i, w in cert.witnesses.items()
    }
    return cert.king, KingCertificate(cert.king, witnesses, co=True)


def rainbow_pivots(tr: Tournament, tb: Tournament) -> tuple[int, list[tuple[int, str]]]:
    """Run the max-in-degree deletion and return the survivor and the deleted ``(vertex, colour)`` sequence.

    Ties go to red before blue, then to the smaller vertex.
    """
    _check_sizes(tr, tb)
    active = full_mask(tr.n)
    pivots = []
    while active & (active - 1):
        best = -1
        pick = (-1, RED)
        for colour, cols in ((RED, tr.cols), (BLUE, tb.cols)):
            for v in iter_bits(active):
                d = popcount(cols[v] & active)
                if d > best:
                    best = d
                    pick = (v, colour)
        pivots.append(pick)
        active ^= 1 << pick[0]
    return lowest_bit(active), pivots


def find_rainbow_king(tr: Tournament, tb: Tournament) -> int:
    return rainbow_pivots(tr, tb)[0]
