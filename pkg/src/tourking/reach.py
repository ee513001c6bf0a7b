"""Two-round reachability between a pair of tournaments, its negated form, and king predicates.

Round one follows ``t1``, round two follows ``t2``.  Vertex ``i`` reaches
``j`` when ``i == j``, ``i -> j`` in either round, or ``i -> k`` in round one
and ``k -> j`` in round two.  Rainbow reachability additionally accepts a
round-two edge followed by a round-one edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .bits import VertexSet, full_mask, iter_bits, lowest_bit, popcount
from .tournament import Tournament, TournamentError, serialize


class NoKingError(AssertionError):
    """No king exists for an instance; this contradicts the two-round theorem."""

    def __init__(self, message: str, t1: Tournament, t2: Tournament) -> None:
        dump = f"{message}\n--- T1 ---\n{serialize(t1)}--- T2 ---\n{serialize(t2)}"
        super().__init__(dump)
        self.t1 = t1
        self.t2 = t2


class WitnessKind(Enum):
    SAME = "same"
    EDGE1 = "edge1"
    EDGE2 = "edge2"
    TWO_STEP = "two-step"


class RainbowKind(Enum):
    SAME = "same"
    RED_EDGE = "red-edge"
    BLUE_EDGE = "blue-edge"
    RED_BLUE = "red-blue"
    BLUE_RED = "blue-red"


@dataclass(frozen=True)
class ReachWitness:
    kind: WitnessKind
    via: int | None = None

    def __str__(self) -> str:
        return self.kind.value if self.via is None else f"{self.kind.value}({self.via})"


@dataclass(frozen=True)
class RainbowWitness:
    kind: RainbowKind
    via: int | None = None

    def __str__(self) -> str:
        return self.kind.value if self.via is None else f"{self.kind.value}({self.via})"


@dataclass(frozen=True)
class KingCertificate:
    """Evidence that ``king`` reaches every vertex (``co=False``) or is reached by every vertex (``co=True``).

    ``witnesses[v]`` explains ``king => v`` for a forward certificate and
    ``v => king`` for a co-king certificate.
    """

    king: int
    witnesses: dict[int, ReachWitness] = field(default_factory=dict)
    co: bool = False


def _check_sizes(t1: Tournament, t2: Tournament) -> None:
    if t1.n != t2.n:
        raise TournamentError(f"size mismatch: {t1.n} vs {t2.n} vertices")


def _check_vertex(t: Tournament, *vs: int) -> None:
    for v in vs:
        if not 0 <= v < t.n:
            raise TournamentError(f"vertex {v} out of range for n={t.n}")


def reaches(t1: Tournament, t2: Tournament, i: int, j: int) -> ReachWitness | None:
    """Witness for ``i => j``, or None.

    Priority: same vertex, round-one edge, round-two edge, then the two-step
    path through the smallest intermediate vertex.
    """
    _check_sizes(t1, t2)
    _check_vertex(t1, i, j)
    if i == j:
        return ReachWitness(WitnessKind.SAME)
    if t1.rows[i] >> j & 1:
        return ReachWitness(WitnessKind.EDGE1)
    if t2.rows[i] >> j & 1:
        return ReachWitness(WitnessKind.EDGE2)
    mids = t1.rows[i] & t2.cols[j]
    if mids:
        return ReachWitness(WitnessKind.TWO_STEP, lowest_bit(mids))
    return None


def blocked(t1: Tournament, t2: Tournament, i: int, j: int) -> bool:
    """The four-conjunct characterisation of ``i`` failing to reach ``j``.

    ``i != j``, ``j -> i`` in both rounds, and the round-one out-neighbourhood
    of ``i`` is a proper subset of the round-two out-neighbourhood of ``j``.
    """
    _check_sizes(t1, t2)
    _check_vertex(t1, i, j)
    if i == j:
        return False
    if not (t1.rows[j] >> i & 1 and t2.rows[j] >> i & 1):
        return False
    g1, g2 = t1.rows[i], t2.rows[j]
    return g1 & ~g2 == 0 and g1 != g2


def blocked_rows(t1: Tournament, t2: Tournament) -> list[int]:
    """``out[i]`` = mask of all ``j`` with ``blocked(t1, t2, i, j)``, by set algebra on rows."""
    _check_sizes(t1, t2)
    n = t1.n
    out = [0] * n
    r1, r2, c1, c2 = t1.rows, t2.rows, t1.cols, t2.cols
    for j in range(n):
        g2 = r2[j]
        # candidates i: j -> i in both rounds
        for i in iter_bits(r1[j] & r2[j]):
            g1 = r1[i]
            if g1 & ~g2 == 0 and g1 != g2:
                out[i] |= 1 << j
    return out


def reach_rows(t1: Tournament, t2: Tournament) -> list[int]:
    """``out[i]`` = mask of every ``j`` with ``i => j``.

    Row ``i`` is ``{i} | G1(i) | G2(i) | union of G2(k) over k in G1(i)``.
    """
    _check_sizes(t1, t2)
    r1, r2 = t1.rows, t2.rows
    out = []
    for i in range(t1.n):
        g1 = r1[i]
        acc = (1 << i) | g1 | r2[i]
        x = g1
        while x:
            low = x & -x
            acc |= r2[low.bit_length() - 1]
            x ^= low
        out.append(acc)
    return out


def forward_kings(t1: Tournament, t2: Tournament) -> VertexSet:
    full = full_mask(t1.n)
    rows = reach_rows(t1, t2)
    return VertexSet(sum(1 << i for i, r in enumerate(rows) if r == full), t1.n)


def co_kings(t1: Tournament, t2: Tournament) -> VertexSet:
    """Vertices reached by every vertex."""
    acc = full_mask(t1.n)
    for r in reach_rows(t1, t2):
        acc &= r
    return VertexSet(acc, t1.n)


def find_king_brute(t1: Tournament, t2: Tournament) -> KingCertificate:
    """Smallest-index king with a witness for every other vertex."""
    kings = forward_kings(t1, t2)
    if not kings:
        raise NoKingError("no forward king", t1, t2)
    king = kings.min()
    return certify(t1, t2, king)


def certify(t1: Tournament, t2: Tournament, king: int) -> KingCertificate:
    witnesses = {}
    for j in range(t1.n):
        if j == king:
            continue
        w = reaches(t1, t2, king, j)
        if w is None:
            raise ValueError(f"vertex {king} does not reach {j}; not a king")
        witnesses[j] = w
    return KingCertificate(king, witnesses)


def certify_co(t1: Tournament, t2: Tournament, king: int) -> KingCertificate:
    witnesses = {}
    for i in range(t1.n):
        if i == king:
            continue
        w = reaches(t1, t2, i, king)
        if w is None:
            raise ValueError(f"vertex {i} does not reach {king}; not a co-king")
        witnesses[i] = w
    return KingCertificate(king, witnesses, co=True)


def witness_holds(t1: Tournament, t2: Tournament, i: int, j: int, w: ReachWitness) -> bool:
    """Check one witness directly against the edge relations."""
    e1, e2 = t1.has_edge, t2.has_edge
    if w.kind is WitnessKind.SAME:
        return i == j
    if w.kind is WitnessKind.EDGE1:
        return e1(i, j)
    if w.kind is WitnessKind.EDGE2:
        return e2(i, j)
    k = w.via
    return k is not None and 0 <= k < t1.n and e1(i, k) and e2(k, j)


def validate_certificate(t1: Tournament, t2: Tournament, cert: KingCertificate) -> bool:
    others = set(range(t1.n)) - {cert.king}
    if set(cert.witnesses) != others:
        return False
    for v, w in cert.witnesses.items():
        src, dst = (v, cert.king) if cert.co else (cert.king, v)
        if not witness_holds(t1, t2, src, dst, w):
            return False
    return True


# -- rainbow (either colour order) ------------------------------------------


def rainbow_reaches(tr: Tournament, tb: Tournament, i: int, j: int) -> RainbowWitness | None:
    """Witness for a path of length <= 2 from ``i`` to ``j`` using both colours if it has two edges."""
    _check_sizes(tr, tb)
    _check_vertex(tr, i, j)
    if i == j:
        return RainbowWitness(RainbowKind.SAME)
    if tr.rows[i] >> j & 1:
        return RainbowWitness(RainbowKind.RED_EDGE)
    if tb.rows[i] >> j & 1:
        return RainbowWitness(RainbowKind.BLUE_EDGE)
    mids = tr.rows[i] & tb.cols[j]
    if mids:
        return RainbowWitness(RainbowKind.RED_BLUE, lowest_bit(mids))
    mids = tb.rows[i] & tr.cols[j]
    if mids:
        return RainbowWitness(RainbowKind.BLUE_RED, lowest_bit(mids))
    return None


def rainbow_witness_holds(tr: Tournament, tb: Tournament, i: int, j: int, w: RainbowWitness) -> bool:
    k = w.via
    if w.kind is RainbowKind.SAME:
        return i == j
    if w.kind is RainbowKind.RED_EDGE:
        return tr.has_edge(i, j)
    if w.kind is RainbowKind.BLUE_EDGE:
        return tb.has_edge(i, j)
    if k is None or not 0 <= k < tr.n:
        return False
    if w.kind is RainbowKind.RED_BLUE:
        return tr.has_edge(i, k) and tb.has_edge(k, j)
    return tb.has_edge(i, k) and tr.has_edge(k, j)


def rainbow_reach_rows(tr: Tournament, tb: Tournament) -> list[int]:
    _check_sizes(tr, tb)
    rr, rb = tr.rows, tb.rows
    out = []
    for i in range(tr.n):
        acc = (1 << i) | rr[i] | rb[i]
        for k in iter_bits(rr[i]):
            acc |= rb[k]
        for k in iter_bits(rb[i]):
            acc |= rr[k]
        out.append(acc)
    return out


def rainbow_kings(tr: Tournament, tb: Tournament) -> VertexSet:
    full = full_mask(tr.n)
    rows = rainbow_reach_rows(tr, tb)
    return VertexSet(sum(1 << i for i, r in enumerate(rows) if r == full), tr.n)


def out_degree_gap(t1: Tournament, t2: Tournament, i: int, j: int) -> int:
    """``|G2(j)| - |G1(i)|``; positive whenever ``blocked(t1, t2, i, j)``."""
    return popcount(t2.rows[j]) - popcount(t1.rows[i])
