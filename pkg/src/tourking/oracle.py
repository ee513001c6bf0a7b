"""Slow reference predicates evaluated straight from adjacency matrices.

Nothing here touches the bitset rows or the fast paths in :mod:`tourking.reach`;
the verification harness uses these to re-check a failure before reporting it.
"""

from __future__ import annotations

from .tournament import Tournament


def reaches(t1: Tournament, t2: Tournament, i: int, j: int) -> bool:
    a, b = t1.matrix(), t2.matrix()
    return _reaches(a, b, i, j)


def _reaches(a, b, i: int, j: int) -> bool:
    if i == j or a[i][j] or b[i][j]:
        return True
    return any(a[i][k] and b[k][j] for k in range(len(a)))


def _rainbow(a, b, i: int, j: int) -> bool:
    if _reaches(a, b, i, j):
        return True
    return any(b[i][k] and a[k][j] for k in range(len(a)))


def reach_matrix(t1: Tournament, t2: Tournament) -> list[list[bool]]:
    a, b = t1.matrix(), t2.matrix()
    n = t1.n
    return [[_reaches(a, b, i, j) for j in range(n)] for i in range(n)]


def forward_kings(t1: Tournament, t2: Tournament) -> set[int]:
    m = reach_matrix(t1, t2)
    return {v for v, row in enumerate(m) if all(row)}


def co_kings(t1: Tournament, t2: Tournament) -> set[int]:
    m = reach_matrix(t1, t2)
    n = t1.n
    return {mu for mu in range(n) if all(m[i][mu] for i in range(n))}


def rainbow_kings(tr: Tournament, tb: Tournament) -> set[int]:
    a, b = tr.matrix(), tb.matrix()
    n = tr.n
    return {v for v in range(n) if all(_rainbow(a, b, v, j) for j in range(n))}


def blocked(t1: Tournament, t2: Tournament, i: int, j: int) -> bool:
    a, b = t1.matrix(), t2.matrix()
    n = t1.n
    out1 = {k for k in range(n) if a[i][k]}
    out2 = {k for k in range(n) if b[j][k]}
    return i != j and a[j][i] and b[j][i] and out1 < out2


def simulate(rounds: list[Tournament]) -> list[set[int]]:
    """Item-by-item simulation; returns, per item, the set of holders."""
    n = rounds[0].n
    holders = [{i} for i in range(n)]
    for t in rounds:
        m = t.matrix()
        holders = [h | {j for i in h for j in range(n) if m[i][j]} for h in holders]
    return holders


def landau_holds(t: Tournament) -> bool:
    degs = [sum(row) for row in t.matrix()]
    top = max(degs)
    kings = forward_kings(t, t)
    return all(v in kings for v, d in enumerate(degs) if d == top)
