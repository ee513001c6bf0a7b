import itertools

import pytest

from tourking.tournament import Tournament, all_tournaments


def edge_set(t: Tournament) -> set[tuple[int, int]]:
    m = t.matrix()
    return {(i, j) for i in range(t.n) for j in range(t.n) if m[i][j]}


def brute_reaches(t1, t2, i, j) -> bool:
    """The four-clause definition, evaluated over explicit edge sets."""
    e1, e2 = edge_set(t1), edge_set(t2)
    return (
        i == j
        or (i, j) in e1
        or (i, j) in e2
        or any((i, k) in e1 and (k, j) in e2 for k in range(t1.n))
    )


def brute_rainbow(tr, tb, i, j) -> bool:
    er, eb = edge_set(tr), edge_set(tb)
    return (
        i == j
        or (i, j) in er
        or (i, j) in eb
        or any((i, k) in er and (k, j) in eb for k in range(tr.n))
        or any((i, k) in eb and (k, j) in er for k in range(tr.n))
    )


def brute_kings(t1, t2) -> set[int]:
    return {v for v in range(t1.n) if all(brute_reaches(t1, t2, v, j) for j in range(t1.n))}


def brute_co_kings(t1, t2) -> set[int]:
    return {m for m in range(t1.n) if all(brute_reaches(t1, t2, i, m) for i in range(t1.n))}


def brute_rainbow_kings(tr, tb) -> set[int]:
    return {v for v in range(tr.n) if all(brute_rainbow(tr, tb, v, j) for j in range(tr.n))}


def all_pairs(n):
    ts = all_tournaments(n)
    return list(itertools.product(ts, ts))


@pytest.fixture(scope="session")
def pairs3():
    return all_pairs(3)


# -- acceptance summary ------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
