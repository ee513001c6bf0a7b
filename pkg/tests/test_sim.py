import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_reaches
from tourking.reach import forward_kings
from tourking.sim import (
    KnowledgeState,
    RoundSchedule,
    initial_state,
    kings_after,
    parse_schedule,
    run,
    serialize_schedule,
    step,
)
from tourking.tournament import TournamentError, from_edges, transitive, uniform

CYCLE = from_edges(3, [(0, 1), (1, 2), (2, 0)])


def naive_step(know, t):
    """know[i][j]: processor j holds item i."""
    n = t.n
    new = [row[:] for row in know]
    for i in range(n):
        for a, b in t.edges():
            if know[i][a]:
                new[i][b] = True
    return new


class TestInitial:
    def test_identity(self):
        assert initial_state(3).matrix() == [[i == j for j in range(3)] for i in range(3)]

    def test_single(self):
        assert initial_state(1).matrix() == [[True]]
        assert kings_after(initial_state(1)) == {0}

    def test_zero(self):
        with pytest.raises(ValueError):
            initial_state(0)


class TestStep:
    def test_transitive_one_round(self):
        k = step(initial_state(3), transitive(3)).matrix()
        assert [k[i][2] for i in range(3)] == [True, True, True]
        assert [k[i][0] for i in range(3)] == [True, False, False]

    def test_full_state_is_fixed(self):
        full = KnowledgeState(5, (0b11111,) * 5)
        assert step(full, uniform(5, 3)) == full

    def test_cycle_two_rounds_everyone_knows_everything(self):
        k = naive_step(naive_step(initial_state(3).matrix(), CYCLE), CYCLE)
        assert all(all(row) for row in k)
        assert all(all(row) for row in run(RoundSchedule([CYCLE, CYCLE]), 2).matrix())

    def test_synchronous(self):
        # 0 -> 1 -> 2: after one round item 0 must not have hopped on to 2
        k = step(initial_state(3), CYCLE)
        assert k.knows(0, 1) and not k.knows(0, 2)

    @pytest.mark.parametrize("n", [5, 64, 100])
    def test_matches_naive(self, n):
        state = initial_state(n)
        know = state.matrix()
        for s in range(3):
            t = uniform(n, s)
            state = step(state, t)
            know = naive_step(know, t)
            assert state.matrix() == know

    def test_size_mismatch(self):
        with pytest.raises(TournamentError):
            step(initial_state(3), transitive(4))


class TestRun:
    def test_zero_rounds(self):
        assert run(RoundSchedule([CYCLE]), 0) == initial_state(3)

    def test_one_round(self):
        assert run(RoundSchedule([transitive(3)]), 1) == step(initial_state(3), transitive(3))

    def test_too_many_rounds(self):
        with pytest.raises(ValueError):
            run(RoundSchedule([CYCLE]), 2)

    def test_two_rounds_is_the_reach_relation_n3(self, pairs3):
        for t1, t2 in pairs3:
            k = run(RoundSchedule([t1, t2]), 2)
            for v in range(3):
                for j in range(3):
                    assert k.knows(v, j) == brute_reaches(t1, t2, v, j)
            assert kings_after(k) == forward_kings(t1, t2)
            assert kings_after(k)

    def test_mixed_sizes_rejected(self):
        with pytest.raises(TournamentError):
            RoundSchedule([CYCLE, transitive(4)])


class TestKingsAfter:
    def test_full(self):
        assert kings_after(KnowledgeState(4, (15,) * 4)) == {0, 1, 2, 3}

    def test_identity(self):
        for n in range(2, 6):
            assert kings_after(initial_state(n)) == set()

    def test_two_round_agreement_n64(self):
        for s in range(200):
            t1, t2 = uniform(64, s), uniform(64, s + 321)
            assert kings_after(run(RoundSchedule([t1, t2]), 2)) == forward_kings(t1, t2)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 20), st.lists(st.integers(0, 2**32), min_size=1, max_size=5))
def test_monotone_and_diagonal(n, seeds):
    schedule = RoundSchedule([uniform(n, s) for s in seeds])
    prev = run(schedule, 0)
    for r in range(1, len(schedule) + 1):
        cur = run(schedule, r)
        assert all(p & ~c == 0 for p, c in zip(prev.holders, cur.holders))
        assert all(cur.knows(i, i) for i in range(n))
        assert kings_after(prev) <= kings_after(cur)
        if r >= 2:
            assert kings_after(cur)
        prev = cur


class TestScheduleText:
    def test_round_trip(self):
        s = RoundSchedule([uniform(5, 1), transitive(5), uniform(5, 2)])
        assert parse_schedule(serialize_schedule(s)) == s
        assert parse_schedule(serialize_schedule(s, "hex")) == s

    def test_mixed_forms(self):
        text = "2\n3\n011\n001\n000\n3\nhex:0\n"
        s = parse_schedule(text)
        assert s.rounds[0] == transitive(3) and len(s) == 2

    def test_errors(self):
        for bad in ["", "x\n", "2\n3\n011\n001\n000\n", "1\n3\nhex:0\n4\nhex:00\n"]:
            with pytest.raises(TournamentError):
                parse_schedule(bad)
