import json

import pytest

from conftest import brute_kings, brute_rainbow_kings
from tourking import verify
from tourking.tournament import all_tournaments, from_edges, from_index, rotational, transitive
from tourking.verify import (
    CHECKS,
    ClaimKind,
    FailureWitness,
    GateError,
    HarnessError,
    SearchResult,
    VerificationReport,
    check_landau,
    exhaustive_verify,
    random_verify,
    sample_seeds,
    search_order_sensitivity,
)


class TestExhaustive:
    def test_forward_n3(self):
        r = exhaustive_verify(3, ClaimKind.FORWARD_KING_EXISTS)
        assert (r.instances_checked, r.failures) == (64, 0)

    def test_forward_n2(self):
        r = exhaustive_verify(2, ClaimKind.FORWARD_KING_EXISTS)
        assert (r.instances_checked, r.failures) == (4, 0)

    def test_equivalence_n3(self):
        r = exhaustive_verify(3, ClaimKind.REACH_BLOCKED_EQUIVALENCE)
        assert (r.instances_checked, r.failures) == (64, 0)

    @pytest.mark.parametrize("claim", list(ClaimKind))
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_counts(self, claim, n):
        r = exhaustive_verify(n, claim)
        bits = n * (n - 1) // 2
        assert r.instances_checked == (1 << bits if claim.single else 1 << (2 * bits))
        assert r.ok and r.mode == "exhaustive"

    def test_gate(self):
        with pytest.raises(GateError):
            exhaustive_verify(6, ClaimKind.FORWARD_KING_EXISTS)
        with pytest.raises(GateError):
            exhaustive_verify(7, ClaimKind.FORWARD_KING_EXISTS, allow_long=True)

    def test_workers_do_not_change_the_report(self):
        for claim in (ClaimKind.FORWARD_KING_EXISTS, ClaimKind.LANDAU_SPECIAL_CASE):
            a = exhaustive_verify(4, claim, workers=1)
            b = exhaustive_verify(4, claim, workers=3)
            assert a.to_text(timing=False) == b.to_text(timing=False)


class TestRandom:
    def test_deterministic(self):
        a = random_verify(12, 300, 7, ClaimKind.CO_KING_EXISTS)
        b = random_verify(12, 300, 7, ClaimKind.CO_KING_EXISTS)
        assert a.to_text(timing=False) == b.to_text(timing=False)
        assert a.seed == 7 and a.instances_checked == 300 and a.ok

    def test_workers(self):
        a = random_verify(9, 101, 3, ClaimKind.INDUCTIVE_FINDER_SOUND, workers=1)
        b = random_verify(9, 101, 3, ClaimKind.INDUCTIVE_FINDER_SOUND, workers=4)
        assert a.to_json(timing=False) == b.to_json(timing=False)

    def test_sample_seeds_depend_only_on_seed_and_index(self):
        assert sample_seeds(7, 12) == sample_seeds(7, 12)
        assert sample_seeds(7, 12) != sample_seeds(7, 13)
        assert sample_seeds(7, 12) != sample_seeds(8, 12)
        s1, s2 = sample_seeds(7, 0)
        assert s1 != s2

    def test_bad_samples(self):
        with pytest.raises(ValueError):
            random_verify(5, 0, 1, ClaimKind.FORWARD_KING_EXISTS)


class TestRecheck:
    def test_false_alarm_raises(self, monkeypatch):
        recheck = CHECKS[ClaimKind.FORWARD_KING_EXISTS][1]
        monkeypatch.setitem(CHECKS, ClaimKind.FORWARD_KING_EXISTS, (lambda a, b: "boom", recheck))
        with pytest.raises(HarnessError):
            exhaustive_verify(2, ClaimKind.FORWARD_KING_EXISTS)

    def test_confirmed_failure_is_reported_with_codes(self, monkeypatch):
        def check(a, b):
            return "flagged" if verify.to_index(a) == 1 else None

        monkeypatch.setitem(CHECKS, ClaimKind.FORWARD_KING_EXISTS, (check, lambda a, b: True))
        r = exhaustive_verify(2, ClaimKind.FORWARD_KING_EXISTS, workers=2)
        assert r.failures == 2
        assert r.failure_witnesses == [FailureWitness(1, 0, "flagged"), FailureWitness(1, 1, "flagged")]

    def test_oracle_rechecks_agree_with_checkers_on_n3(self, pairs3):
        for claim, (check, recheck) in CHECKS.items():
            for t1, t2 in pairs3[::5]:
                t2 = None if claim.single else t2
                assert check(t1, t2) is None
                assert not recheck(t1, t2)


class TestReports:
    def sample(self):
        return VerificationReport(
            ClaimKind.SIMULATOR_AGREEMENT,
            4,
            "random",
            10,
            [FailureWitness(0x3F, 0x1, "simulator kings [0] != forward kings [0, 1]"), FailureWitness(2, 5, "x y")],
            seed=99,
            wall_time=1.5,
        )

    def test_text_round_trip(self):
        r = self.sample()
        back = VerificationReport.from_text(r.to_text())
        assert back == r
        assert "witness: 3f 1 simulator kings" in r.to_text()
        assert "wall_time_s" not in r.to_text(timing=False)

    def test_json_round_trip(self):
        r = self.sample()
        assert VerificationReport.from_json(r.to_json()) == r
        d = json.loads(r.to_json(timing=False))
        assert "timing" not in d and d["failures"] == 2

    def test_single_claim_round_trip(self):
        r = VerificationReport(ClaimKind.LANDAU_SPECIAL_CASE, 5, "exhaustive", 1024, [FailureWitness(7, None, "d")])
        assert VerificationReport.from_text(r.to_text()) == r
        assert VerificationReport.from_json(r.to_json()) == r

    def test_inconsistent_count_rejected(self):
        d = json.loads(self.sample().to_json())
        d["failures"] = 5
        with pytest.raises(ValueError):
            VerificationReport.from_dict(d)


class TestLandau:
    def test_cycle(self):
        assert check_landau(rotational(3))

    def test_transitive(self):
        assert all(check_landau(transitive(n)) for n in range(1, 8))

    def test_all_n5(self):
        ts = all_tournaments(5)
        assert len(ts) == 1024
        for t in ts:
            assert check_landau(t)
            top = max(t.out_degrees())
            kings = brute_kings(t, t)
            assert all(v in kings for v in range(5) if t.out_degree(v) == top)


class TestSearch:
    def test_n3_witness_validates(self):
        res = search_order_sensitivity(3)
        assert res.status == "found"
        t1, t2 = from_index(3, res.t1), from_index(3, res.t2)
        assert res.vertex in brute_rainbow_kings(t1, t2)
        assert res.vertex not in brute_kings(t1, t2)

    def test_first_hit_is_first_in_order(self):
        res = search_order_sensitivity(3)
        ts = all_tournaments(3)
        first = next(
            (c1, c2)
            for c1 in range(8)
            for c2 in range(8)
            if brute_rainbow_kings(ts[c1], ts[c2]) - brute_kings(ts[c1], ts[c2])
        )
        assert (res.t1, res.t2) == first
        assert res.instances_scanned == first[0] * 8 + first[1] + 1

    def test_finder_never_separates_at_n3(self):
        res = search_order_sensitivity(3, via_finder=True)
        assert res.status == "none" and res.complete and res.instances_scanned == 64

    def test_finder_separates_at_n4(self):
        res = search_order_sensitivity(4, via_finder=True)
        assert res.status == "found"
        t1, t2 = from_index(4, res.t1), from_index(4, res.t2)
        assert res.vertex not in brute_kings(t1, t2)
        assert res.vertex in brute_rainbow_kings(t1, t2)

    def test_small_n_none(self):
        for n in (1, 2):
            res = search_order_sensitivity(n)
            assert res.status == "none" and res.instances_scanned == 1 << (n * (n - 1))

    def test_incomplete(self):
        res = search_order_sensitivity(4, via_finder=True, max_instances=10)
        assert res.status == "incomplete" and not res.complete

    def test_json_round_trip(self):
        res = search_order_sensitivity(4, via_finder=True)
        assert SearchResult.from_json(res.to_json()) == res
        assert "witness: " in res.to_text()

    def test_gate(self):
        with pytest.raises(GateError):
            search_order_sensitivity(6)
