"""Exhaustive and randomised checking of the king theorems over small or sampled instances.

Every claim has a fast per-instance checker built on the library and a slow
re-check built on :mod:`tourking.oracle`.  A failure is only reported when
the re-check agrees; disagreement means the harness itself is broken and
raises :class:`HarnessError`.
"""

from __future__ import annotations

import hashlib
import json
import multiprocessing
import time
from collections.abc import Callable
from dataclasses import asdict, dataclass, field
from enum import Enum

from . import oracle
from .bits import lowest_bit
from .algorithms import dual_transform, find_co_king, find_king_inductive, rainbow_pivots
from .reach import (
    blocked,
    co_kings,
    find_king_brute,
    forward_kings,
    out_degree_gap,
    rainbow_kings,
    reaches,
    validate_certificate,
)
from .sim import RoundSchedule, kings_after, run
from .tournament import Tournament, all_tournaments, from_index, num_pairs, to_index, uniform

DEFAULT_GATE = 5
LONG_GATE = 6


class ClaimKind(Enum):
    FORWARD_KING_EXISTS = "forward-king"
    CO_KING_EXISTS = "co-king"
    RAINBOW_KING_EXISTS = "rainbow-king"
    REACH_BLOCKED_EQUIVALENCE = "reach-blocked"
    SIMULATOR_AGREEMENT = "simulator"
    LANDAU_SPECIAL_CASE = "landau"
    INDUCTIVE_FINDER_SOUND = "inductive-finder"
    RAINBOW_FINDER_SOUND = "rainbow-finder"
    DUAL_TRANSFORM_SOUND = "dual-transform"

    @property
    def single(self) -> bool:
        """True for claims about one tournament rather than a pair."""
        return self is ClaimKind.LANDAU_SPECIAL_CASE


class HarnessError(RuntimeError):
    """A checker flagged an instance that the independent re-check accepts."""


class GateError(ValueError):
    pass


# -- per-instance checkers ---------------------------------------------------
# Each returns None on success or a short failure description.


def check_landau(t: Tournament) -> bool:
    """Every vertex of maximum out-degree is a king when both rounds use ``t``."""
    degs = t.out_degrees()
    top = max(degs)
    kings = forward_kings(t, t)
    return all(v in kings for v, d in enumerate(degs) if d == top)


def _forward(t1: Tournament, t2: Tournament) -> str | None:
    if not forward_kings(t1, t2):
        return "no forward king"
    if not validate_certificate(t1, t2, find_king_brute(t1, t2)):
        return "brute certificate does not validate"
    return None


def _co(t1: Tournament, t2: Tournament) -> str | None:
    co = co_kings(t1, t2)
    if not co:
        return "no co-king"
    if co != forward_kings(*dual_transform(t1, t2)):
        return "co-kings differ from forward kings of the dual instance"
    mu, cert = find_co_king(t1, t2)
    if mu not in co or not validate_certificate(t1, t2, cert):
        return f"co-king certificate for {mu} does not validate"
    return None


def _rainbow(t1: Tournament, t2: Tournament) -> str | None:
    rk = rainbow_kings(t1, t2)
    if not rk:
        return "no rainbow king"
    if not forward_kings(t1, t2) <= rk:
        return "forward king that is not a rainbow king"
    return None


def _equivalence(t1: Tournament, t2: Tournament) -> str | None:
    bad = []
    for i in range(t1.n):
        for j in range(t1.n):
            b = blocked(t1, t2, i, j)
            if b == (reaches(t1, t2, i, j) is not None):
                bad.append(f"({i},{j})")
            elif b and out_degree_gap(t1, t2, i, j) <= 0:
                bad.append(f"({i},{j}):gap")
    return f"mismatch at {' '.join(bad)}" if bad else None


def _simulator(t1: Tournament, t2: Tournament) -> str | None:
    got = kings_after(run(RoundSchedule([t1, t2]), 2))
    want = forward_kings(t1, t2)
    if got != want:
        return f"simulator kings {sorted(got)} != forward kings {sorted(want)}"
    return None


def _inductive(t1: Tournament, t2: Tournament) -> str | None:
    king, trace = find_king_inductive(t1, t2)
    if king not in forward_kings(t1, t2):
        return f"inductive finder returned non-king {king}"
    failed = [s for s in trace.steps if not s.reached_excluded]
    for s in failed:
        if not blocked(t1, t2, s.candidate, s.excluded):
            return f"failed attempt ({s.excluded},{s.candidate}) is not blocked"
        if out_degree_gap(t1, t2, s.candidate, s.excluded) <= 0:
            return f"failed attempt ({s.excluded},{s.candidate}) lacks a degree gap"
    if len({s.candidate for s in failed}) != len(failed):
        return "a candidate failed against two exclusions"
    if trace.steps and not trace.steps[-1].reached_excluded:
        return "trace does not end in success"
    return None


def _rainbow_finder(t1: Tournament, t2: Tournament) -> str | None:
    king, pivots = rainbow_pivots(t1, t2)
    if king not in rainbow_kings(t1, t2):
        return f"rainbow finder returned non-rainbow-king {king}"
    if len(pivots) != t1.n - 1:
        return f"recursion depth {len(pivots)} != n-1"
    return None


def _dual(t1: Tournament, t2: Tournament) -> str | None:
    if dual_transform(*dual_transform(t1, t2)) != (t1, t2):
        return "dual transform is not an involution"
    if co_kings(t1, t2) != forward_kings(*dual_transform(t1, t2)):
        return "co-kings differ from forward kings of the dual instance"
    return None


def _landau(t: Tournament, _: object = None) -> str | None:
    return None if check_landau(t) else "a maximum out-degree vertex is not a king"


# -- independent re-checks ---------------------------------------------------
# Return True when the oracle confirms the claim fails on the instance.


def _re_forward(t1, t2):
    return not oracle.forward_kings(t1, t2)


def _re_co(t1, t2):
    return not oracle.co_kings(t1, t2) or oracle.co_kings(t1, t2) != oracle.forward_kings(
        *dual_transform(t1, t2)
    )


def _re_rainbow(t1, t2):
    rk = oracle.rainbow_kings(t1, t2)
    return not rk or not oracle.forward_kings(t1, t2) <= rk


def _re_equivalence(t1, t2):
    n = t1.n
    return any(
        oracle.blocked(t1, t2, i, j) == oracle.reaches(t1, t2, i, j)
        for i in range(n)
        for j in range(n)
    )


def _re_simulator(t1, t2):
    holders = oracle.simulate([t1, t2])
    return {i for i, h in enumerate(holders) if len(h) == t1.n} != oracle.forward_kings(t1, t2)


def _re_inductive(t1, t2):
    king, trace = find_king_inductive(t1, t2)
    if king not in oracle.forward_kings(t1, t2):
        return True
    failed = [s for s in trace.steps if not s.reached_excluded]
    if any(not oracle.blocked(t1, t2, s.candidate, s.excluded) for s in failed):
        return True
    return len({s.candidate for s in failed}) != len(failed)


def _re_rainbow_finder(t1, t2):
    king, pivots = rainbow_pivots(t1, t2)
    return king not in oracle.rainbow_kings(t1, t2) or len(pivots) != t1.n - 1


def _re_dual(t1, t2):
    d1, d2 = dual_transform(t1, t2)
    inv = dual_transform(d1, d2) != (t1, t2)
    return inv or oracle.co_kings(t1, t2) != oracle.forward_kings(d1, d2)


def _re_landau(t, _=None):
    return not oracle.landau_holds(t)


CHECKS: dict[ClaimKind, tuple[Callable, Callable]] = {
    ClaimKind.FORWARD_KING_EXISTS: (_forward, _re_forward),
    ClaimKind.CO_KING_EXISTS: (_co, _re_co),
    ClaimKind.RAINBOW_KING_EXISTS: (_rainbow, _re_rainbow),
    ClaimKind.REACH_BLOCKED_EQUIVALENCE: (_equivalence, _re_equivalence),
    ClaimKind.SIMULATOR_AGREEMENT: (_simulator, _re_simulator),
    ClaimKind.LANDAU_SPECIAL_CASE: (_landau, _re_landau),
    ClaimKind.INDUCTIVE_FINDER_SOUND: (_inductive, _re_inductive),
    ClaimKind.RAINBOW_FINDER_SOUND: (_rainbow_finder, _re_rainbow_finder),
    ClaimKind.DUAL_TRANSFORM_SOUND: (_dual, _re_dual),
}


# -- reports -----------------------------------------------------------------


@dataclass(frozen=True, order=True)
class FailureWitness:
    t1: int
    t2: int | None
    detail: str


@dataclass
class VerificationReport:
    claim: ClaimKind
    n: int
    mode: str
    instances_checked: int = 0
    failure_witnesses: list[FailureWitness] = field(default_factory=list)
    seed: int | None = None
    wall_time: float = field(default=0.0, compare=False)

    @property
    def failures(self) -> int:
        return len(self.failure_witnesses)

    @property
    def ok(self) -> bool:
        return not self.failure_witnesses

    def to_text(self, timing: bool = True) -> str:
        lines = [
            f"claim: {self.claim.value}",
            f"n: {self.n}",
            f"mode: {self.mode}",
            f"instances_checked: {self.instances_checked}",
            f"failures: {self.failures}",
            f"seed: {'-' if self.seed is None else self.seed}",
        ]
        for w in self.failure_witnesses:
            t2 = "-" if w.t2 is None else format(w.t2, "x")
            lines.append(f"witness: {w.t1:x} {t2} {w.detail}")
        if timing:
            lines.append(f"wall_time_s: {self.wall_time:.3f} (timing, not deterministic)")
        return "\n".join(lines) + "\n"

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "claim": self.claim.value,
            "n": self.n,
            "mode": self.mode,
            "instances_checked": self.instances_checked,
            "failures": self.failures,
            "failure_witnesses": [
                {"t1": format(w.t1, "x"), "t2": None if w.t2 is None else format(w.t2, "x"), "detail": w.detail}
                for w in self.failure_witnesses
            ],
            "seed": self.seed,
        }
        if timing:
            d["timing"] = {"wall_time_s": round(self.wall_time, 6)}
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> VerificationReport:
        wits = [
            FailureWitness(int(w["t1"], 16), None if w["t2"] is None else int(w["t2"], 16), w["detail"])
            for w in d["failure_witnesses"]
        ]
        if d["failures"] != len(wits):
            raise ValueError("failure count does not match the witness list")
        return cls(
            ClaimKind(d["claim"]),
            d["n"],
            d["mode"],
            d["instances_checked"],
            wits,
            d["seed"],
            d.get("timing", {}).get("wall_time_s", 0.0),
        )

    @classmethod
    def from_json(cls, text: str) -> VerificationReport:
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_text(cls, text: str) -> VerificationReport:
        fields: dict[str, str] = {}
        wits = []
        wall = 0.0
        for line in text.splitlines():
            key, _, value = line.partition(": ")
            if key == "witness":
                t1, t2, detail = value.split(" ", 2)
                wits.append(FailureWitness(int(t1, 16), None if t2 == "-" else int(t2, 16), detail))
            elif key == "wall_time_s":
                wall = float(value.split()[0])
            else:
                fields[key] = value
        if int(fields["failures"]) != len(wits):
            raise ValueError("failure count does not match the witness list")
        return cls(
            ClaimKind(fields["claim"]),
            int(fields["n"]),
            fields["mode"],
            int(fields["instances_checked"]),
            wits,
            None if fields["seed"] == "-" else int(fields["seed"]),
            wall,
        )


# -- drivers -----------------------------------------------------------------


def _confirm(claim: ClaimKind, t1: Tournament, t2: Tournament | None, detail: str) -> FailureWitness:
    c1 = to_index(t1)
    c2 = None if t2 is None else to_index(t2)
    if not CHECKS[claim][1](t1, t2):
        raise HarnessError(
            f"{claim.value}: checker reported {detail!r} on instance ({c1:x}, {c2}) but the oracle accepts it"
        )
    return FailureWitness(c1, c2, detail)


def _tournament_table(n: int) -> list[Tournament] | tuple[Tournament, ...]:
    if n <= DEFAULT_GATE:
        return all_tournaments(n)
    return [from_index(n, c) for c in range(1 << num_pairs(n))]


def _exhaustive_chunk(args: tuple[int, ClaimKind, int, int]) -> tuple[int, list[FailureWitness]]:
    n, claim, lo, hi = args
    table = _tournament_table(n)
    check = CHECKS[claim][0]
    count = 0
    wits = []
    for c1 in range(lo, hi):
        t1 = table[c1]
        for t2 in (None,) if claim.single else table:
            count += 1
            detail = check(t1, t2)
            if detail is not None:
                wits.append(_confirm(claim, t1, t2, detail))
    return count, wits


def sample_seeds(seed: int, index: int) -> tuple[int, int]:
    """Seeds for the two tournaments of sample ``index``; independent of how samples are split among workers."""
    out = []
    for side in (1, 2):
        h = hashlib.blake2b(f"{seed}:{index}:{side}".encode(), digest_size=8).digest()
        out.append(int.from_bytes(h, "little"))
    return out[0], out[1]


def _random_chunk(args: tuple[int, ClaimKind, int, int, int]) -> tuple[int, list[FailureWitness]]:
    n, claim, seed, lo, hi = args
    check = CHECKS[claim][0]
    wits = []
    for idx in range(lo, hi):
        s1, s2 = sample_seeds(seed, idx)
        t1 = uniform(n, s1)
        t2 = None if claim.single else uniform(n, s2)
        detail = check(t1, t2)
        if detail is not None:
            wits.append(_confirm(claim, t1, t2, detail))
    return hi - lo, wits


def _split(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, hi - lo)) if hi > lo else 1
    step, extra = divmod(hi - lo, parts)
    out = []
    start = lo
    for p in range(parts):
        end = start + step + (1 if p < extra else 0)
        out.append((start, end))
        start = end
    return out


def _map(fn: Callable, jobs: list, workers: int) -> list:
    if workers <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with multiprocessing.get_context("fork").Pool(workers) as pool:
        return pool.map(fn, jobs)


def _merge(report: VerificationReport, parts: list[tuple[int, list[FailureWitness]]]) -> None:
    for count, wits in parts:
        report.instances_checked += count
        report.failure_witnesses.extend(wits)
    report.failure_witnesses.sort(key=lambda w: (w.t1, -1 if w.t2 is None else w.t2, w.detail))


def exhaustive_verify(
    n: int, claim: ClaimKind, workers: int = 1, allow_long: bool = False
) -> VerificationReport:
    """Check ``claim`` on every instance (pair) of size ``n`` in ascending code order."""
    gate = LONG_GATE if allow_long else DEFAULT_GATE
    if not 1 <= n <= gate:
        raise GateError(f"exhaustive verification supports 1 <= n <= {gate}, got n={n}")
    start = time.perf_counter()
    report = VerificationReport(claim, n, "exhaustive")
    jobs = [(n, claim, lo, hi) for lo, hi in _split(0, 1 << num_pairs(n), workers)]
    _merge(report, _map(_exhaustive_chunk, jobs, workers))
    report.wall_time = time.perf_counter() - start
    return report


def random_verify(n: int, samples: int, seed: int, claim: ClaimKind, workers: int = 1) -> VerificationReport:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    start = time.perf_counter()
    report = VerificationReport(claim, n, "random", seed=seed)
    jobs = [(n, claim, seed, lo, hi) for lo, hi in _split(0, samples, workers)]
    _merge(report, _map(_random_chunk, jobs, workers))
    report.wall_time = time.perf_counter() - start
    return report


# -- order sensitivity -------------------------------------------------------


@dataclass
class SearchResult:
    """Outcome of a scan for a rainbow king that is not a forward king.

    ``status`` is ``found``, ``none`` (full scan, nothing found) or
    ``incomplete`` (stopped at ``max_instances`` without a hit).
    """

    n: int
    status: str
    instances_scanned: int
    via_finder: bool = False
    t1: int | None = None
    t2: int | None = None
    vertex: int | None = None
    wall_time: float = field(default=0.0, compare=False)

    @property
    def complete(self) -> bool:
        return self.status != "incomplete"

    def to_dict(self, timing: bool = True) -> dict:
        d = asdict(self)
        d.pop("wall_time")
        for key in ("t1", "t2"):
            if d[key] is not None:
                d[key] = format(d[key], "x")
        d["complete"] = self.complete
        if timing:
            d["timing"] = {"wall_time_s": round(self.wall_time, 6)}
        return d

    def to_text(self, timing: bool = True) -> str:
        d = self.to_dict(timing=False)
        lines = ["target: order-sensitivity"]
        for key in ("n", "status", "complete", "instances_scanned", "via_finder"):
            lines.append(f"{key}: {str(d[key]).lower() if isinstance(d[key], bool) else d[key]}")
        if self.status == "found":
            lines.append(f"witness: {d['t1']} {d['t2']} {self.vertex}")
        if timing:
            lines.append(f"wall_time_s: {self.wall_time:.3f} (timing, not deterministic)")
        return "\n".join(lines) + "\n"

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> SearchResult:
        d = json.loads(text)
        return cls(
            d["n"],
            d["status"],
            d["instances_scanned"],
            d["via_finder"],
            None if d["t1"] is None else int(d["t1"], 16),
            None if d["t2"] is None else int(d["t2"], 16),
            d["vertex"],
            d.get("timing", {}).get("wall_time_s", 0.0),
        )


def search_order_sensitivity(
    n: int, via_finder: bool = False, max_instances: int | None = None
) -> SearchResult:
    """First instance pair, in enumeration order, with a rainbow king that is not a forward king.

    With ``via_finder`` the candidate is the output of the max-in-degree
    rainbow finder rather than an arbitrary rainbow king.
    """
    if not 1 <= n <= DEFAULT_GATE:
        raise GateError(f"order-sensitivity search supports 1 <= n <= {DEFAULT_GATE}, got n={n}")
    start = time.perf_counter()
    table = all_tournaments(n)
    scanned = 0
    for c1, t1 in enumerate(table):
        for c2, t2 in enumerate(table):
            if max_instances is not None and scanned >= max_instances:
                return SearchResult(n, "incomplete", scanned, via_finder, wall_time=time.perf_counter() - start)
            scanned += 1
            fk = forward_kings(t1, t2)
            if via_finder:
                k = rainbow_pivots(t1, t2)[0]
                hits = [] if k in fk else [k]
            else:
                gap = rainbow_kings(t1, t2).mask & ~fk.mask
                hits = [lowest_bit(gap)] if gap else []
            if hits:
                v = hits[0]
                if not (v in oracle.rainbow_kings(t1, t2) and v not in oracle.forward_kings(t1, t2)):
                    raise HarnessError(f"search witness ({c1:x}, {c2:x}, {v}) fails re-validation")
                return SearchResult(n, "found", scanned, via_finder, c1, c2, v, time.perf_counter() - start)
    return SearchResult(n, "none", scanned, via_finder, wall_time=time.perf_counter() - start)
