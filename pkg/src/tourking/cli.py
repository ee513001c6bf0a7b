"""Command-line front end.

Exit codes: 0 success, 1 usage or I/O error, 2 verification failure or
search witness found.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence

from .algorithms import find_co_king, find_king_inductive, find_rainbow_king
from .reach import certify, find_king_brute, rainbow_reaches
from .sim import kings_after, parse_schedule, run
from .tournament import MODELS, Tournament, TournamentError, generate, parse, serialize
from .verify import ClaimKind, GateError, exhaustive_verify, random_verify, search_order_sensitivity

INDUCTIVE_GATE = 12

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILED = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tourking", description="Two-round kings over pairs of tournaments.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a tournament file")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--model", choices=MODELS, required=True)
    g.add_argument("--seed", type=int)
    g.add_argument("--out")
    g.add_argument("--format", choices=("matrix", "hex"), default="matrix")

    k = sub.add_parser("find-king", help="find a vertex whose item reaches everyone in two rounds")
    k.add_argument("--t1", required=True)
    k.add_argument("--t2", required=True)
    k.add_argument("--algo", choices=("brute", "inductive", "rainbow"), default="brute")
    k.add_argument("--certificate", action="store_true")
    k.add_argument("--json", action="store_true")

    c = sub.add_parser("find-co-king", help="find a vertex that receives every item in two rounds")
    c.add_argument("--t1", required=True)
    c.add_argument("--t2", required=True)
    c.add_argument("--certificate", action="store_true")
    c.add_argument("--json", action="store_true")

    s = sub.add_parser("simulate", help="propagate items over a schedule of tournaments")
    s.add_argument("--schedule", required=True)
    s.add_argument("--rounds", type=int, required=True)
    s.add_argument("--json", action="store_true")

    v = sub.add_parser("verify", help="check a claim exhaustively or on random instances")
    v.add_argument("--claim", choices=[c.value for c in ClaimKind], required=True)
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--mode", choices=("exhaustive", "random"), required=True)
    v.add_argument("--samples", type=int)
    v.add_argument("--seed", type=int)
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--long", action="store_true", help="allow the n=6 exhaustive sweep (2^30 pairs)")
    v.add_argument("--json", action="store_true")

    r = sub.add_parser("search", help="look for a rainbow king that is not a two-round king")
    r.add_argument("--target", choices=("order-sensitivity",), required=True)
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--via-finder", action="store_true", help="test the rainbow finder's output only")
    r.add_argument("--json", action="store_true")
    return p


def _read(path: str) -> str:
    with open(path) as fh:
        return fh.read()


def _pair(args: argparse.Namespace) -> tuple[Tournament, Tournament]:
    t1, t2 = parse(_read(args.t1)), parse(_read(args.t2))
    if t1.n != t2.n:
        raise UsageError(f"size mismatch: --t1 has {t1.n} vertices, --t2 has {t2.n}")
    return t1, t2


def _emit_king(args, out: dict) -> None:
    if args.json:
        print(json.dumps(out, indent=2, sort_keys=True))
        return
    print(f"king: {out['king']}")
    print(f"kind: {out['kind']}")
    for step in out.get("trace", []):
        status = "reached" if step["reached_excluded"] else "blocked"
        print(f"attempt: exclude {step['excluded']} -> candidate {step['candidate']} {status}")
    if "depth" in out:
        print(f"depth: {out['depth']}")
    for j, w in out.get("witnesses", {}).items():
        print(f"witness {j}: {w}")


def _cmd_gen(args) -> int:
    if args.model == "uniform" and args.seed is None:
        raise UsageError("--model uniform requires --seed")
    text = serialize(generate(args.n, args.model, args.seed), args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_find_king(args) -> int:
    t1, t2 = _pair(args)
    out: dict = {"algo": args.algo}
    if args.algo == "brute":
        cert = find_king_brute(t1, t2)
        out.update(king=cert.king, kind="forward")
        witnesses = cert.witnesses
    elif args.algo == "inductive":
        if t1.n > INDUCTIVE_GATE:
            raise UsageError(f"--algo inductive is limited to n <= {INDUCTIVE_GATE}")
        king, trace = find_king_inductive(t1, t2)
        out.update(king=king, kind="forward", depth=trace.depth)
        out["trace"] = [
            {"excluded": s.excluded, "candidate": s.candidate, "reached_excluded": s.reached_excluded}
            for s in trace.steps
        ]
        witnesses = certify(t1, t2, king).witnesses if args.certificate else {}
    else:
        print(
            "warning: the rainbow finder certifies rainbow kingship (either colour order), "
            "not two-round kingship",
            file=sys.stderr,
        )
        king = find_rainbow_king(t1, t2)
        out.update(king=king, kind="rainbow")
        witnesses = {j: rainbow_reaches(t1, t2, king, j) for j in range(t1.n) if j != king}
    if args.certificate:
        out["witnesses"] = {str(j): str(w) for j, w in sorted(witnesses.items())}
    _emit_king(args, out)
    return EXIT_OK


def _cmd_find_co_king(args) -> int:
    t1, t2 = _pair(args)
    mu, cert = find_co_king(t1, t2)
    out: dict = {"king": mu, "kind": "co"}
    if args.certificate:
        out["witnesses"] = {str(i): str(w) for i, w in sorted(cert.witnesses.items())}
    _emit_king(args, out)
    return EXIT_OK


def _cmd_simulate(args) -> int:
    schedule = parse_schedule(_read(args.schedule))
    if not 0 <= args.rounds <= len(schedule):
        raise UsageError(f"--rounds {args.rounds} exceeds the schedule's {len(schedule)} rounds")
    state = run(schedule, args.rounds)
    know = ["".join("1" if b else "0" for b in row) for row in state.matrix()]
    kings = sorted(kings_after(state))
    if args.json:
        print(json.dumps({"n": state.n, "rounds": args.rounds, "know": know, "kings": kings}, indent=2))
    else:
        print(f"n: {state.n}")
        print(f"rounds: {args.rounds}")
        for line in know:
            print(line)
        print("kings: " + " ".join(map(str, kings)))
    return EXIT_OK


def _cmd_verify(args) -> int:
    claim = ClaimKind(args.claim)
    if args.workers < 1:
        raise UsageError("--workers must be >= 1")
    if args.mode == "random":
        if args.samples is None or args.seed is None:
            raise UsageError("--mode random requires --samples and --seed")
        report = random_verify(args.n, args.samples, args.seed, claim, workers=args.workers)
    else:
        report = exhaustive_verify(args.n, claim, workers=args.workers, allow_long=args.long)
    sys.stdout.write(report.to_json() + "\n" if args.json else report.to_text())
    return EXIT_OK if report.ok else EXIT_FAILED


def _cmd_search(args) -> int:
    result = search_order_sensitivity(args.n, via_finder=args.via_finder)
    sys.stdout.write(result.to_json() + "\n" if args.json else result.to_text())
    return EXIT_FAILED if result.status == "found" else EXIT_OK


COMMANDS = {
    "gen": _cmd_gen,
    "find-king": _cmd_find_king,
    "find-co-king": _cmd_find_co_king,
    "simulate": _cmd_simulate,
    "verify": _cmd_verify,
    "search": _cmd_search,
}


def run_cli(argv: Sequence[str] | None = None) -> int:
    try:
        args = _parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (OSError, TournamentError, GateError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_USAGE


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
