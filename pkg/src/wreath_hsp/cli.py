"""Command line: solve planted instances, emit transforms, verify, sweep.

Exit codes: 0 success, 1 verification failure or capacity overrun, 2 usage
error.  All randomness flows from --seed (default 42), so identical
invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .errors import CapacityError
from .qft import gate_count_report, qft_circuit, qft_matrix_exact
from .solver import SolverParams, solve, success_experiment
from .subgroups import (
    Subgroup,
    build_hidden_function,
    closure_of,
    enumerate_subgroups,
    random_subgroup,
)
from .suites import SUITE_IDS, run_suite
from .wreath import GroupElement, group_order

DEFAULT_SEED = 42


def _dump(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


def _write(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _parse_generators(raw: str, n: int) -> list[GroupElement]:
    gens = []
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        g = GroupElement.from_literal(part)
        if g.n != n:
            raise ValueError(f"generator {part!r} has arity {g.n}, expected {n}")
        gens.append(g)
    return gens


def cmd_solve(args) -> int:
    if args.random:
        planted = random_subgroup(args.n, np.random.default_rng(args.seed))
    else:
        planted = Subgroup(args.n, _parse_generators(args.generators or "", args.n))
    f = build_hidden_function(planted)
    params = SolverParams(n=args.n, seed=args.seed)
    report = solve(f, params)
    recovered = closure_of(args.n, report.generators)
    ok = report.verified and recovered == planted.closure
    payload = report.to_dict()
    payload["planted_generators"] = [g.literal() for g in planted.generators]
    payload["matches_planted"] = recovered == planted.closure
    if args.format == "json":
        _write(_dump(payload), args.out)
    else:
        lines = [
            f"n={args.n} planted order={planted.order} rounds={report.rounds_used}",
            f"verified={report.verified} matches_planted={payload['matches_planted']}",
            "generators: " + (" ".join(g.literal() for g in report.generators) or "(none)"),
        ]
        _write("\n".join(lines), args.out)
    return 0 if ok else 1


def cmd_qft(args) -> int:
    if args.emit == "matrix":
        exact = qft_matrix_exact(args.n)  # raises CapacityError for n > 3
        payload = {
            "n": args.n,
            "scale": f"1/sqrt({group_order(args.n)})",
            "rows": [[int(v) for v in row] for row in exact],
        }
    else:
        bundle = qft_circuit(args.n)
        payload = bundle.circuit.to_dict()
        payload["hadamards"] = bundle.hadamard_count
        payload["toffoli_equivalents"] = bundle.toffoli_count
    if args.format == "json":
        _write(_dump(payload), args.out)
    else:
        rows = gate_count_report(min(args.n, 64))
        lines = [f"{'n':>3} {'hadamards':>10} {'toffolis':>9} {'total':>6}"]
        lines += [f"{r.n:>3} {r.hadamards:>10} {r.toffolis:>9} {r.total:>6}" for r in rows]
        if args.emit == "matrix":
            lines.append(f"matrix entries +-1 at scale {payload['scale']}")
            lines += [" ".join(f"{v:+d}" for v in row) for row in payload["rows"]]
        _write("\n".join(lines), args.out)
    return 0


def cmd_verify(args) -> int:
    if args.n > 3:
        raise ValueError(f"verify suites run at n <= 3, got {args.n}")
    results = run_suite(args.suite, args.n, args.samples, args.seed)
    failed = [r for r in results if not r.passed]
    if args.format == "json":
        payload = {
            "n": args.n,
            "suite": args.suite,
            "passed": not failed,
            "results": [
                {"name": r.name, "checked": r.checked, "failures": r.failures} for r in results
            ],
        }
        _write(_dump(payload), args.out)
    else:
        lines = [f"{r.name}: checked={r.checked} failures={len(r.failures)}" for r in results]
        for r in failed:
            lines.append(_dump(r.failures))
        _write("\n".join(lines), args.out)
    return 1 if failed else 0


def cmd_sweep(args) -> int:
    counts = [int(v) for v in args.samples.split(",") if v.strip()]
    if not counts:
        raise ValueError("--samples must list at least one sample count")
    rng = np.random.default_rng(args.seed)
    stats = success_experiment(args.n, args.trials, counts, rng)
    if args.format == "json":
        text = "\n".join(json.dumps(s.to_dict(), sort_keys=True) for s in stats)
    else:
        text = "\n".join(
            f"i={s.samples:>3} empirical={s.empirical:.4f} bound={s.bound:.4f}" for s in stats
        )
    _write(text, args.out)
    return 0


def cmd_enumerate(args) -> int:
    subs = enumerate_subgroups(args.n)  # rejects n >= 3
    payload = {
        "n": args.n,
        "count": len(subs),
        "subgroups": [dict(s.to_dict(), order=s.order) for s in subs],
    }
    if args.format == "json":
        _write(_dump(payload), args.out)
    else:
        lines = [f"{len(subs)} subgroups of the order-{group_order(args.n)} group"]
        lines += [
            f"order={s.order:>3} <" + ",".join(g.literal() for g in s.generators) + ">"
            for s in subs
        ]
        _write("\n".join(lines), args.out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wreath-hsp", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_n=True):
        if needs_n:
            p.add_argument("--n", type=int, required=True, help="arity of the group")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--out", metavar="PATH", default=None)

    p = sub.add_parser("solve", help="plant a hidden subgroup and solve it")
    common(p)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--generators", help="comma-separated element literals x|y|a")
    group.add_argument("--random", action="store_true", help="plant a random subgroup")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("qft", help="emit the transform as circuit or exact matrix")
    common(p)
    p.add_argument("--emit", choices=("matrix", "circuit"), required=True)
    p.set_defaults(func=cmd_qft)

    p = sub.add_parser("verify", help="run structural verification suites")
    common(p)
    p.add_argument("--suite", choices=SUITE_IDS, default="all")
    p.add_argument("--samples", type=int, default=200, help="random subgroups per pool")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="success-rate sweep over sample counts")
    common(p)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--samples", default="4,8,16,32", help="comma-separated sample counts")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("enumerate", help="list all subgroups (n <= 2)")
    common(p)
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"usage: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
