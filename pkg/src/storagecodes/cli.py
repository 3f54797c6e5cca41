"""Command-line frontend: validate, construct, simulate, bound, game.

All randomness is seeded; identical invocations produce identical
output.  The STORAGECODE_CAP environment variable overrides the search
caps (subspace enumeration and the game memo table).
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from typing import List, Optional

from . import bounds, codefile, flowgame
from .codes import CodeError, rate_and_overhead, recovery_dimension, repair_locality
from .constructions import example1, repetition_code, rbt_mbr, single_parity
from .gf2 import BitVector, EnumerationCapError
from .sim import (
    SimulationError,
    encode,
    encode_functional,
    run_scenario,
    random_failure_script,
    trace_to_text,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_SIMULATION = 4
EXIT_CAP = 5


def _cap() -> Optional[int]:
    raw = os.environ.get("STORAGECODE_CAP")
    return int(raw) if raw else None


def _emit(args, pairs) -> None:
    """Print either prose ('key: value') or a flat record stream."""
    if args.format == "record-stream":
        print(" ".join(f"{k}={v}" for k, v in pairs))
    else:
        for k, v in pairs:
            print(f"{k}: {v}")


def cmd_validate(args) -> int:
    try:
        cf = codefile.load(args.path)
    except codefile.CodeFileError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if cf.mode == "functional":
        spec = cf.spec
        _emit(args, [
            ("mode", "functional"),
            ("spec", cf.spec_name),
            ("m", spec.ambient_dim),
            ("n", spec.node_count),
            ("alpha", spec.node_dim),
            ("beta", spec.beta),
        ])
        return EXIT_OK
    code = cf.code
    problems = []
    k = recovery_dimension(code)
    beta = cf.declared.beta if cf.declared else 1
    try:
        r = repair_locality(code, beta, _cap())
    except EnumerationCapError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    if r is None:
        problems.append(f"no repair locality exists for beta={beta}")
    if cf.declared is not None:
        if cf.declared.k != k:
            problems.append(f"declared k={cf.declared.k} but computed k={k}")
        if r is not None and r > cf.declared.r:
            problems.append(f"declared r={cf.declared.r} but computed locality {r}")
    if problems:
        for p in problems:
            print(f"violation: {p}", file=sys.stderr)
        return EXIT_VALIDATION
    rate, overhead = rate_and_overhead(code)
    _emit(args, [
        ("profile", f"({code.message_dim}; {code.n},{k},{r},{code.alpha},{beta})"),
        ("rate", rate),
        ("overhead", overhead),
    ])
    return EXIT_OK


def cmd_construct(args) -> int:
    try:
        if args.name == "example1":
            cf = codefile.from_named_code(example1())
        elif args.name == "rbt-mbr":
            cf = codefile.from_named_code(rbt_mbr(args.n))
        elif args.name == "repetition":
            cf = codefile.from_named_code(
                repetition_code(args.n, args.r, args.alpha, args.variant)
            )
        elif args.name == "parity":
            cf = codefile.from_named_code(single_parity(args.r))
        elif args.name == "example3":
            cf = codefile.functional_file("example3")
        else:
            print(f"unknown construction {args.name!r}", file=sys.stderr)
            return EXIT_PARSE
    except (CodeError, TypeError) as exc:
        print(f"bad parameters: {exc}", file=sys.stderr)
        return EXIT_PARSE
    text = codefile.dumps(cf)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.output}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_simulate(args) -> int:
    try:
        cf = codefile.load(args.path)
    except codefile.CodeFileError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    rng = random.Random(args.seed)
    try:
        if cf.mode == "functional":
            spec = cf.spec
            x = BitVector(spec.ambient_dim, rng.randrange(1 << spec.ambient_dim))
            state = encode_functional(spec, cf.functional_bases, x)
            n = spec.node_count
        else:
            code = cf.code
            x = BitVector(code.message_dim, rng.randrange(1 << code.message_dim))
            beta = cf.declared.beta if cf.declared else 1
            state = encode(code, x, cf.plans, beta)
            n = code.n
        script = random_failure_script(n, args.rounds, args.seed)
        run_scenario(state, script)
        # Decode check after every repair round, from a random live subset
        # of recovery-dimension size when one exists.
        decode_checks = 0
        if cf.mode == "functional":
            k = spec.node_count - 1
        else:
            k = recovery_dimension(code)
        check_rng = random.Random(args.seed + 1)
        for _ in range(max(args.rounds, 1)):
            live = sorted(state.live)
            subset = check_rng.sample(live, k)
            from .sim import collect

            got = collect(state, subset)
            if got is not None:
                if got != x:
                    raise SimulationError("decode check returned the wrong message")
                decode_checks += 1
        repairs = sum(1 for ev in state.trace if ev.kind.startswith("repair"))
        transferred = sum(
            int(dict(ev.payload)["symbols_transferred"])
            for ev in state.trace
            if ev.kind.startswith("repair")
        )
    except SimulationError as exc:
        print(f"simulation failure at epoch {state.epoch}: {exc}", file=sys.stderr)
        return EXIT_SIMULATION
    text = trace_to_text(state.trace)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    elif args.format == "record-stream":
        sys.stdout.write(text)
    _emit(args, [
        ("repairs", repairs),
        ("symbols_transferred", transferred),
        ("decode_checks_passed", decode_checks),
    ])
    return EXIT_OK


def cmd_bound(args) -> int:
    name = args.name
    try:
        if name == "cutset":
            report = bounds.BoundReport(
                "cutset",
                {"k": args.k, "r": args.r, "alpha": args.alpha, "beta": args.beta},
                bounds.cutset_bound(args.k, args.r, args.alpha, args.beta),
            )
        elif name == "msr":
            alpha, m = bounds.msr_point(args.k, args.r, args.beta)
            report = bounds.BoundReport(
                "msr", {"k": args.k, "r": args.r, "beta": args.beta}, m,
                extra={"alpha": alpha},
            )
        elif name == "mbr":
            alpha, m = bounds.mbr_point(args.k, args.r, args.beta)
            report = bounds.BoundReport(
                "mbr", {"k": args.k, "r": args.r, "beta": args.beta}, m,
                extra={"alpha": alpha},
            )
        elif name == "locality-distance":
            report = bounds.BoundReport(
                "locality-distance",
                {"k": args.k, "r": args.r, "d": args.d},
                bounds.linear_locality_distance_bound(args.k, args.r, args.d),
            )
        elif name == "info-distance":
            report = bounds.BoundReport(
                "info-distance",
                {"n": args.n, "m": args.m, "r": args.r, "alpha": args.alpha},
                bounds.info_distance_bound(args.n, args.m, args.r, args.alpha),
            )
        elif name == "theorem1":
            case = (
                bounds.CASE_ALPHA_EQ_BETA
                if args.case in ("alpha-eq-beta", bounds.CASE_ALPHA_EQ_BETA)
                else bounds.CASE_ALPHA_EQ_R_BETA
            )
            report = bounds.BoundReport(
                "theorem1",
                {"n": args.n, "r": args.r, "alpha": args.alpha},
                bounds.theorem1_bound(case, args.n, args.r, args.alpha),
                extra={"case": case},
            )
        elif name == "theorem2":
            report = bounds.BoundReport(
                "theorem2",
                {"n": args.n, "alpha": args.alpha, "beta": args.beta},
                bounds.theorem2_bound(args.n, args.alpha, args.beta),
                extra={"rate_bound": bounds.theorem2_rate_bound(args.alpha, args.beta)},
            )
        else:
            print(f"unknown bound {name!r}", file=sys.stderr)
            return EXIT_PARSE
    except (ValueError, TypeError) as exc:
        print(f"bad parameters: {exc}", file=sys.stderr)
        return EXIT_PARSE
    print(report.to_record())
    return EXIT_OK


def cmd_game(args) -> int:
    case_map = {
        "alpha-eq-beta": bounds.CASE_ALPHA_EQ_BETA,
        "alpha-eq-r-beta": bounds.CASE_ALPHA_EQ_R_BETA,
        "r2": flowgame.CASE_R2,
    }
    if args.case not in case_map:
        print(f"unknown case {args.case!r}", file=sys.stderr)
        return EXIT_PARSE
    horizon = args.horizon if args.horizon else 2 * args.n
    try:
        report = flowgame.verify_theorem(
            case_map[args.case], args.n, args.r, args.alpha, args.beta, horizon, _cap()
        )
    except ValueError as exc:
        print(f"bad parameters: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except flowgame.CapExceededError as exc:
        print(f"cap exceeded before any depth completed: {exc}", file=sys.stderr)
        return EXIT_CAP
    print(report.to_record())
    if report.capped:
        print(
            f"cap exceeded: searched horizon {report.horizon_searched} of "
            f"{report.horizon_requested}; the bound is still valid",
            file=sys.stderr,
        )
        return EXIT_CAP
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="storagecode",
        description="GF(2) distributed-storage codes: validation, simulation, bounds, games",
    )
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--output", default=None)
    parser.add_argument("--horizon", type=int, default=0)
    parser.add_argument("--rounds", type=int, default=100)
    parser.add_argument("--format", choices=["text", "record-stream"], default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a code file and print its profile")
    p.add_argument("path")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("construct", help="write a named code to a file")
    p.add_argument("name", choices=["example1", "rbt-mbr", "repetition", "parity", "example3"])
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--alpha", type=int, default=None)
    p.add_argument("--variant", choices=["split", "copy"], default="split")
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("simulate", help="run seeded failure/repair rounds on a code file")
    p.add_argument("path")
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("bound", help="evaluate a closed-form bound")
    p.add_argument(
        "name",
        choices=[
            "cutset", "msr", "mbr", "locality-distance", "info-distance",
            "theorem1", "theorem2",
        ],
    )
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--alpha", type=int, default=1)
    p.add_argument("--beta", type=int, default=1)
    p.add_argument("--case", default="alpha-eq-beta")
    p.set_defaults(fn=cmd_bound)

    p = sub.add_parser("game", help="verify a locality-rate theorem by game search")
    p.add_argument("--case", required=True, choices=["alpha-eq-beta", "alpha-eq-r-beta", "r2"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--beta", type=int, required=True)
    p.set_defaults(fn=cmd_game)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
