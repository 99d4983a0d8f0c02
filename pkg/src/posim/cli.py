"""Command-line front end: run the builtin search programs, execute the
verification suites, and export circuits in the portable text format.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 capacity
error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from .algo import MatchConvention
from .circuit import export_portable
from .frame import (
    IterationResult,
    TapeError,
    TapeParseError,
    build_pipeline_circuit,
    calculate,
    emit_oracle_circuit,
    emit_recip_circuit,
    parse_tape,
    partial_oracle_iteration,
)
from .programs import BUILTIN_PROGRAMS, chain_tape, default_toyhash_seeds, toyhash_tape
from .sim import CapacityError
from .suites import SUITES, run_suite

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    """Result of one search run, printable for humans or as a stable JSON doc."""

    solutions: list[tuple[tuple[int, ...], float]]
    qubit_count: int
    gate_counts: dict[str, int]
    iterations: int
    wall_time: float
    config: dict

    def to_document(self) -> dict:
        return {
            "solutions": [[list(values), prob] for values, prob in self.solutions],
            "qubit_count": self.qubit_count,
            "gate_counts": dict(sorted(self.gate_counts.items())),
            "iterations": self.iterations,
            "config": self.config,
        }

    def print_human(self, register_names) -> None:
        cfg = " ".join(f"{k}={v}" for k, v in sorted(self.config.items()))
        print(f"config: {cfg}")
        print(f"qubits: {self.qubit_count}   iterations: {self.iterations}   "
              f"gates: {sum(self.gate_counts.values())} {dict(sorted(self.gate_counts.items()))}")
        print(f"wall time: {self.wall_time:.3f} s")
        header = ", ".join(register_names)
        print(f"solutions ({header}):")
        for values, prob in self.solutions:
            pretty = ", ".join(str(v) for v in values)
            print(f"  ({pretty})  p = {prob:.6f}")


def _parse_values(text: str, count: int, what: str) -> list[int]:
    try:
        values = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise UsageError(f"{what} must be comma-separated integers, got {text!r}") from None
    if len(values) != count:
        raise UsageError(f"{what} needs {count} comma-separated values, got {len(values)}")
    return values


def _sampled_solutions(result: IterationResult, shots: int, seed: int,
                       ) -> list[tuple[tuple[int, ...], float]]:
    """Replace exact probabilities by sampled frequencies (measurement demo)."""
    rng = np.random.default_rng(seed)
    exact = result.solutions()
    probs = np.array([p for _, p in exact])
    probs = probs / probs.sum()
    counts = rng.multinomial(shots, probs)
    sampled = [(values, count / shots)
               for (values, _), count in zip(exact, counts) if count]
    sampled.sort(key=lambda kv: (-kv[1], kv[0]))
    return sampled


def _report_from_result(result: IterationResult, wall: float, config: dict,
                        shots: int | None, seed: int) -> RunReport:
    if shots:
        solutions = _sampled_solutions(result, shots, seed)
    else:
        solutions = result.solutions()
    return RunReport(
        solutions=solutions,
        qubit_count=result.qubit_count,
        gate_counts=result.gate_counts,
        iterations=result.iterations,
        wall_time=wall,
        config=config,
    )


def _emit_report(report: RunReport, register_names, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report.to_document(), sort_keys=True))
    else:
        report.print_human(register_names)


def _resolve_targets(tape, args, seed_names) -> tuple[dict, dict]:
    """Targets either given directly or computed from seeds; returns
    (targets, config extras)."""
    names = [r.name for r in tape.registers]
    if args.target is not None and args.seeds is not None:
        raise UsageError("give either --target or --seeds, not both")
    if args.target is not None:
        values = _parse_values(args.target, len(names), "--target")
        return dict(zip(names, values)), {"target": args.target}
    if args.seeds is not None:
        values = _parse_values(args.seeds, len(names), "--seeds")
        seeds = dict(zip(names, values))
    else:
        seeds = seed_names
        if seeds is None:
            raise UsageError("give --target or --seeds")
    targets = calculate(tape, seeds)
    extras = {"seeds": ",".join(str(seeds[n]) for n in names),
              "target": ",".join(str(targets[n]) for n in names)}
    return targets, extras


def cmd_run_chain(args) -> int:
    if not 1 <= args.width <= 8:
        raise UsageError("chain width must be 1..8")
    tape = chain_tape(args.width)
    convention = MatchConvention.parse(args.convention)
    if args.sweep_all:
        return _sweep_chain(tape, args)
    targets, extras = _resolve_targets(tape, args, None)
    config = {"program": "chain", "width": args.width, "mode": args.mode,
              "convention": args.convention, "precision": args.precision,
              "shots": args.shots or 0, "seed": args.seed, **extras}
    if convention is MatchConvention.ALL_ONES:
        # match-on-ones pipeline solves the same problem with the complement
        # of the target wired into the oracle
        mask = (1 << args.width) - 1
        targets = {k: v ^ mask for k, v in targets.items()}
    start = time.perf_counter()
    result = partial_oracle_iteration(tape, targets, convention=convention,
                                      mode=args.mode, precision=args.precision)
    wall = time.perf_counter() - start
    report = _report_from_result(result, wall, config, args.shots, args.seed)
    _emit_report(report, result.register_names, args.json)
    return EXIT_OK


def _sweep_chain(tape, args) -> int:
    from .frame import tape_bijection

    bij = tape_bijection(tape)
    width = args.width
    mask = (1 << width) - 1
    total = 1 << (2 * width)
    failures = 0
    start = time.perf_counter()
    for target in range(total):
        targets = {"x": target & mask, "y": (target >> width) & mask}
        result = partial_oracle_iteration(tape, targets, precision=args.precision)
        (values, prob) = result.solutions()[0]
        flat = values[0] | values[1] << width
        if flat != bij.inverse()(target) or prob < 0.999:
            failures += 1
    wall = time.perf_counter() - start
    print(f"sweep: {total - failures}/{total} targets recovered the unique "
          f"preimage with p >= 0.999 in {wall:.1f} s")
    return EXIT_OK if failures == 0 else EXIT_VERIFY_FAILED


def cmd_run_toyhash(args) -> int:
    if args.width not in (2, 3, 4):
        raise UsageError("toy hash width must be 2, 3, or 4")
    tape = toyhash_tape(args.width, args.rounds)
    default_seeds = default_toyhash_seeds(args.width) if args.seeds is None else None
    targets, extras = _resolve_targets(tape, args, default_seeds)
    config = {"program": "toyhash", "width": args.width, "rounds": args.rounds,
              "mode": "parallel", "convention": "zeros",
              "precision": args.precision, "shots": args.shots or 0,
              "seed": args.seed, **extras}
    start = time.perf_counter()
    result = partial_oracle_iteration(tape, targets, precision=args.precision)
    wall = time.perf_counter() - start
    report = _report_from_result(result, wall, config, args.shots, args.seed)
    _emit_report(report, result.register_names, args.json)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    failed = 0
    for name in names:
        print(f"suite {name} (seed {args.seed})")
        for check in run_suite(name, args.seed):
            print("  " + check.line())
            if not check.passed:
                failed += 1
    print("all checks passed" if failed == 0 else f"{failed} check(s) FAILED")
    return EXIT_OK if failed == 0 else EXIT_VERIFY_FAILED


def _load_program(args):
    if args.program in BUILTIN_PROGRAMS:
        return BUILTIN_PROGRAMS[args.program](args.width)
    with open(args.program, "r", encoding="utf-8") as handle:
        return parse_tape(handle.read())


def cmd_export(args) -> int:
    tape = _load_program(args)
    zero_targets = {r.name: 0 for r in tape.registers}
    if args.which == "oracle":
        circuit, _ = emit_oracle_circuit(tape, zero_targets)
    elif args.which == "recip":
        circuit, _ = emit_recip_circuit(tape)
    else:
        circuit = build_pipeline_circuit(tape, zero_targets)
    text = export_portable(circuit)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="posim",
        description="Partial-oracle quantum search with reciprocal-space circuits.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_run_flags(p, widths_help):
        p.add_argument("--width", type=int, default=4, help=widths_help)
        p.add_argument("--target", help="comma-separated target values per register")
        p.add_argument("--seeds", help="comma-separated seeds; target computed classically")
        p.add_argument("--precision", choices=("double", "single"), default="double")
        p.add_argument("--shots", type=int, default=0,
                       help="sample this many measurements instead of exact probabilities")
        p.add_argument("--seed", type=int, default=0, help="RNG seed for sampling")
        p.add_argument("--json", action="store_true",
                       help="machine-readable report on stdout")

    p = sub.add_parser("run-chain", help="add-then-shift chain program")
    add_run_flags(p, "register width, 1..8 (default 4)")
    p.add_argument("--convention", choices=("zeros", "ones"), default="zeros")
    p.add_argument("--mode", choices=("parallel", "sequential"), default="parallel")
    p.add_argument("--sweep-all", action="store_true",
                   help="run every target tuple and check each preimage")
    p.set_defaults(fn=cmd_run_chain)

    p = sub.add_parser("run-toyhash", help="scaled-down hash round function")
    add_run_flags(p, "register width, one of 2, 3, 4 (default 4)")
    p.add_argument("--rounds", type=int, default=4)
    p.set_defaults(fn=cmd_run_toyhash)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("export", help="emit a circuit in the portable format")
    p.add_argument("--program", required=True,
                   help="builtin name (chain, toyhash) or a tape file path")
    p.add_argument("--which", choices=("oracle", "recip", "pipeline"), default="oracle")
    p.add_argument("--width", type=int, default=4, help="width for builtin programs")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(fn=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TapeParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TapeError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY


if __name__ == "__main__":
    sys.exit(main())
