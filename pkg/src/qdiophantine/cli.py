"""Command-line entry point.

    qdiophantine [run] --bits 3 --target 5 --iterations auto
    qdiophantine verify --bits 3 --target 5

Exit statuses: 0 success, 1 usage error, 2 no solutions, 3 capacity,
4 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from .arith import build_layout
from .checks import run_checks
from .circuit import export_text
from .grover import DiffuserConditionError, GroverReport, build_grover_circuit, run_grover
from .statevector import MAX_WIDTH_ENV, CapacityError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NO_SOLUTIONS = 2
EXIT_CAPACITY = 3
EXIT_VERIFY_FAILED = 4

SCHEMA_VERSION = 1


@dataclass
class RunConfig:
    bits: int
    target: int
    iterations: int | str = "auto"
    shots: int = 0
    seed: int | None = None
    format: str = "json"
    top: int = 0
    export_circuit: str | None = None
    force: bool = False
    max_width: int | None = None

    def validate(self):
        if self.bits < 1:
            raise ValueError("--bits must be at least 1")
        if self.target < 0:
            raise ValueError("--target must be non-negative")
        if self.shots < 0:
            raise ValueError("--shots must be non-negative")
        if self.top < 0:
            raise ValueError("--top must be non-negative")
        if self.iterations != "auto" and int(self.iterations) < 0:
            raise ValueError("--iterations must be non-negative or 'auto'")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _iterations(text: str):
    if text == "auto":
        return text
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'auto', got {text!r}")


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--bits", type=int, required=True, help="bits per variable (m)")
    p.add_argument("--target", type=int, required=True, help="target sum n in x + y = n")
    p.add_argument("--max-width", type=int, default=None,
                   help=f"largest statevector width in qubits (default ${MAX_WIDTH_ENV} or 30)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qdiophantine", description="Grover search for x + y = n")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    run_p = sub.add_parser("run", help="simulate the search and print a report")
    _add_common(run_p)
    run_p.add_argument("--iterations", type=_iterations, default="auto", help="k or 'auto'")
    run_p.add_argument("--shots", type=int, default=0, help="sample this many shots (0 = exact)")
    run_p.add_argument("--seed", type=int, default=None)
    run_p.add_argument("--format", choices=("json", "csv"), default="json")
    run_p.add_argument("--top", type=int, default=0, help="keep only the K most probable states (0 = all)")
    run_p.add_argument("--export-circuit", metavar="PATH", default=None,
                       help="write the full circuit as OpenQASM 3 text")
    run_p.add_argument("--force", action="store_true", help="run even if half or more of the states are solutions")

    verify_p = sub.add_parser("verify", help="run the self-check suite")
    _add_common(verify_p)
    verify_p.add_argument("--max-iterations", type=int, default=8)
    return parser


def _prob(p: float) -> float:
    return float(f"{p:.12g}")


def report_to_dict(report: GroverReport, top: int = 0) -> dict:
    prob = report.problem
    m = prob.m
    exact = report.probabilities
    hist = report.histogram
    rows = sorted(((s, _prob(p)) for s, p in hist.items()), key=lambda sp: (-sp[1], sp[0]))
    kept = rows[:top] if top else rows
    residual = sum(hist[s] for s, _ in rows[len(kept):])

    histogram = []
    for s, p in kept:
        row = {"state": s, "x": int(s[:m], 2), "y": int(s[m:], 2), "probability": p}
        if report.counts is not None:
            row["count"] = report.counts.get(s, 0)
            row["exact_probability"] = _prob(exact[s])
        histogram.append(row)

    return {
        "schema_version": SCHEMA_VERSION,
        "bits": m,
        "target": prob.n,
        "iterations": report.iterations,
        "N": prob.N,
        "M": prob.M,
        "mode": "sampled" if report.counts is not None else "exact",
        "shots": report.shots,
        "seed": report.seed,
        "success_probability": _prob(report.success_probability),
        "predicted_success": _prob(report.predicted_success),
        "histogram": histogram,
        "residual_probability": _prob(residual),
        "solutions": [
            {
                "state": s.state,
                "x_bin": s.state[:m],
                "y_bin": s.state[m:],
                "x": s.x,
                "y": s.y,
                "sum": s.x + s.y,
                "probability": _prob(s.probability),
            }
            for s in report.solutions
        ],
    }


def report_to_csv(report: GroverReport, top: int = 0) -> str:
    data = report_to_dict(report, top)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["state", "x", "y", "probability"])
    for row in data["histogram"]:
        w.writerow([row["state"], row["x"], row["y"], repr(row["probability"])])
    return buf.getvalue()


def render_report(report: GroverReport, fmt: str = "json", top: int = 0) -> str:
    if fmt == "csv":
        return report_to_csv(report, top)
    return json.dumps(report_to_dict(report, top), indent=2) + "\n"


def run(config: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        config.validate()
        report = run_grover(
            config.bits, config.target, config.iterations,
            shots=config.shots or None, seed=config.seed,
            force=config.force, max_width=config.max_width,
        )
    except CapacityError as exc:
        print(f"qdiophantine: {exc}", file=err)
        return EXIT_CAPACITY
    except (DiffuserConditionError, ValueError) as exc:
        print(f"qdiophantine: {exc}", file=err)
        return EXIT_USAGE

    if report.problem.M == 0:
        hi = 2 * ((1 << config.bits) - 1)
        print(f"qdiophantine: no solutions exist: x + y = {config.target} has no solution "
              f"with {config.bits}-bit x and y (reachable sums are 0..{hi})", file=err)
        return EXIT_NO_SOLUTIONS

    if config.export_circuit:
        layout = build_layout(config.bits)
        text = export_text(build_grover_circuit(layout, config.target, report.iterations), layout.registers())
        with open(config.export_circuit, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)

    out.write(render_report(report, config.format, config.top))
    return EXIT_OK


def verify(config: RunConfig, k_max: int = 8, adder_hook=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        config.validate()
        results = run_checks(config.bits, config.target, k_max, adder_hook, config.max_width)
    except CapacityError as exc:
        print(f"qdiophantine: {exc}", file=err)
        return EXIT_CAPACITY
    except ValueError as exc:
        print(f"qdiophantine: {exc}", file=err)
        return EXIT_USAGE
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}", file=out)
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"qdiophantine: verification failed: {', '.join(failed)}", file=err)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] not in ("run", "verify", "-h", "--help"):
        argv.insert(0, "run")
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    if args.command == "verify":
        cfg = RunConfig(args.bits, args.target, max_width=args.max_width)
        return verify(cfg, k_max=args.max_iterations)
    cfg = RunConfig(
        bits=args.bits, target=args.target, iterations=args.iterations, shots=args.shots,
        seed=args.seed, format=args.format, top=args.top, export_circuit=args.export_circuit,
        force=args.force, max_width=args.max_width,
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
