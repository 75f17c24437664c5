"""Command line interface and benchmark harness.

Subcommands: solve (approximation, optionally scaled), exact (brute-force
oracle), fpt-maxmin (vertex-cover-parameterized exact solver), gen
(instance generator), validate (partition checker) and bench (CSV harness).

Exit codes: 0 success, 2 input error, 3 budget exceeded.  The environment
variable BCP_BUDGET_SECONDS caps oracle and fpt-maxmin run time per
instance.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from dataclasses import dataclass, fields
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .errors import BudgetExceeded, ContractViolation, InputError, ParseError
from .fpt import solve_fpt_maxmin
from .graph import WeightedGraph
from .instances import FAMILIES, generate, parse_instance, write_instance
from .minmax import Certificate, minmax_bcpk
from .oracle import DEFAULT_BUDGET, EnumerationBudget, exact_maxmin, exact_minmax
from .partition import Partition, average_weight_bound, cut_vertex_bound, validate
from .scaling import eps_minmax_bcpk

BUDGET_ENV = "BCP_BUDGET_SECONDS"


@dataclass
class SolveReport:
    value: int
    classes: Partition
    certificate: str
    bound_kind: str | None
    bound: Fraction | None
    iterations: int
    cuts: int
    wall_ms: float


@dataclass
class BenchRecord:
    instance_id: str
    n: int
    m: int
    k: int
    algorithm: str
    value: int
    bound_kind: str
    bound: str
    ratio: str
    iterations: int
    cuts: int
    wall_ms: str


def _budget_seconds() -> float | None:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return None
    try:
        return float(raw)
    except ValueError:
        raise InputError(f"{BUDGET_ENV} must be a number, got {raw!r}") from None


def _enum_budget() -> EnumerationBudget:
    seconds = _budget_seconds()
    if seconds is None:
        return DEFAULT_BUDGET
    return EnumerationBudget(max_seconds=seconds)


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse {text!r} as a rational") from None


def _load_graph(path: str) -> WeightedGraph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return parse_instance(text)


def _sorted_classes(g: WeightedGraph, classes: Sequence[frozenset[int]]) -> list[frozenset[int]]:
    return sorted(classes, key=lambda c: (g.weight(c), min(c)))


def _print_partition(g: WeightedGraph, classes: Sequence[frozenset[int]]) -> None:
    print("partition:")
    for c in _sorted_classes(g, classes):
        print(" ".join(str(v) for v in sorted(c)))


def _fmt_ratio(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator} ({float(value):.6f})"


def _report_common(g: WeightedGraph, report: SolveReport) -> None:
    print(f"value: {report.value}")
    print(f"certificate: {report.certificate}")
    if report.bound is not None:
        print(f"bound ({report.bound_kind}): {report.bound}")
        if report.bound > 0:
            print(f"ratio: {_fmt_ratio(Fraction(report.value) / report.bound)}")
    _print_partition(g, report.classes)
    print(f"iterations: {report.iterations}")
    print(f"time-ms: {report.wall_ms:.1f}")


def _solve_report(g: WeightedGraph, k: int, epsilon: Fraction | None) -> SolveReport:
    start = time.perf_counter()
    if epsilon is None:
        result = minmax_bcpk(g, k)
    else:
        result = eps_minmax_bcpk(g, k, epsilon)
    wall_ms = (time.perf_counter() - start) * 1000
    value = max(g.weight(c) for c in result.classes)
    bound_kind = "average"
    bound: Fraction = average_weight_bound(g, k)
    if (
        epsilon is None
        and result.certificate is Certificate.STAR_OPTIMAL
        and result.star is not None
    ):
        core = next(c for c in result.classes if result.star.u in c)
        if g.weight(core) == value:
            bound_kind = "cut-vertex"
            bound = Fraction(cut_vertex_bound(g, k, result.star.u))
    return SolveReport(
        value=value,
        classes=result.classes,
        certificate=result.certificate.value,
        bound_kind=bound_kind,
        bound=bound,
        iterations=result.iterations,
        cuts=0,
        wall_ms=wall_ms,
    )


def _cmd_solve(args: argparse.Namespace) -> int:
    g = _load_graph(args.instance)
    if args.k == 2:
        raise InputError(
            "k=2 is not supported by the approximation pipeline; "
            "use 'exact' or 'fpt-maxmin'"
        )
    epsilon = _parse_fraction(args.epsilon) if args.epsilon else None
    report = _solve_report(g, args.k, epsilon)
    print(f"instance: {args.instance} (n={g.n}, m={g.m}, W={g.total_weight})")
    print("objective: minmax")
    print(f"k: {args.k}")
    if epsilon is not None:
        print(f"epsilon: {epsilon}")
    _report_common(g, report)
    return 0


def _cmd_exact(args: argparse.Namespace) -> int:
    g = _load_graph(args.instance)
    budget = _enum_budget()
    start = time.perf_counter()
    if args.objective == "minmax":
        value, witness = exact_minmax(g, args.k, budget)
    else:
        value, witness = exact_maxmin(g, args.k, budget)
    wall_ms = (time.perf_counter() - start) * 1000
    print(f"instance: {args.instance} (n={g.n}, m={g.m}, W={g.total_weight})")
    print(f"objective: {args.objective}")
    print(f"k: {args.k}")
    print(f"value: {value}")
    print("certificate: optimal")
    _print_partition(g, witness)
    print(f"time-ms: {wall_ms:.1f}")
    return 0


def _cmd_fpt_maxmin(args: argparse.Namespace) -> int:
    g = _load_graph(args.instance)
    cover = None
    if args.cover:
        try:
            cover = [int(tok) for tok in args.cover.split(",") if tok]
        except ValueError:
            raise InputError(f"bad cover list {args.cover!r}") from None
    start = time.perf_counter()
    result = solve_fpt_maxmin(g, args.k, cover, max_seconds=_budget_seconds())
    wall_ms = (time.perf_counter() - start) * 1000
    print(f"instance: {args.instance} (n={g.n}, m={g.m})")
    print("objective: maxmin (unweighted)")
    print(f"k: {args.k}")
    print(f"cover: {' '.join(str(v) for v in result.model.dec.cover)}")
    print(f"value: {result.value}")
    print("certificate: optimal")
    _print_partition(g, result.classes)
    print(f"nodes: {result.nodes}")
    print(f"cuts: {result.cuts_added}")
    print(f"time-ms: {wall_ms:.1f}")
    if args.dump_model:
        Path(args.dump_model).write_text(result.model.dump())
        print(f"model dumped to {args.dump_model}")
    return 0


def _parse_weight_range(text: str) -> tuple[int, int]:
    try:
        lo, _, hi = text.partition(":")
        return int(lo), int(hi or lo)
    except ValueError:
        raise InputError(f"weights must look like LO:HI, got {text!r}") from None


def _cmd_gen(args: argparse.Namespace) -> int:
    try:
        g = generate(args.family, args.n, _parse_weight_range(args.weights), args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    text = write_instance(g)
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out} (n={g.n}, m={g.m}, W={g.total_weight})")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    g = _load_graph(args.instance)
    try:
        text = Path(args.partition).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {args.partition}: {exc}") from exc
    classes = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        try:
            classes.append(frozenset(int(tok) for tok in line.split()))
        except ValueError:
            raise ParseError("partition lines must hold vertex ids", line_no) from None
    report = validate(g, classes, len(classes))
    if report:
        for item in report:
            print(f"invalid: {item}")
        return 2
    weights = sorted(g.weight(c) for c in classes)
    print(f"valid connected {len(classes)}-partition; class weights {weights}")
    return 0


def _bench_one(entry: dict, index: int) -> BenchRecord:
    for key in ("family", "n", "k", "algorithm"):
        if key not in entry:
            raise InputError(f"suite entry {index} misses {key!r}")
    family = entry["family"]
    n = int(entry["n"])
    k = int(entry["k"])
    lo, hi = entry.get("weights", [1, 1])
    seed = int(entry.get("seed", 0))
    algorithm = entry["algorithm"]
    instance_id = entry.get("id", f"{family}-n{n}-s{seed}")
    try:
        g = generate(family, n, (int(lo), int(hi)), seed)
    except ValueError as exc:
        raise InputError(f"suite entry {index}: {exc}") from exc

    budget = _enum_budget()
    iterations = cuts = 0
    bound_kind, bound = "", None
    start = time.perf_counter()
    if algorithm == "minmax-bcpk":
        result = minmax_bcpk(g, k)
        value = max(g.weight(c) for c in result.classes)
        iterations = result.iterations
        bound_kind, bound = "average", average_weight_bound(g, k)
        if result.certificate is Certificate.STAR_OPTIMAL and result.star is not None:
            core = next(c for c in result.classes if result.star.u in c)
            if g.weight(core) == value:
                bound_kind = "cut-vertex"
                bound = Fraction(cut_vertex_bound(g, k, result.star.u))
    elif algorithm == "eps-minmax-bcpk":
        eps = _parse_fraction(str(entry.get("epsilon", "1/2")))
        result = eps_minmax_bcpk(g, k, eps)
        value = max(g.weight(c) for c in result.classes)
        iterations = result.iterations
        bound_kind, bound = "average", average_weight_bound(g, k)
    elif algorithm == "exact-minmax":
        value, _ = exact_minmax(g, k, budget)
        bound_kind, bound = "oracle", Fraction(value)
    elif algorithm == "exact-maxmin":
        value, _ = exact_maxmin(g, k, budget)
        bound_kind, bound = "oracle", Fraction(value)
    elif algorithm == "fpt-maxmin":
        result = solve_fpt_maxmin(g, k, max_seconds=_budget_seconds())
        value = result.value
        cuts = result.cuts_added
        iterations = result.nodes
        bound_kind, bound = "oracle", Fraction(value)
    else:
        raise InputError(f"suite entry {index}: unknown algorithm {algorithm!r}")
    wall_ms = (time.perf_counter() - start) * 1000

    ratio = ""
    if bound and bound > 0:
        ratio = f"{float(Fraction(value) / bound):.6f}"
    return BenchRecord(
        instance_id=instance_id,
        n=g.n,
        m=g.m,
        k=k,
        algorithm=algorithm,
        value=value,
        bound_kind=bound_kind,
        bound=str(bound) if bound is not None else "",
        ratio=ratio,
        iterations=iterations,
        cuts=cuts,
        wall_ms=f"{wall_ms:.1f}",
    )


def _cmd_bench(args: argparse.Namespace) -> int:
    try:
        suite = json.loads(Path(args.suite).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {args.suite}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"suite is not valid JSON: {exc}") from exc
    entries = suite.get("entries")
    if not isinstance(entries, list):
        raise InputError("suite must hold an 'entries' list")
    records = [_bench_one(entry, i) for i, entry in enumerate(entries)]
    names = [f.name for f in fields(BenchRecord)]
    with open(args.out, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(names)
        for record in records:
            writer.writerow([getattr(record, name) for name in names])
    print(f"wrote {len(records)} records to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bcp", description="Balanced connected k-partition toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="min-max approximation (k >= 3)")
    p.add_argument("instance")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--epsilon", help="rational p/q or decimal; enables scaling")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("exact", help="brute-force exact optimum")
    p.add_argument("instance")
    p.add_argument("--objective", choices=("minmax", "maxmin"), required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=_cmd_exact)

    p = sub.add_parser("fpt-maxmin", help="exact unweighted max-min via vertex cover")
    p.add_argument("instance")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cover", help="comma-separated vertex ids of a cover")
    p.add_argument("--dump-model", help="write model and cut pool to this path")
    p.set_defaults(func=_cmd_fpt_maxmin)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--weights", default="1:1", help="LO:HI inclusive range")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("validate", help="check a partition file")
    p.add_argument("instance")
    p.add_argument("partition")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("bench", help="run a benchmark suite to CSV")
    p.add_argument("--suite", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_bench)

    return parser


def run_cli(argv: Sequence[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (InputError, ContractViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))
