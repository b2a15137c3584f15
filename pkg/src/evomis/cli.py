"""Command-line front end: ``evomis solve``, ``evomis verify``, ``evomis partition``.

Exit codes: 0 ok, 1 usage, 2 I/O or format error, 3 invariant violation
(including an invalid solution passed to ``verify``).
"""
from __future__ import annotations

import argparse
import logging
import os
import random
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .arw import PerturbConfig
from .construction import CONSTRUCTORS
from .convergence import AggregateReport, ConvergenceLog, StepClock
from .errors import GraphFormatError, InvariantViolation
from .evolution import EvoConfig, evolve, solve_arw
from .graph import Graph, Individual, is_independent_set, is_maximal, read_graph
from .partition import kway_separator, partition_kway, write_partition

log = logging.getLogger("evomis")

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_INVARIANT = 0, 1, 2, 3
ALGOS = ("evomis", "arw", "greedy-deg", "greedy-vc", "random")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _partitioner(value: str) -> str:
    if value in ("builtin", "bfs") or (value.startswith("import:") and len(value) > 7):
        return value
    raise argparse.ArgumentTypeError("expected builtin, bfs or import:<path-template>")


def _on_off(value: str) -> bool:
    if value not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected on or off")
    return value == "on"


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="evomis", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="compute an independent set")
    s.add_argument("--graph", required=True, help="METIS or DIMACS file (auto-detected)")
    s.add_argument("--algo", choices=ALGOS, default="evomis")
    s.add_argument("--time-limit", type=float, default=10.0, help="seconds per repetition")
    s.add_argument("--seed", type=int, default=None, help="base seed (fallback: $EVOMIS_SEED, then 0)")
    s.add_argument("--repetitions", type=int, default=5)
    s.add_argument("--out", default="evomis-out", help="output directory")
    s.add_argument("--deterministic-time", action="store_true",
                   help="virtual clock and improvement-counter time stamps")
    s.add_argument("--tick", type=float, default=1e-3, help="virtual seconds per clock read")
    s.add_argument("--population-size", type=int, default=250)
    s.add_argument("--pool-size", type=int, default=30)
    s.add_argument("--arw-iterations", type=int, default=15000)
    s.add_argument("--blocks", type=int, default=64, help="block count of the multi-way combines")
    s.add_argument("--unsuccessful-threshold", type=int, default=200)
    s.add_argument("--multiway-parents", type=int, default=4)
    s.add_argument("--distinct-parents", action="store_true")
    s.add_argument("--operator-mode", choices=("grouped", "uniform"), default="grouped")
    s.add_argument("--perturb-candidates", type=int, default=4)
    s.add_argument("--max-forced", type=int, default=32)
    s.add_argument("--escalate-prob", type=float, default=0.1)
    s.add_argument("--partitioner", type=_partitioner, default="builtin")
    s.add_argument("--init", choices=("mix", "random", "greedy-deg", "greedy-vc"), default="mix")
    s.add_argument("--init-refine", type=_on_off, default=True, metavar="{on,off}")
    s.add_argument("--max-generations", type=int, default=None)
    s.add_argument("--target-size", type=int, default=None, help="stop once this size is reached")

    v = sub.add_parser("verify", help="check a solution file")
    v.add_argument("graph")
    v.add_argument("solution")

    p = sub.add_parser("partition", help="write a partition or separator file")
    p.add_argument("--graph", required=True)
    p.add_argument("--blocks", type=int, default=2)
    p.add_argument("--epsilon", type=float, default=0.03)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--separator", action="store_true", help="label separator nodes with block id k")
    p.add_argument("--out", required=True)
    return parser


def _seed(value):
    if value is not None:
        return value
    env = os.environ.get("EVOMIS_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise SystemExit(f"evomis: error: EVOMIS_SEED={env!r} is not an integer") from None


# ---- solve ---------------------------------------------------------------------


def _config(args, seed) -> EvoConfig:
    return EvoConfig(
        population_size=args.population_size,
        pool_size=args.pool_size,
        arw_iterations=args.arw_iterations,
        multiway_k=args.blocks,
        unsuccessful_threshold=args.unsuccessful_threshold,
        time_limit=args.time_limit,
        seed=seed,
        perturb=PerturbConfig(args.perturb_candidates, args.max_forced, args.escalate_prob),
        multiway_parents=args.multiway_parents,
        distinct_parents=args.distinct_parents,
        operator_mode=args.operator_mode,
        init=args.init,
        init_refine=args.init_refine,
        partitioner=args.partitioner,
        max_generations=args.max_generations,
        target_size=args.target_size,
    )


def solve_once(g: Graph, args, seed: int) -> tuple[Individual, ConvergenceLog]:
    clock = StepClock(args.tick) if args.deterministic_time else time.perf_counter
    run_log = ConvergenceLog(deterministic=args.deterministic_time)
    rng = random.Random(seed)
    if args.algo == "evomis":
        best, run_log = evolve(g, _config(args, seed), rng, clock, run_log)
    elif args.algo == "arw":
        perturb = PerturbConfig(args.perturb_candidates, args.max_forced, args.escalate_prob)
        best, run_log = solve_arw(g, args.time_limit, rng, clock, run_log, perturb, args.target_size)
    else:
        best = CONSTRUCTORS[args.algo](g, rng)
        run_log.start(best.size)
    run_log.meta.update(seed=seed, algo=args.algo, instance=Path(args.graph).stem)
    return best, run_log


def run_solve(args) -> int:
    seed = _seed(args.seed)
    if args.repetitions < 1 or args.time_limit < 0:
        print("evomis: error: --repetitions must be >= 1 and --time-limit >= 0", file=sys.stderr)
        return EXIT_USAGE
    try:
        _config(args, seed)
    except ValueError as exc:
        print(f"evomis: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    g = read_graph(args.graph)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    logs = []
    for rep in range(args.repetitions):
        best, run_log = solve_once(g, args, seed + rep)
        if not is_independent_set(g, best) or not is_maximal(g, best):
            raise InvariantViolation(f"repetition {rep} produced an invalid or non-maximal set")
        (out / f"run_{rep}.jsonl").write_text(run_log.to_jsonl())
        (out / f"run_{rep}.sol").write_text("".join(f"{v}\n" for v in best.nodes().tolist()))
        log.info("repetition %d: size %d", rep, best.size)
        logs.append(run_log)
    report = AggregateReport.from_logs(Path(args.graph).stem, g.n, args.algo, logs)
    (out / "aggregate.csv").write_text(report.to_csv())
    (out / "curve.csv").write_text(report.curve_csv())
    print(f"{report.instance}: avg {report.avg:g} max {report.max} min {report.min} over {report.reps} runs")
    return EXIT_OK


# ---- verify --------------------------------------------------------------------


@dataclass
class VerificationReport:
    valid: bool
    maximal: bool
    size: int
    offending_edge: tuple | None = None

    def __str__(self):
        if not self.valid:
            return f"INVALID: edge {self.offending_edge} has both endpoints in the set"
        return f"valid, {'maximal' if self.maximal else 'not maximal'}, size {self.size}"


def read_solution(g: Graph, text: str) -> Individual:
    """Node ids (0-indexed), one per line."""
    seen = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        tok = line.strip()
        if not tok:
            continue
        try:
            v = int(tok)
        except ValueError:
            raise GraphFormatError(f"non-numeric node id {tok!r}", lineno) from None
        if not 0 <= v < g.n:
            raise GraphFormatError(f"node id {v} out of range [0, {g.n})", lineno)
        if v in seen:
            raise GraphFormatError(f"duplicate node id {v}", lineno)
        seen.add(v)
    return Individual.from_nodes(g.n, sorted(seen))


def verify_solution(graph_path, solution_path) -> VerificationReport:
    g = read_graph(graph_path)
    ind = read_solution(g, Path(solution_path).read_text())
    bits = ind.bits
    both = np.flatnonzero(bits[g.edge_u] & bits[g.edge_v])
    if both.size:
        i = int(both[0])
        return VerificationReport(False, False, ind.size, (int(g.edge_u[i]), int(g.edge_v[i])))
    return VerificationReport(True, is_maximal(g, ind), ind.size)


def run_partition(args) -> int:
    g = read_graph(args.graph)
    rng = random.Random(_seed(args.seed))
    if not 1 < args.blocks <= g.n:
        print(f"evomis: error: --blocks must be in (1, {g.n}]", file=sys.stderr)
        return EXIT_USAGE
    if args.separator:
        result = kway_separator(g, args.blocks, args.epsilon, rng)
        print(f"separator size {result.separator_size}")
    else:
        result = partition_kway(g, args.blocks, args.epsilon, rng)
        print(f"cut {result.cut}")
    Path(args.out).write_text(write_partition(result))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if args.command == "solve":
            return run_solve(args)
        if args.command == "verify":
            report = verify_solution(args.graph, args.solution)
            print(report)
            return EXIT_OK if report.valid else EXIT_INVARIANT
        return run_partition(args)
    except InvariantViolation as exc:
        print(f"evomis: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (OSError, GraphFormatError) as exc:
        print(f"evomis: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
