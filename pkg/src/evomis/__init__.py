"""Evolutionary maximum independent set solver with partition-based combine
operators and (1,2)-swap local search."""

from .arw import PerturbConfig, SolutionState, find_12_swap, iterate, local_search, maximize, perturb
from .construction import build_population, greedy_min_residual, greedy_vertex_cover, random_maximal
from .convergence import AggregateReport, ConvergenceLog, StepClock, merge_convergence
from .errors import GraphFormatError, InvariantViolation
from .evolution import EvoConfig, evolve, solve_arw
from .graph import (
    Graph,
    Individual,
    is_independent_set,
    is_maximal,
    parse_dimacs,
    parse_metis,
    read_graph,
    tightness,
    write_metis,
)
from .matching import BipartiteSubgraph, hopcroft_karp, koenig_min_vertex_cover
from .partition import (
    NodeSeparator,
    Partition,
    PartitionPool,
    bfs_partition,
    bipartition_separator,
    build_pool,
    import_partition,
    kway_separator,
    partition_kway,
)

__version__ = "0.1.0"

__all__ = [
    "AggregateReport",
    "bfs_partition",
    "BipartiteSubgraph",
    "bipartition_separator",
    "build_pool",
    "build_population",
    "ConvergenceLog",
    "EvoConfig",
    "evolve",
    "find_12_swap",
    "Graph",
    "GraphFormatError",
    "greedy_min_residual",
    "greedy_vertex_cover",
    "hopcroft_karp",
    "import_partition",
    "Individual",
    "InvariantViolation",
    "is_independent_set",
    "is_maximal",
    "iterate",
    "koenig_min_vertex_cover",
    "kway_separator",
    "local_search",
    "maximize",
    "merge_convergence",
    "NodeSeparator",
    "parse_dimacs",
    "parse_metis",
    "Partition",
    "partition_kway",
    "PartitionPool",
    "perturb",
    "PerturbConfig",
    "random_maximal",
    "read_graph",
    "SolutionState",
    "solve_arw",
    "StepClock",
    "tightness",
    "write_metis",
]
