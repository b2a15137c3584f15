"""Steady-state evolutionary algorithm with partition-based combine operators.

Every operator here returns a valid maximal independent set: blocks of the
parents are exchanged across a node separator (no edges between blocks) or
across an edge separator, where the tentative vertex cover is repaired on
the cut edges before it is complemented.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import arw
from .arw import PerturbConfig, SolutionState
from .buckets import greedy_cover
from .construction import greedy_min_residual, make_individual
from .convergence import ConvergenceLog
from .errors import InvariantViolation
from .graph import Graph, Individual
from .matching import BipartiteSubgraph, hopcroft_karp, koenig_min_vertex_cover
from .partition import SEPARATOR, NodeSeparator, Partition, PartitionPool

__all__ = [
    "EvoConfig",
    "Offspring",
    "Population",
    "tournament_select",
    "combine_node_separator",
    "combine_edge_separator",
    "combine_multiway_separator",
    "combine_multiway_partition",
    "mutate",
    "evict",
    "evolve",
    "solve_arw",
]


@dataclass
class EvoConfig:
    population_size: int = 250
    pool_size: int = 30
    arw_iterations: int = 15000
    multiway_k: int = 64
    unsuccessful_threshold: int = 200
    time_limit: float = 10.0
    seed: int = 0
    perturb: PerturbConfig = field(default_factory=PerturbConfig)
    multiway_parents: int = 4
    distinct_parents: bool = False
    # "grouped": node-sep / edge-sep / multi-way with equal odds, the two
    # multi-way variants sharing the last third; "uniform": all four equal
    operator_mode: str = "grouped"
    init: str = "mix"
    init_refine: bool = True
    partitioner: str = "builtin"
    max_generations: Optional[int] = None
    target_size: Optional[int] = None

    def __post_init__(self):
        for name in ("population_size", "pool_size", "multiway_k", "unsuccessful_threshold", "multiway_parents"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.arw_iterations < 0:
            raise ValueError("arw_iterations must be >= 0")
        if self.operator_mode not in ("grouped", "uniform"):
            raise ValueError(f"unknown operator_mode {self.operator_mode!r}")
        if self.init not in ("mix", "random", "greedy-deg", "greedy-vc"):
            raise ValueError(f"unknown init {self.init!r}")


@dataclass
class Offspring:
    individual: Individual
    operator: str
    parents: tuple = ()
    success: Optional[bool] = None
    info: dict = field(default_factory=dict, repr=False)


class Population:
    """Fixed-capacity set of maximal independent sets.

    Bit arrays are also kept row-wise in ``matrix`` so Hamming distances to
    an offspring are one vectorized comparison.
    """

    def __init__(self, members: Sequence[Individual]):
        if not members:
            raise ValueError("empty population")
        self.members = list(members)
        self.capacity = len(self.members)
        self.matrix = np.stack([m.bits for m in self.members])
        self.sizes = np.array([m.size for m in self.members])
        i = int(np.argmax(self.sizes))
        self.best_ever = self.members[i]
        self.best_time = 0.0
        self.last_replaced: Optional[int] = None

    def __len__(self):
        return len(self.members)

    def replace(self, i: int, ind: Individual) -> None:
        self.members[i] = ind
        self.matrix[i] = ind.bits
        self.sizes[i] = ind.size

    def note(self, ind: Individual, t: float = 0.0) -> bool:
        if ind.size > self.best_ever.size:
            self.best_ever = ind
            self.best_time = t
            return True
        return False


# ---- selection ----------------------------------------------------------------


def _tournament(pop: Population, rng: random.Random, exclude: int | None = None) -> int:
    n = len(pop)

    def draw():
        while True:
            i = rng.randrange(n)
            if exclude is None or i != exclude or n == 1:
                return i

    a, b = draw(), draw()
    return b if pop.sizes[b] > pop.sizes[a] else a


def tournament_select(pop: Population, rng: random.Random) -> Individual:
    """The fitter of two uniformly drawn members (first draw wins ties)."""
    return pop.members[_tournament(pop, rng)]


# ---- combine operators ------------------------------------------------------------


def _finish(g: Graph, bits: np.ndarray, rng: random.Random) -> Individual:
    """Maximize, then one local-search pass without perturbation."""
    st = SolutionState(g, bits)
    arw.local_search(st, rng)
    return st.to_individual()


def _uncovered(g: Graph, cover: np.ndarray, assignment: np.ndarray):
    mask = ~cover[g.edge_u] & ~cover[g.edge_v]
    u, v = g.edge_u[mask], g.edge_v[mask]
    inside = assignment[u] == assignment[v]
    if np.any(inside):
        i = int(np.flatnonzero(inside)[0])
        raise InvariantViolation(f"uncovered edge ({u[i]}, {v[i]}) is not a cut edge")
    return u, v


def combine_node_separator(
    g: Graph, p1: Individual, p2: Individual, sep: NodeSeparator, rng: random.Random
) -> Offspring:
    """Swap the parents' solutions between the two blocks of a separator."""
    a = sep.assignment
    v1, v2 = a == 0, a == 1
    o1 = (v1 & p1.bits) | (v2 & p2.bits)
    o2 = (v1 & p2.bits) | (v2 & p1.bits)
    c1, c2 = _finish(g, o1, rng), _finish(g, o2, rng)
    best = c1 if c1.size >= c2.size else c2
    return Offspring(best, "node-separator", info={"candidates": (o1, o2)})


def _bipartite_repair(g: Graph, cover: np.ndarray, assignment: np.ndarray):
    u, v = _uncovered(g, cover, assignment)
    if u.size:
        left = np.where(assignment[u] == 0, u, v).tolist()
        right = np.where(assignment[u] == 0, v, u).tolist()
        b = BipartiteSubgraph.from_edges(zip(left, right))
        extra = koenig_min_vertex_cover(b, hopcroft_karp(b))
        cover = cover.copy()
        cover[sorted(extra)] = True
    return cover, (u, v)


def combine_edge_separator(
    g: Graph, p1: Individual, p2: Individual, part: Partition, rng: random.Random
) -> Offspring:
    """Exchange vertex-cover blocks across a bipartition.

    Edges left uncovered can only be cut edges; they are covered with a
    minimum vertex cover of the bipartite graph they induce.
    """
    a = part.assignment
    v1 = a == 0
    v2 = ~v1
    c1, c2 = ~p1.bits, ~p2.bits
    d1 = (c1 & v1) | (c2 & v2)
    d2 = (c1 & v2) | (c2 & v1)
    results = []
    uncovered = []
    for d in (d1, d2):
        cover, unc = _bipartite_repair(g, d, a)
        uncovered.append(unc)
        results.append(_finish(g, ~cover, rng))
    best = results[0] if results[0].size >= results[1].size else results[1]
    return Offspring(best, "edge-separator", info={"uncovered": uncovered})


def combine_multiway_separator(
    g: Graph, parents: Sequence[Individual], sep: NodeSeparator, rng: random.Random
) -> Offspring:
    """Per block, take the parent with the most solution nodes in it."""
    a = sep.assignment
    bits = np.stack([p.bits for p in parents])
    idx = np.flatnonzero(a != SEPARATOR)
    blocks = a[idx]
    scores = np.stack([np.bincount(blocks[b[idx]], minlength=sep.k) for b in bits])
    choice = np.argmax(scores, axis=0)
    off = np.zeros(g.n, dtype=bool)
    off[idx] = bits[choice[blocks], idx]
    return Offspring(
        _finish(g, off, rng), "multiway-separator", info={"choice": choice, "candidate": off}
    )


def combine_multiway_partition(
    g: Graph, parents: Sequence[Individual], part: Partition, rng: random.Random
) -> Offspring:
    """Per block, take the parent whose vertex cover has the fewest nodes in
    it; uncovered cut edges are then fixed with the greedy cover."""
    a = part.assignment
    covers = ~np.stack([p.bits for p in parents])
    scores = np.stack([np.bincount(a[c], minlength=part.k) for c in covers])
    choice = np.argmin(scores, axis=0)
    d = covers[choice[a], np.arange(g.n)]
    u, v = _uncovered(g, d, a)
    if u.size:
        adj: dict[int, list[int]] = {}
        for x, y in zip(u.tolist(), v.tolist()):
            adj.setdefault(x, []).append(y)
            adj.setdefault(y, []).append(x)
        d[greedy_cover(sorted(adj), adj, rng)] = True
    return Offspring(
        _finish(g, ~d, rng), "multiway-partition", info={"choice": choice, "uncovered": [(u, v)]}
    )


def mutate(g: Graph, o: Offspring, rng: random.Random, cfg: PerturbConfig | None = None) -> Offspring:
    """Forced insertions followed by local search."""
    st = SolutionState(g, o.individual)
    arw.perturb(st, rng, cfg)
    arw.local_search(st, rng)
    return Offspring(st.to_individual(), o.operator, o.parents, o.success, o.info)


def evict(pop: Population, o: Offspring) -> bool:
    """Replace the member most similar to ``o`` among those no larger than it.

    Similarity is Hamming distance; ties go to the smaller member, then the
    lower index.  Returns False (nothing replaced) if every member is larger.
    """
    ind = o.individual
    eligible = np.flatnonzero(pop.sizes <= ind.size)
    if eligible.size == 0:
        pop.last_replaced = None
        return False
    dist = np.count_nonzero(pop.matrix[eligible] != ind.bits, axis=1)
    order = np.lexsort((eligible, pop.sizes[eligible], dist))
    i = int(eligible[order[0]])
    pop.replace(i, ind)
    pop.last_replaced = i
    pop.note(ind)
    return True


# ---- drivers ---------------------------------------------------------------------


class _Budget:
    def __init__(self, cfg_time: float, clock, target, max_generations=None):
        self.clock = clock
        self.start = clock()
        self.time_limit = cfg_time
        self.target = target
        self.max_generations = max_generations
        self.best = 0
        self.generations = 0

    def elapsed(self) -> float:
        return self.clock() - self.start

    def expired(self) -> bool:
        if self.target is not None and self.best >= self.target:
            return True
        if self.max_generations is not None and self.generations >= self.max_generations:
            return True
        return self.elapsed() >= self.time_limit


def _pick_operator(cfg: EvoConfig, rng: random.Random) -> str:
    if cfg.operator_mode == "uniform":
        return ("node-separator", "edge-separator", "multiway-separator", "multiway-partition")[rng.randrange(4)]
    family = rng.randrange(3)
    if family == 0:
        return "node-separator"
    if family == 1:
        return "edge-separator"
    return "multiway-separator" if rng.random() < 0.5 else "multiway-partition"


def evolve(
    g: Graph,
    cfg: EvoConfig,
    rng: random.Random | None = None,
    clock: Callable[[], float] | None = None,
    log: ConvergenceLog | None = None,
) -> tuple[Individual, ConvergenceLog]:
    """Run the evolutionary algorithm until the time limit.

    Returns the best individual that ever occurred and its convergence log.
    """
    rng = rng or random.Random(cfg.seed)
    budget = _Budget(cfg.time_limit, clock or time.perf_counter, cfg.target_size, cfg.max_generations)
    log = log if log is not None else ConvergenceLog()

    members = []
    for _ in range(cfg.population_size):
        if members and budget.expired():
            break
        seed = rng.getrandbits(64)
        members.append(make_individual(g, random.Random(seed), cfg.init, cfg.init_refine))
        budget.best = max(budget.best, members[-1].size)
    pop = Population(members)
    log.start(pop.best_ever.size)

    def note(ind):
        if pop.note(ind, budget.elapsed()):
            budget.best = ind.size
            log.improve(ind.size, pop.best_time)

    if g.n < 2 or g.m == 0:
        return pop.best_ever, log

    pool = PartitionPool(g, cfg.pool_size, cfg.multiway_k, rng.getrandbits(63), cfg.partitioner)
    failures = 0
    while not budget.expired():
        budget.generations += 1
        op = _pick_operator(cfg, rng)
        if op in ("node-separator", "edge-separator"):
            i1 = _tournament(pop, rng)
            i2 = _tournament(pop, rng, exclude=i1 if cfg.distinct_parents else None)
            parents = (i1, i2)
            p1, p2 = pop.members[i1], pop.members[i2]
            if op == "node-separator":
                off = combine_node_separator(g, p1, p2, pool.random_entry("biseparator", rng), rng)
            else:
                off = combine_edge_separator(g, p1, p2, pool.random_entry("bipartition", rng), rng)
        else:
            chosen: list[int] = []
            for _ in range(cfg.multiway_parents):
                ex = None
                if cfg.distinct_parents and chosen and len(chosen) < len(pop):
                    ex = chosen[-1]
                chosen.append(_tournament(pop, rng, exclude=ex))
            parents = tuple(chosen)
            ps = [pop.members[i] for i in parents]
            if op == "multiway-separator":
                off = combine_multiway_separator(g, ps, pool.random_entry("multiway_separator", rng), rng)
            else:
                off = combine_multiway_partition(g, ps, pool.random_entry("multiway_partition", rng), rng)
        off.parents = parents
        note(off.individual)
        off = mutate(g, off, rng, cfg.perturb)
        note(off.individual)

        best_parent = max(pop.sizes[i] for i in parents)
        off.success = off.individual.size > best_parent
        if evict(pop, off):
            i = pop.last_replaced
            if cfg.arw_iterations:
                st = SolutionState(g, pop.members[i])
                refined = arw.iterate(st, cfg.arw_iterations, rng, cfg.perturb, should_stop=budget.expired)
                if refined.size > pop.members[i].size:
                    pop.replace(i, refined)
                note(refined)
        failures = 0 if off.success else failures + 1
        if failures >= cfg.unsuccessful_threshold:
            pool.refresh(rng.getrandbits(63))
            failures = 0
    log.meta["generations"] = budget.generations
    log.meta["pool_generation"] = pool.generation
    return pop.best_ever, log


def solve_arw(
    g: Graph,
    time_limit: float,
    rng: random.Random,
    clock: Callable[[], float] | None = None,
    log: ConvergenceLog | None = None,
    perturb: PerturbConfig | None = None,
    target_size: int | None = None,
    max_iterations: int | None = None,
) -> tuple[Individual, ConvergenceLog]:
    """Plain iterated local search from a greedy start."""
    budget = _Budget(time_limit, clock or time.perf_counter, target_size)
    log = log if log is not None else ConvergenceLog()
    st = SolutionState(g, greedy_min_residual(g, rng))
    arw.local_search(st, rng)
    best = st.to_individual()
    budget.best = best.size
    log.start(best.size)
    it = 0
    while max_iterations is None or it < max_iterations:
        if it % 32 == 0 and budget.expired():
            break
        it += 1
        arw.perturb(st, rng, perturb)
        arw.local_search(st, rng)
        if st.size > best.size:
            best = st.to_individual()
            budget.best = best.size
            log.improve(best.size, budget.elapsed())
    log.meta["iterations"] = it
    return best, log
