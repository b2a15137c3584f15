"""Initial solutions: random, min-residual-degree greedy, and the complement
of a greedy vertex cover."""
from __future__ import annotations

import random

import numpy as np

from . import arw
from .buckets import greedy_cover, min_residual_picks
from .graph import Graph, Individual

__all__ = [
    "CONSTRUCTORS",
    "random_maximal",
    "greedy_min_residual",
    "greedy_vertex_cover",
    "make_individual",
    "build_population",
]


def random_maximal(g: Graph, rng: random.Random) -> Individual:
    """Visit nodes in random order, adding each one that is still free."""
    order = list(range(g.n))
    rng.shuffle(order)
    adj = g.adj
    in_set = [False] * g.n
    for v in order:
        if not any(in_set[u] for u in adj[v]):
            in_set[v] = True
    return Individual(np.array(in_set, dtype=bool))


def greedy_min_residual(g: Graph, rng: random.Random, restrict_to=None) -> Individual:
    """Greedy by least residual degree; ties broken uniformly at random.

    With ``restrict_to`` only those nodes are candidates and only they count
    toward residual degrees.
    """
    universe = range(g.n) if restrict_to is None else sorted(restrict_to)
    return Individual.from_nodes(g.n, min_residual_picks(universe, g.adj, rng))


def greedy_vertex_cover(g: Graph, rng: random.Random, maximal: bool = True) -> Individual:
    """Complement of a greedy vertex cover.

    The complement of a greedy cover need not be maximal, so by default the
    remaining free nodes are filled in with the min-residual greedy.
    """
    bits = np.ones(g.n, dtype=bool)
    bits[greedy_cover(range(g.n), g.adj, rng)] = False
    if maximal:
        adj = g.adj
        in_set = bits.tolist()
        free = [v for v in range(g.n) if not in_set[v] and not any(in_set[u] for u in adj[v])]
        bits[min_residual_picks(free, adj, rng)] = True
    return Individual(bits)


CONSTRUCTORS = {
    "random": random_maximal,
    "greedy-deg": greedy_min_residual,
    "greedy-vc": greedy_vertex_cover,
}


def make_individual(g: Graph, rng: random.Random, init: str = "mix", refine: bool = True) -> Individual:
    """One population member; ``init="mix"`` picks a constructor uniformly."""
    if init == "mix":
        init = rng.choice(("random", "greedy-deg", "greedy-vc"))
    ind = CONSTRUCTORS[init](g, rng)
    if refine:
        st = arw.SolutionState(g, ind)
        arw.local_search(st, rng)
        ind = st.to_individual()
    return ind


def build_population(
    g: Graph, size: int, rng: random.Random, init: str = "mix", refine: bool = True
) -> list[Individual]:
    if size < 1:
        raise ValueError("population size must be >= 1")
    seeds = [rng.getrandbits(64) for _ in range(size)]
    return [make_individual(g, random.Random(s), init, refine) for s in seeds]
