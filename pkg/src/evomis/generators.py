"""Small graph families used by the tests and demos."""
from __future__ import annotations

import random

import numpy as np

from .graph import Graph


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    """Star with center 0 and leaves ``1..leaves``."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def empty_graph(n: int) -> Graph:
    return Graph.from_edges(n, [])


def grid_graph(rows: int, cols: int) -> Graph:
    """Rows x cols grid; node ``r * cols + c``."""
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph.from_edges(rows * cols, edges)


def erdos_renyi(n: int, p: float, seed=None) -> Graph:
    """G(n, p) random graph."""
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    return Graph.from_edges(n, zip(iu[keep].tolist(), ju[keep].tolist()))


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return Graph.from_edges(offset, edges)


def random_graph_mix(rng: random.Random, max_n: int = 200) -> Graph:
    """Either an Erdos-Renyi graph or a grid with at most ``max_n`` nodes."""
    if rng.random() < 0.5:
        n = rng.randint(2, max_n)
        avg_deg = rng.uniform(1.0, 8.0)
        return erdos_renyi(n, min(1.0, avg_deg / max(n - 1, 1)), rng.getrandbits(32))
    rows = rng.randint(1, min(14, max(1, max_n // 2)))
    cols = rng.randint(2, max(2, max_n // rows))
    return grid_graph(rows, cols)
