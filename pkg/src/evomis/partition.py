"""Balanced k-way partitions, node separators and the partition pool.

The built-in partitioner grows blocks greedily (each step adds the frontier
node with the best in-minus-out edge count) and then refines them with
size-constrained label propagation.  It is single-level; partitions from an
external tool can be imported instead.
"""
from __future__ import annotations

import heapq
import math
import random
from collections import deque
from dataclasses import dataclass

import numpy as np

from .buckets import greedy_cover
from .errors import GraphFormatError, InvariantViolation
from .graph import Graph
from .matching import BipartiteSubgraph, hopcroft_karp, koenig_min_vertex_cover

__all__ = [
    "SEPARATOR",
    "Partition",
    "NodeSeparator",
    "PartitionPool",
    "block_limit",
    "partition_kway",
    "bipartition_separator",
    "separator_from_partition",
    "kway_separator",
    "bfs_partition",
    "import_partition",
    "write_partition",
    "build_pool",
]

SEPARATOR = -1
EPSILON_RANGE = (0.05, 0.75)


def block_limit(n: int, k: int, epsilon: float) -> int:
    """Largest admissible block size, floor((1 + eps) * ceil(n / k))."""
    return math.floor((1.0 + epsilon) * math.ceil(n / k) + 1e-9)


def _cut(g: Graph, assignment: np.ndarray) -> int:
    return int(np.count_nonzero(assignment[g.edge_u] != assignment[g.edge_v]))


@dataclass(eq=False)
class Partition:
    k: int
    assignment: np.ndarray
    epsilon: float
    cut: int
    block_sizes: np.ndarray

    @classmethod
    def from_assignment(cls, g: Graph, assignment, k: int, epsilon: float) -> "Partition":
        a = np.asarray(assignment, dtype=np.int64)
        sizes = np.bincount(a, minlength=k)
        return cls(k, a, float(epsilon), _cut(g, a), sizes)

    @property
    def l_max(self) -> int:
        return block_limit(self.assignment.size, self.k, self.epsilon)

    @property
    def balanced(self) -> bool:
        return bool(self.block_sizes.max(initial=0) <= self.l_max)

    @property
    def usable(self) -> bool:
        """Whether a combine operator can use it (at least two nonempty blocks)."""
        return self.k >= 2 and np.count_nonzero(self.block_sizes) >= 2

    def block(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.assignment == i)

    def check(self, g: Graph) -> None:
        a = self.assignment
        if a.shape != (g.n,) or a.min(initial=0) < 0 or a.max(initial=0) >= self.k:
            raise InvariantViolation("assignment out of range")
        if not np.array_equal(np.bincount(a, minlength=self.k), self.block_sizes):
            raise InvariantViolation("block sizes do not match the assignment")
        if self.block_sizes.sum() != g.n:
            raise InvariantViolation("block sizes do not sum to n")
        if _cut(g, a) != self.cut:
            raise InvariantViolation("cut does not match recount")
        if not self.balanced:
            raise InvariantViolation(
                f"block of size {self.block_sizes.max()} exceeds L_max={self.l_max}"
            )


@dataclass(eq=False)
class NodeSeparator:
    """Blocks ``0..k-1`` plus separator nodes labelled ``SEPARATOR``."""

    k: int
    assignment: np.ndarray
    epsilon: float

    @property
    def separator(self) -> np.ndarray:
        return np.flatnonzero(self.assignment == SEPARATOR)

    @property
    def separator_size(self) -> int:
        return int(np.count_nonzero(self.assignment == SEPARATOR))

    @property
    def block_sizes(self) -> np.ndarray:
        a = self.assignment
        return np.bincount(a[a != SEPARATOR], minlength=self.k)

    def block(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.assignment == i)

    def check(self, g: Graph, balance: bool = True) -> None:
        a = self.assignment
        lu, lv = a[g.edge_u], a[g.edge_v]
        bad = (lu != lv) & (lu != SEPARATOR) & (lv != SEPARATOR)
        if np.any(bad):
            i = int(np.flatnonzero(bad)[0])
            raise InvariantViolation(
                f"edge ({g.edge_u[i]}, {g.edge_v[i]}) joins blocks {lu[i]} and {lv[i]}"
            )
        if balance and self.block_sizes.max(initial=0) > block_limit(g.n, self.k, self.epsilon):
            raise InvariantViolation("separator block exceeds L_max")


# ---- built-in partitioner ---------------------------------------------------


def _grow(g: Graph, k: int, rng: random.Random) -> list[int]:
    """Greedy graph growing: blocks one after another, each step taking the
    frontier node with the most edges into the block minus edges out."""
    n, adj = g.n, g.adj
    deg = [len(nb) for nb in adj]
    assign = [-1] * n
    order = list(range(n))
    rng.shuffle(order)
    cursor = 0
    remaining = n
    for b in range(k):
        target = -(-remaining // (k - b))
        conn: dict[int, int] = {}
        heap: list = []
        size = 0
        while size < target:
            v = -1
            while heap:
                neg_gain, _, u = heapq.heappop(heap)
                if assign[u] == -1 and -neg_gain == 2 * conn[u] - deg[u]:
                    v = u
                    break
            if v == -1:
                while assign[order[cursor]] != -1:
                    cursor += 1
                v = order[cursor]
            assign[v] = b
            size += 1
            remaining -= 1
            for u in adj[v]:
                if assign[u] == -1:
                    c = conn.get(u, 0) + 1
                    conn[u] = c
                    heapq.heappush(heap, (deg[u] - 2 * c, rng.random(), u))
    return assign


def _label_propagation(g, assign, k, lmax, rng, rounds):
    """Move nodes to the neighboring block with the largest positive gain,
    never past ``lmax``; ties uniformly at random."""
    adj = g.adj
    sizes = [0] * k
    for b in assign:
        sizes[b] += 1
    order = list(range(g.n))
    for _ in range(rounds):
        rng.shuffle(order)
        moved = 0
        for v in order:
            nb = adj[v]
            if not nb:
                continue
            a = assign[v]
            conn: dict[int, int] = {}
            for u in nb:
                b = assign[u]
                conn[b] = conn.get(b, 0) + 1
            own = conn.get(a, 0)
            best_gain = 0
            best: list[int] = []
            for b, c in conn.items():
                if b == a or sizes[b] >= lmax:
                    continue
                gain = c - own
                if gain > best_gain:
                    best_gain = gain
                    best = [b]
                elif gain == best_gain and gain > 0:
                    best.append(b)
            if best:
                b = best[rng.randrange(len(best))] if len(best) > 1 else best[0]
                assign[v] = b
                sizes[a] -= 1
                sizes[b] += 1
                moved += 1
        if not moved:
            break


def partition_kway(
    g: Graph,
    k: int,
    epsilon: float,
    rng: random.Random,
    restarts: int = 3,
    rounds: int = 10,
) -> Partition:
    """Balanced k-way partition; the best of ``restarts`` attempts by cut."""
    if not 1 < k <= g.n:
        raise ValueError(f"need 1 < k <= n, got k={k}, n={g.n}")
    if epsilon < 0:
        raise ValueError("epsilon must be >= 0")
    lmax = block_limit(g.n, k, epsilon)
    best = None
    best_cut = None
    for _ in range(max(1, restarts)):
        assign = _grow(g, k, rng)
        _label_propagation(g, assign, k, lmax, rng, rounds)
        a = np.array(assign, dtype=np.int64)
        cut = _cut(g, a)
        if best is None or cut < best_cut:
            best, best_cut = a, cut
    return Partition.from_assignment(g, best, k, epsilon)


def _cut_edges(g: Graph, assignment: np.ndarray):
    a = assignment
    mask = a[g.edge_u] != a[g.edge_v]
    return g.edge_u[mask], g.edge_v[mask]


def bipartition_separator(g: Graph, p: Partition) -> NodeSeparator:
    """Separator = minimum vertex cover of the cut edges of a bipartition."""
    if p.k != 2:
        raise ValueError("bipartition_separator needs k == 2")
    a = p.assignment
    cu, cv = _cut_edges(g, a)
    left = np.where(a[cu] == 0, cu, cv).tolist()
    right = np.where(a[cu] == 0, cv, cu).tolist()
    labels = a.copy()
    if left:
        b = BipartiteSubgraph.from_edges(zip(left, right))
        cover = koenig_min_vertex_cover(b, hopcroft_karp(b))
        labels[sorted(cover)] = SEPARATOR
    return NodeSeparator(2, labels, p.epsilon)


def separator_from_partition(g: Graph, p: Partition, rng: random.Random) -> NodeSeparator:
    """Turn a partition into a node separator by covering its cut edges.

    Exact (Koenig) for two blocks, greedy max-coverage otherwise.
    """
    if p.k == 2:
        return bipartition_separator(g, p)
    cu, cv = _cut_edges(g, p.assignment)
    adj: dict[int, list[int]] = {}
    for u, v in zip(cu.tolist(), cv.tolist()):
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    labels = p.assignment.copy()
    cover = greedy_cover(sorted(adj), adj, rng)
    labels[cover] = SEPARATOR
    return NodeSeparator(p.k, labels, p.epsilon)


def kway_separator(g: Graph, k: int, epsilon: float, rng: random.Random, **kwargs) -> NodeSeparator:
    return separator_from_partition(g, partition_kway(g, k, epsilon, rng, **kwargs), rng)


def bfs_partition(g: Graph, rng: random.Random, target: int | None = None, start: int | None = None) -> Partition:
    """Two blocks: the first ``target`` nodes touched by a BFS from a random
    start, and everything else.

    The search stops early if the start's component runs out, so the result
    can be unbalanced; ``epsilon`` records the imbalance actually reached.
    """
    n, adj = g.n, g.adj
    if target is None:
        target = -(-n // 2)
    if start is None:
        start = rng.randrange(n)
    seen = {start}
    touched = [start]
    queue = deque([start])
    while queue and len(touched) < target:
        v = queue.popleft()
        nb = list(adj[v])
        rng.shuffle(nb)
        for u in nb:
            if u not in seen:
                seen.add(u)
                touched.append(u)
                queue.append(u)
                if len(touched) >= target:
                    break
    assign = np.ones(n, dtype=np.int64)
    assign[touched] = 0
    sizes = np.bincount(assign, minlength=2)
    eps = max(0.0, sizes.max() / math.ceil(n / 2) - 1.0)
    return Partition.from_assignment(g, assign, 2, eps)


def import_partition(g: Graph, text: str, k: int | None = None, epsilon: float = 0.03) -> Partition:
    """Read a METIS partition file (one block id per line).

    Balance against ``epsilon`` is reported via ``Partition.balanced``, not
    enforced.  A single-block file yields ``k == 1`` and ``usable == False``.
    """
    ids = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        tok = line.strip()
        if not tok:
            continue
        try:
            b = int(tok)
        except ValueError:
            raise GraphFormatError(f"non-numeric block id {tok!r}", lineno) from None
        if b < 0 or (k is not None and b >= k):
            raise GraphFormatError(f"block id {b} out of range", lineno)
        ids.append(b)
    if len(ids) != g.n:
        raise GraphFormatError(f"partition has {len(ids)} entries, graph has {g.n} nodes")
    if k is None:
        k = max(ids, default=0) + 1
    return Partition.from_assignment(g, ids, k, epsilon)


def write_partition(p: Partition | NodeSeparator) -> str:
    """One block id per line; separator nodes are written as block ``k``."""
    a = p.assignment
    if isinstance(p, NodeSeparator):
        a = np.where(a == SEPARATOR, p.k, a)
    return "".join(f"{b}\n" for b in a.tolist())


# ---- pool -------------------------------------------------------------------

FLAVORS = ("bipartition", "biseparator", "multiway_partition", "multiway_separator")


class PartitionPool:
    """Partitions and separators for the combine operators.

    Entry ``i`` of flavor ``f`` is computed from its own generator seeded
    with ``seed + f * pool_size + i``, so entries are independent of the
    order they are requested in.  With ``lazy=True`` they are computed on
    first use and cached.

    ``partitioner`` is ``"builtin"``, ``"bfs"`` (every flavor becomes a BFS
    bipartition) or ``"import:<template>"`` where the template is formatted
    with ``k`` and ``i``.
    """

    def __init__(
        self,
        g: Graph,
        pool_size: int,
        k_multi: int,
        seed: int,
        partitioner: str = "builtin",
        lazy: bool = True,
        epsilon_range: tuple[float, float] = EPSILON_RANGE,
    ):
        if pool_size < 1:
            raise ValueError("pool_size must be >= 1")
        if g.n < 2:
            raise ValueError("graph needs at least two nodes to be partitioned")
        if not (partitioner in ("builtin", "bfs") or partitioner.startswith("import:")):
            raise ValueError(f"unknown partitioner {partitioner!r}")
        self.g = g
        self.pool_size = pool_size
        self.k_multi = max(2, min(k_multi, g.n))
        self.partitioner = partitioner
        self.epsilon_range = epsilon_range
        self.seed = seed
        self.generation = 0
        self._entries: dict = {}
        if not lazy:
            self.materialize()

    def refresh(self, seed: int) -> None:
        """Discard all entries; new ones use fresh seeds and imbalances."""
        self.seed = seed
        self.generation += 1
        self._entries.clear()

    def materialize(self) -> None:
        for f in FLAVORS:
            for i in range(self.pool_size):
                self.entry(f, i)

    def entry(self, flavor: str, index: int):
        key = (flavor, index)
        if key not in self._entries:
            self._entries[key] = self._compute(flavor, index)
        return self._entries[key]

    def random_entry(self, flavor: str, rng: random.Random):
        return self.entry(flavor, rng.randrange(self.pool_size))

    def _compute(self, flavor, index):
        g = self.g
        f = FLAVORS.index(flavor)
        rng = random.Random(self.seed + f * self.pool_size + index)
        eps = rng.uniform(*self.epsilon_range)
        multi = flavor.startswith("multiway")
        k = self.k_multi if multi else 2
        wants_sep = flavor.endswith("separator")
        if self.partitioner == "bfs":
            p = bfs_partition(g, rng)
        elif self.partitioner == "builtin":
            p = partition_kway(g, k, eps, rng)
        else:
            template = self.partitioner[len("import:"):]
            with open(template.format(k=k, i=index)) as fh:
                p = import_partition(g, fh.read(), epsilon=eps)
            if not p.usable:
                raise ValueError(f"imported partition {template.format(k=k, i=index)} has one block")
        return separator_from_partition(g, p, rng) if wants_sep else p

    def _all(self, flavor):
        return [self.entry(flavor, i) for i in range(self.pool_size)]

    @property
    def bipartitions(self) -> list[Partition]:
        return self._all("bipartition")

    @property
    def biseparators(self) -> list[NodeSeparator]:
        return self._all("biseparator")

    @property
    def multiway_partitions(self) -> list[Partition]:
        return self._all("multiway_partition")

    @property
    def multiway_separators(self) -> list[NodeSeparator]:
        return self._all("multiway_separator")


def build_pool(
    g: Graph, pool_size: int, k_multi: int, rng: random.Random, partitioner: str = "builtin"
) -> PartitionPool:
    """Fully computed pool with ``pool_size`` entries of every flavor."""
    return PartitionPool(g, pool_size, k_multi, rng.getrandbits(63), partitioner, lazy=False)
