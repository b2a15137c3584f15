"""Maximum bipartite matching (Hopcroft-Karp) and Koenig vertex covers.

Node ids are those of the parent graph; both routines are deterministic for a
given input ordering.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .errors import InvariantViolation

__all__ = ["BipartiteSubgraph", "Matching", "hopcroft_karp", "koenig_min_vertex_cover"]


@dataclass(frozen=True)
class BipartiteSubgraph:
    left: tuple
    right: tuple
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        lset, rset = set(self.left), set(self.right)
        if lset & rset:
            raise ValueError("left and right sides overlap")
        for a, b in self.edges:
            if a not in lset or b not in rset:
                raise ValueError(f"edge ({a}, {b}) does not go from left to right")

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]]) -> "BipartiteSubgraph":
        """Sides are read off the edge list: first endpoint left, second right."""
        edges = list(edges)
        left = list(dict.fromkeys(a for a, _ in edges))
        right = list(dict.fromkeys(b for _, b in edges))
        return cls(left, right, edges)


@dataclass(frozen=True)
class Matching:
    pairs: tuple
    mate: dict = field(repr=False, compare=False)

    @property
    def size(self) -> int:
        return len(self.pairs)


def hopcroft_karp(b: BipartiteSubgraph) -> Matching:
    """Maximum-cardinality matching in O(E sqrt(V))."""
    lidx = {v: i for i, v in enumerate(b.left)}
    ridx = {v: i for i, v in enumerate(b.right)}
    nl, nr = len(b.left), len(b.right)
    adj = [[] for _ in range(nl)]
    for a, c in b.edges:
        adj[lidx[a]].append(ridx[c])

    match_l = [-1] * nl
    match_r = [-1] * nr
    inf = nl + nr + 1
    dist = [0] * nl

    def bfs():
        queue = deque()
        for u in range(nl):
            if match_l[u] == -1:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = inf
        found = inf
        while queue:
            u = queue.popleft()
            if dist[u] >= found:
                continue
            for r in adj[u]:
                w = match_r[r]
                if w == -1:
                    found = min(found, dist[u] + 1)
                elif dist[w] == inf:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    while True:
        free_dist = bfs()
        if free_dist == inf:
            break
        it = [0] * nl
        for root in range(nl):
            if match_l[root] != -1:
                continue
            # iterative layered DFS; rights[i] links lefts[i] to lefts[i + 1]
            lefts = [root]
            rights = []
            while lefts:
                x = lefts[-1]
                advanced = False
                while it[x] < len(adj[x]):
                    r = adj[x][it[x]]
                    it[x] += 1
                    w = match_r[r]
                    if w == -1:
                        if dist[x] + 1 == free_dist:
                            rights.append(r)
                            for lu, rr in zip(lefts, rights):
                                match_l[lu] = rr
                                match_r[rr] = lu
                            lefts = []
                            advanced = True
                            break
                    elif dist[w] == dist[x] + 1:
                        rights.append(r)
                        lefts.append(w)
                        advanced = True
                        break
                if not advanced:
                    dist[x] = inf
                    lefts.pop()
                    if rights:
                        rights.pop()

    pairs = tuple((b.left[u], b.right[r]) for u, r in enumerate(match_l) if r != -1)
    mate = {}
    for a, c in pairs:
        mate[a] = c
        mate[c] = a
    return Matching(pairs, mate)


def koenig_min_vertex_cover(b: BipartiteSubgraph, m: Matching) -> set:
    """Minimum vertex cover from a maximum matching.

    Z is everything reachable from unmatched left nodes along alternating
    paths; the cover is ``(left - Z) | (right & Z)``.
    """
    adj = {v: [] for v in b.left}
    for a, c in b.edges:
        adj[a].append(c)
    mate = m.mate
    seen = set()
    queue = deque(v for v in b.left if v not in mate)
    seen.update(queue)
    while queue:
        u = queue.popleft()
        for r in adj[u]:
            if r in seen:
                continue
            seen.add(r)
            w = mate.get(r)
            if w is not None and w not in seen:
                seen.add(w)
                queue.append(w)
    cover = {v for v in b.left if v not in seen}
    cover.update(v for v in b.right if v in seen)

    if len(cover) != m.size:
        raise InvariantViolation(
            f"cover size {len(cover)} != matching size {m.size}; matching not maximum"
        )
    for a, c in b.edges:
        if a not in cover and c not in cover:
            raise InvariantViolation(f"edge ({a}, {c}) left uncovered; matching not maximum")
    return cover
