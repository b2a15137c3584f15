"""Bucket priority queue over small integer keys, plus the greedy vertex cover
that is built on it."""
from __future__ import annotations

import random
from typing import Iterable, Sequence


class BucketQueue:
    """Nodes grouped into buckets by integer key.

    Keys only ever decrease after construction, which keeps both the
    minimum and maximum pointers cheap to maintain.  Popping draws uniformly
    from the extreme bucket so ties are broken at random.
    """

    __slots__ = ("buckets", "key", "pos", "lo", "hi", "rng", "_len")

    def __init__(self, items: Iterable[tuple[int, int]], rng: random.Random):
        items = list(items)
        top = max((k for _, k in items), default=0)
        self.buckets: list[list[int]] = [[] for _ in range(top + 1)]
        self.key: dict[int, int] = {}
        self.pos: dict[int, int] = {}
        for v, k in items:
            b = self.buckets[k]
            self.key[v] = k
            self.pos[v] = len(b)
            b.append(v)
        self.lo = 0
        self.hi = top
        self.rng = rng
        self._len = len(items)

    def __len__(self):
        return self._len

    def __contains__(self, v):
        return v in self.key

    def _detach(self, v: int) -> int:
        k = self.key[v]
        b = self.buckets[k]
        i = self.pos.pop(v)
        last = b.pop()
        if last != v:
            b[i] = last
            self.pos[last] = i
        return k

    def remove(self, v: int) -> None:
        self._detach(v)
        del self.key[v]
        self._len -= 1

    def decrement(self, v: int) -> None:
        k = self._detach(v) - 1
        b = self.buckets[k]
        self.key[v] = k
        self.pos[v] = len(b)
        b.append(v)
        if k < self.lo:
            self.lo = k

    def _pop_from(self, k: int) -> int:
        b = self.buckets[k]
        i = self.rng.randrange(len(b)) if len(b) > 1 else 0
        v = b[i]
        self.remove(v)
        return v

    def pop_min(self) -> tuple[int, int]:
        while not self.buckets[self.lo]:
            self.lo += 1
        k = self.lo
        return self._pop_from(k), k

    def pop_max(self) -> tuple[int, int]:
        while not self.buckets[self.hi]:
            self.hi -= 1
        k = self.hi
        return self._pop_from(k), k


def greedy_cover(nodes: Iterable[int], adj: Sequence | dict, rng: random.Random) -> list[int]:
    """Greedy vertex cover: repeatedly take a node covering the most
    still-uncovered edges, ties uniformly at random.

    ``adj[v]`` must list the neighbors of ``v`` inside the subgraph being
    covered.  Returns cover nodes in the order they were picked.
    """
    q = BucketQueue(((v, len(adj[v])) for v in nodes), rng)
    cover = []
    while len(q):
        v, k = q.pop_max()
        if k == 0:
            break
        cover.append(v)
        for u in adj[v]:
            if u in q:
                q.decrement(u)
    return cover


def min_residual_picks(universe: Iterable[int], adj: Sequence, rng: random.Random) -> list[int]:
    """Greedy independent set inside ``universe``.

    Always takes a node of least residual degree (neighbors still available),
    ties uniformly at random; after a pick its neighbors leave the universe
    and their neighbors' residual degrees drop.  The result is maximal
    within ``universe``.
    """
    universe = list(universe)
    if len(universe) == 1:
        return universe
    members = set(universe)
    q = BucketQueue(((v, len(members.intersection(adj[v]))) for v in universe), rng)
    picks = []
    while len(q):
        v, _ = q.pop_min()
        picks.append(v)
        for u in adj[v]:
            if u in q:
                q.remove(u)
                for w in adj[u]:
                    if w in q:
                        q.decrement(w)
    return picks
