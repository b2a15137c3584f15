"""Iterated local search with (1,2)-swaps and forced-insertion perturbation.

The working structure keeps, for every node, whether it is in the solution
and its tightness (number of solution neighbors).  Free nodes are kept in an
indexable list so they can be enumerated and removed in O(1).  Insertions
and removals cost O(deg).  Solution nodes that might admit a (1,2)-swap are
kept on a candidate worklist, which lets the local search touch only the
part of the graph that changed.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .buckets import min_residual_picks
from .errors import InvariantViolation
from .graph import Graph, Individual

__all__ = [
    "SOLUTION",
    "FREE",
    "NONFREE",
    "PerturbConfig",
    "SolutionState",
    "draw_forced_count",
    "find_12_swap",
    "local_search",
    "maximize",
    "perturb",
    "iterate",
]

SOLUTION, FREE, NONFREE = 0, 1, 2


@dataclass
class PerturbConfig:
    """Knobs of the perturbation step.

    ``escalate_prob`` is the chance that an iteration forces more than one
    node; the count is then drawn by :func:`draw_forced_count`.
    """

    candidates: int = 4
    max_forced: int = 32
    escalate_prob: float = 0.1


class SolutionState:
    def __init__(self, g: Graph, ind: Individual | np.ndarray | None = None):
        n = g.n
        self.g = g
        self.adj = g.adj
        self.n = n
        self.in_sol = [False] * n
        self.tight = [0] * n
        self.free: list[int] = []
        self.free_pos = [-1] * n
        self.cand: list[int] = []
        self.in_cand = [False] * n
        self.out_since = [0] * n
        self.clock = 0
        self.size = 0

        if ind is not None:
            bits = ind.bits if isinstance(ind, Individual) else np.asarray(ind, dtype=bool)
            if bits.shape != (n,):
                raise ValueError("bit array length does not match the graph")
            sol = np.flatnonzero(bits).tolist()
            in_sol, tight, adj = self.in_sol, self.tight, self.adj
            for v in sol:
                in_sol[v] = True
            for v in sol:
                for u in adj[v]:
                    tight[u] += 1
            for v in sol:
                if tight[v]:
                    raise ValueError("initial set is not independent")
            self.size = len(sol)
            for v in sol:
                self.in_cand[v] = True
            self.cand = sol[::-1]
        for v in range(n):
            if not self.in_sol[v] and self.tight[v] == 0:
                self.free_pos[v] = len(self.free)
                self.free.append(v)

    # ---- bookkeeping ------------------------------------------------------

    def _free_add(self, v):
        self.free_pos[v] = len(self.free)
        self.free.append(v)

    def _free_remove(self, v):
        free, pos = self.free, self.free_pos
        i = pos[v]
        last = free.pop()
        if last != v:
            free[i] = last
            pos[last] = i
        pos[v] = -1

    def push(self, x):
        if not self.in_cand[x]:
            self.in_cand[x] = True
            self.cand.append(x)

    def insert(self, v: int) -> None:
        """Move the free node ``v`` into the solution."""
        if self.in_sol[v] or self.tight[v]:
            raise ValueError(f"insert({v}): node is not free")
        self.in_sol[v] = True
        self.size += 1
        self._free_remove(v)
        tight = self.tight
        for u in self.adj[v]:
            t = tight[u]
            if t == 0:
                self._free_remove(u)
            tight[u] = t + 1
        self.push(v)

    def remove(self, v: int) -> None:
        """Take the solution node ``v`` out of the solution."""
        if not self.in_sol[v]:
            raise ValueError(f"remove({v}): node is not in the solution")
        in_sol, tight, adj = self.in_sol, self.tight, self.adj
        in_sol[v] = False
        self.size -= 1
        self.clock += 1
        self.out_since[v] = self.clock
        self._free_add(v)
        for u in adj[v]:
            t = tight[u] - 1
            tight[u] = t
            if t == 0:
                self._free_add(u)
            elif t == 1:
                # u is now 1-tight; its remaining solution neighbor may swap
                for y in adj[u]:
                    if in_sol[y]:
                        self.push(y)
                        break

    def force(self, v: int) -> None:
        """Insert ``v`` after evicting its solution neighbors."""
        in_sol = self.in_sol
        for u in self.adj[v]:
            if in_sol[u]:
                self.remove(u)
        self.insert(v)

    # ---- views ------------------------------------------------------------

    def bits(self) -> np.ndarray:
        return np.array(self.in_sol, dtype=bool)

    def to_individual(self) -> Individual:
        return Individual(self.bits())

    def classes(self) -> np.ndarray:
        tight = np.array(self.tight)
        out = np.where(tight == 0, FREE, NONFREE)
        out[self.bits()] = SOLUTION
        return out

    def check(self) -> None:
        """Full recount of tightness, classes and the free list."""
        bits = self.bits()
        g = self.g
        if np.any(bits[g.edge_u] & bits[g.edge_v]):
            raise InvariantViolation("solution is not independent")
        src = np.repeat(np.arange(g.n), np.diff(g.xadj))
        tight = np.bincount(src[bits[g.adjncy]], minlength=g.n)
        if not np.array_equal(tight, np.array(self.tight, dtype=tight.dtype)):
            raise InvariantViolation("tightness out of sync")
        expected_free = set(np.flatnonzero(~bits & (tight == 0)).tolist())
        if set(self.free) != expected_free or len(self.free) != len(expected_free):
            raise InvariantViolation("free list out of sync")
        for i, v in enumerate(self.free):
            if self.free_pos[v] != i:
                raise InvariantViolation("free positions out of sync")
        if self.size != int(bits.sum()):
            raise InvariantViolation("size out of sync")


# ---- operations -------------------------------------------------------------


def draw_forced_count(rng: random.Random, cap: Optional[int] = None) -> int:
    """Number of nodes to force: ``i + 1`` with probability ``1 / 2**i``."""
    i = 1
    while rng.random() < 0.5:
        i += 1
    f = i + 1
    return f if cap is None else min(f, cap)


def find_12_swap(st: SolutionState, x: int) -> Optional[tuple[int, int]]:
    """Two non-adjacent 1-tight neighbors of the solution node ``x``, or None.

    Exact: returns None only if no (1,2)-swap removing ``x`` exists.
    """
    if not st.in_sol[x]:
        raise ValueError(f"node {x} is not in the solution")
    adj, tight = st.adj, st.tight
    ones = [u for u in adj[x] if tight[u] == 1]
    k = len(ones)
    if k < 2:
        return None
    members = set(ones)
    for v in ones:
        nb = adj[v]
        if len(members.intersection(nb)) < k - 1:
            nbset = set(nb)
            for w in ones:
                if w != v and w not in nbset:
                    return v, w
    return None


def maximize(st: SolutionState, rng: random.Random) -> None:
    """Insert free nodes until none is left, least residual degree first."""
    free = st.free
    if not free:
        return
    if len(free) == 1:
        st.insert(free[0])
        return
    for v in min_residual_picks(list(free), st.adj, rng):
        st.insert(v)


def local_search(st: SolutionState, rng: random.Random, full_scan: bool = False) -> None:
    """Apply (1,2)-swaps until the candidate list is exhausted.

    With ``full_scan`` every solution node is re-queued first, which turns
    the incremental search into the plain pass over all nodes.
    """
    if full_scan:
        for v in range(st.n):
            if st.in_sol[v]:
                st.push(v)
    maximize(st, rng)
    cand, in_cand, in_sol = st.cand, st.in_cand, st.in_sol
    while cand:
        x = cand.pop()
        in_cand[x] = False
        if not in_sol[x]:
            continue
        swap = find_12_swap(st, x)
        if swap is None:
            continue
        st.remove(x)
        st.insert(swap[0])
        st.insert(swap[1])
        if st.free:
            maximize(st, rng)


def _random_outsider(st: SolutionState, rng: random.Random) -> int:
    in_sol, n = st.in_sol, st.n
    while True:
        v = rng.randrange(n)
        if not in_sol[v]:
            return v


def perturb(st: SolutionState, rng: random.Random, cfg: PerturbConfig | None = None) -> int:
    """Force nodes into the solution, evicting neighbors, then re-maximize.

    Usually a single node is forced; with probability ``cfg.escalate_prob``
    the count follows :func:`draw_forced_count`.  Each forced node is the
    one that has been out of the solution longest among ``cfg.candidates``
    random non-solution nodes.  Returns the number of forced nodes.
    """
    cfg = cfg or PerturbConfig()
    if st.size == st.n:
        return 0
    f = 1
    if rng.random() < cfg.escalate_prob:
        f = draw_forced_count(rng, cfg.max_forced)
    f = min(f, st.n - st.size)
    out_since = st.out_since
    forced = 0
    for _ in range(f):
        if st.size == st.n:
            break
        best = _random_outsider(st, rng)
        for _ in range(cfg.candidates - 1):
            v = _random_outsider(st, rng)
            if out_since[v] < out_since[best]:
                best = v
        st.force(best)
        forced += 1
    maximize(st, rng)
    return forced


def iterate(
    st: SolutionState,
    iterations: int,
    rng: random.Random,
    cfg: PerturbConfig | None = None,
    should_stop: Callable[[], bool] | None = None,
    check_every: int = 32,
) -> Individual:
    """Run ``iterations`` perturbation + local search rounds.

    Returns the best solution seen; the state itself ends wherever the walk
    went.  ``should_stop`` is polled every ``check_every`` iterations.
    """
    cfg = cfg or PerturbConfig()
    best_bits = st.bits()
    best_size = st.size
    for it in range(iterations):
        if should_stop is not None and it % check_every == 0 and should_stop():
            break
        perturb(st, rng, cfg)
        local_search(st, rng)
        if st.size > best_size:
            best_size = st.size
            best_bits = st.bits()
    return Individual(best_bits)
