"""Brute-force reference computations. None of these call into evomis
algorithms; they only read graph structure."""
from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np


def adjacency_matrix(g) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=bool)
    a[g.edge_u, g.edge_v] = True
    a[g.edge_v, g.edge_u] = True
    return a


def _subset_bits(n):
    masks = np.arange(1 << n, dtype=np.int64)
    return masks, [((masks >> v) & 1).astype(bool) for v in range(n)]


def independent_subsets(g):
    """Bitmask array of all independent sets of a graph with n <= 20."""
    masks, cols = _subset_bits(g.n)
    ok = np.ones(masks.size, dtype=bool)
    for u, v in g.edges():
        ok &= ~(cols[u] & cols[v])
    return masks[ok]


def max_independent_set_size(g) -> int:
    sets = independent_subsets(g)
    return int(max(bin(int(s)).count("1") for s in sets)) if sets.size else 0


def maximal_independent_sets(g) -> list[frozenset]:
    a = adjacency_matrix(g)
    out = []
    for s in independent_subsets(g).tolist():
        members = [v for v in range(g.n) if s >> v & 1]
        free = [v for v in range(g.n) if not s >> v & 1 and not a[v, members].any()]
        if not free:
            out.append(frozenset(members))
    return out


def is_independent(a: np.ndarray, bits: np.ndarray) -> bool:
    idx = np.flatnonzero(bits)
    return not a[np.ix_(idx, idx)].any()


def swaps_for(a: np.ndarray, bits: np.ndarray, x: int) -> list[tuple[int, int]]:
    """Every (v, w) with v < w outside the set such that removing x and
    adding v and w gives an independent set."""
    rest = bits.copy()
    rest[x] = False
    outside = np.flatnonzero(~bits)
    hit = a[:, rest].any(axis=1)
    found = []
    for v, w in itertools.combinations(outside.tolist(), 2):
        if not hit[v] and not hit[w] and not a[v, w]:
            found.append((v, w))
    return found


def swap_exists(a: np.ndarray, bits: np.ndarray, x: int) -> bool:
    """Same question as ``swaps_for`` but answered on the whole pair matrix
    at once: is some pair of addable nodes non-adjacent?"""
    rest = bits.copy()
    rest[x] = False
    addable = np.flatnonzero(~bits & ~a[:, rest].any(axis=1))
    if addable.size < 2:
        return False
    sub = a[np.ix_(addable, addable)]
    return int(sub.sum()) < addable.size * (addable.size - 1)


def has_any_swap(a: np.ndarray, bits: np.ndarray) -> bool:
    return any(swap_exists(a, bits, x) for x in np.flatnonzero(bits).tolist())


def max_matching_exhaustive(left, right, edges) -> int:
    """Largest matching by branching over left nodes (small instances)."""
    adj = {v: sorted({r for l, r in edges if l == v}) for v in left}
    order = list(left)

    @lru_cache(maxsize=None)
    def best(i, used):
        if i == len(order):
            return 0
        res = best(i + 1, used)
        for r in adj[order[i]]:
            bit = 1 << right.index(r)
            if not used & bit:
                res = max(res, 1 + best(i + 1, used | bit))
        return res

    return best(0, 0)


def max_matching_deficiency(left, right, edges) -> int:
    """|L| - max over subsets A of L of (|A| - |N(A)|), by enumeration."""
    nl = len(left)
    lpos = {v: i for i, v in enumerate(left)}
    masks, cols = _subset_bits(nl)
    nbr_count = np.zeros(masks.size, dtype=np.int64)
    for r in right:
        nb = [lpos[l] for l, rr in edges if rr == r]
        touched = np.zeros(masks.size, dtype=bool)
        for i in nb:
            touched |= cols[i]
        nbr_count += touched
    size = sum(c.astype(np.int64) for c in cols) if cols else np.zeros(1, dtype=np.int64)
    return int(nl - np.max(size - nbr_count))


def min_vertex_cover_bipartite(left, right, edges) -> int:
    """min over A subset of L of |A| + |N(L - A)|, by enumeration."""
    nl = len(left)
    lpos = {v: i for i, v in enumerate(left)}
    masks, cols = _subset_bits(nl)
    cost = sum(c.astype(np.int64) for c in cols) if cols else np.zeros(1, dtype=np.int64)
    for r in right:
        nb = [lpos[l] for l, rr in edges if rr == r]
        needs = np.zeros(masks.size, dtype=bool)
        for i in nb:
            needs |= ~cols[i]
        cost = cost + needs
    return int(np.min(cost))


def min_vertex_cover_size(n, edges) -> int:
    """Smallest cover of an arbitrary small graph by subset enumeration."""
    masks, cols = _subset_bits(n)
    ok = np.ones(masks.size, dtype=bool)
    for u, v in edges:
        ok &= cols[u] | cols[v]
    sizes = sum(c.astype(np.int64) for c in cols)
    return int(sizes[ok].min())


def balanced_bipartition_min_cut(g, epsilon) -> int:
    import math

    lmax = math.floor((1 + epsilon) * math.ceil(g.n / 2) + 1e-9)
    best = None
    for mask in range(1 << g.n):
        size0 = bin(mask).count("1")
        if size0 > lmax or g.n - size0 > lmax:
            continue
        cut = sum(1 for u, v in g.edges() if (mask >> u & 1) != (mask >> v & 1))
        best = cut if best is None else min(best, cut)
    return best
