"""Graph representation, file formats and independent-set predicates.

Graphs are simple and undirected with nodes ``0..n-1``, stored in CSR form
(``xadj`` offsets into ``adjncy``) with every neighbor list sorted.  The hot
loops in the local search walk plain Python lists, so a list-of-lists view is
cached on first use.
"""
from __future__ import annotations

import io
import logging
import os
from dataclasses import dataclass, field
from typing import Iterable, TextIO

import numpy as np

from .errors import GraphFormatError

log = logging.getLogger(__name__)

__all__ = [
    "Graph",
    "Individual",
    "parse_metis",
    "parse_dimacs",
    "write_metis",
    "read_graph",
    "is_independent_set",
    "is_maximal",
    "tightness",
    "tightness_all",
]


class Graph:
    """Immutable undirected simple graph in CSR form."""

    __slots__ = ("n", "m", "xadj", "adjncy", "edge_u", "edge_v", "_adj")

    def __init__(self, n: int, xadj: np.ndarray, adjncy: np.ndarray):
        self.n = int(n)
        self.xadj = np.asarray(xadj, dtype=np.int64)
        self.adjncy = np.asarray(adjncy, dtype=np.int64)
        if self.xadj.shape != (self.n + 1,) or self.xadj[-1] != self.adjncy.size:
            raise ValueError("inconsistent CSR arrays")
        self.m = self.adjncy.size // 2
        src = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.xadj))
        upper = src < self.adjncy
        self.edge_u = src[upper]
        self.edge_v = self.adjncy[upper]
        for arr in (self.xadj, self.adjncy, self.edge_u, self.edge_v):
            arr.flags.writeable = False
        self._adj = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph from an edge list.

        Edges are symmetrized; duplicates and self-loops are dropped.
        """
        arr = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise ValueError("edge endpoint out of range")
        arr = arr[arr[:, 0] != arr[:, 1]]
        lo = np.minimum(arr[:, 0], arr[:, 1])
        hi = np.maximum(arr[:, 0], arr[:, 1])
        keys = np.unique(lo * max(n, 1) + hi)
        lo, hi = keys // max(n, 1), keys % max(n, 1)
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        xadj = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=xadj[1:])
        return cls(n, xadj, dst)

    @property
    def adj(self) -> list[list[int]]:
        """Neighbor lists as Python lists (cached)."""
        if self._adj is None:
            flat = self.adjncy.tolist()
            bounds = self.xadj.tolist()
            self._adj = [flat[bounds[v]:bounds[v + 1]] for v in range(self.n)]
        return self._adj

    def neighbors(self, v: int) -> np.ndarray:
        return self.adjncy[self.xadj[v]:self.xadj[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.xadj[v + 1] - self.xadj[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.xadj)

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return bool(i < nb.size and nb[i] == v)

    def edges(self) -> list[tuple[int, int]]:
        """All edges as ``(u, v)`` pairs with ``u < v``."""
        return list(zip(self.edge_u.tolist(), self.edge_v.tolist()))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.xadj, other.xadj)
            and np.array_equal(self.adjncy, other.adjncy)
        )

    def __hash__(self):
        return hash((self.n, self.m, self.adjncy.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(eq=False)
class Individual:
    """A candidate independent set stored as a bit array.

    ``size`` is the fitness and always equals the popcount of ``bits``.
    The bit array is copied and made read-only, so instances behave as values.
    """

    bits: np.ndarray
    size: int = field(init=False)

    def __post_init__(self):
        self.bits = np.array(self.bits, dtype=bool)
        self.bits.flags.writeable = False
        self.size = int(np.count_nonzero(self.bits))

    @classmethod
    def from_nodes(cls, n: int, nodes: Iterable[int]) -> "Individual":
        bits = np.zeros(n, dtype=bool)
        bits[list(nodes)] = True
        return cls(bits)

    @classmethod
    def empty(cls, n: int) -> "Individual":
        return cls(np.zeros(n, dtype=bool))

    def nodes(self) -> np.ndarray:
        return np.flatnonzero(self.bits)

    def __contains__(self, v):
        return bool(self.bits[v])

    def __len__(self):
        return self.size

    def __eq__(self, other):
        if not isinstance(other, Individual):
            return NotImplemented
        return np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash(np.packbits(self.bits).tobytes())

    def __repr__(self):
        shown = self.nodes()[:12].tolist()
        more = ", ..." if self.size > 12 else ""
        return f"Individual(size={self.size}, nodes={shown}{more})"


# ---- predicates ----------------------------------------------------------


def _bits_of(g: Graph, ind) -> np.ndarray:
    bits = ind.bits if isinstance(ind, Individual) else np.asarray(ind, dtype=bool)
    if bits.shape != (g.n,):
        raise ValueError(f"bit array has length {bits.size}, graph has {g.n} nodes")
    return bits


def is_independent_set(g: Graph, ind) -> bool:
    """True iff no edge has both endpoints in ``ind``."""
    bits = _bits_of(g, ind)
    return not np.any(bits[g.edge_u] & bits[g.edge_v])


def tightness_all(g: Graph, ind) -> np.ndarray:
    """Number of solution neighbors of every node."""
    bits = _bits_of(g, ind)
    src = np.repeat(np.arange(g.n), np.diff(g.xadj))
    return np.bincount(src[bits[g.adjncy]], minlength=g.n)


def is_maximal(g: Graph, ind) -> bool:
    """True iff ``ind`` is independent and no free node remains.

    Raises ``ValueError`` if ``ind`` is not an independent set.
    """
    bits = _bits_of(g, ind)
    if not is_independent_set(g, bits):
        raise ValueError("not an independent set")
    free = ~bits & (tightness_all(g, bits) == 0)
    return not np.any(free)


def tightness(g: Graph, ind, v: int) -> int:
    """Number of neighbors of the non-solution node ``v`` inside ``ind``."""
    bits = _bits_of(g, ind)
    if bits[v]:
        raise ValueError(f"node {v} is in the solution")
    return int(np.count_nonzero(bits[g.neighbors(v)]))


# ---- file formats ----------------------------------------------------------


def _as_lines(source) -> list[str]:
    if isinstance(source, str):
        return source.splitlines()
    return source.read().splitlines()


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(f"non-numeric token {token!r}", lineno) from None


def parse_metis(source: str | TextIO) -> Graph:
    """Parse METIS adjacency text (1-indexed, ``%`` comments).

    Node and edge weights announced by the format code are read and dropped.
    One-directional edges are symmetrized and duplicates removed, so ``m`` is
    recounted rather than trusted from the header.
    """
    lines = _as_lines(source)
    header = None
    body_start = 0
    for i, line in enumerate(lines):
        stripped = line.strip()
        if stripped and not stripped.startswith("%"):
            header = stripped.split()
            body_start = i + 1
            break
    if header is None:
        raise GraphFormatError("missing header line")
    header_line = body_start
    if len(header) < 2 or len(header) > 4:
        raise GraphFormatError("header must be 'n m [fmt [ncon]]'", header_line)
    n = _int(header[0], header_line)
    m_header = _int(header[1], header_line)
    if n < 0 or m_header < 0:
        raise GraphFormatError("negative count in header", header_line)
    fmt = header[2] if len(header) >= 3 else "0"
    if not fmt.isdigit() or len(fmt) > 3:
        raise GraphFormatError(f"bad format code {fmt!r}", header_line)
    fmt = fmt.zfill(3)
    has_vsize, has_vwgt, has_ewgt = fmt[0] == "1", fmt[1] == "1", fmt[2] == "1"
    ncon = _int(header[3], header_line) if len(header) == 4 else 1
    skip = int(has_vsize) + (ncon if has_vwgt else 0)
    step = 2 if has_ewgt else 1

    src: list[int] = []
    dst: list[int] = []
    v = 0
    for lineno, line in enumerate(lines[body_start:], start=body_start + 1):
        if line.lstrip().startswith("%"):
            continue
        tokens = line.split()
        if v >= n:
            if tokens:
                raise GraphFormatError("more node lines than announced", lineno)
            continue
        values = [_int(t, lineno) for t in tokens]
        for u in values[skip::step]:
            if u < 1 or u > n:
                raise GraphFormatError(f"neighbor id {u} out of range [1, {n}]", lineno)
            src.append(v)
            dst.append(u - 1)
        v += 1
    # missing trailing lines are isolated nodes
    g = Graph.from_edges(n, zip(src, dst))
    if g.m != m_header:
        log.debug("header announces %d edges, found %d after cleanup", m_header, g.m)
    return g


def parse_dimacs(source: str | TextIO) -> Graph:
    """Parse a DIMACS edge list (``p edge n m`` then ``e u v`` lines)."""
    n = None
    edges = []
    for lineno, line in enumerate(_as_lines(source), start=1):
        tokens = line.split()
        if not tokens or tokens[0] == "c":
            continue
        if tokens[0] == "p":
            if len(tokens) < 4:
                raise GraphFormatError("problem line must be 'p <kind> n m'", lineno)
            n = _int(tokens[2], lineno)
        elif tokens[0] in ("e", "a"):
            if n is None:
                raise GraphFormatError("edge before problem line", lineno)
            if len(tokens) < 3:
                raise GraphFormatError("edge line needs two endpoints", lineno)
            u, w = _int(tokens[1], lineno), _int(tokens[2], lineno)
            for x in (u, w):
                if x < 1 or x > n:
                    raise GraphFormatError(f"node id {x} out of range [1, {n}]", lineno)
            edges.append((u - 1, w - 1))
        else:
            raise GraphFormatError(f"unknown line type {tokens[0]!r}", lineno)
    if n is None:
        raise GraphFormatError("missing problem line")
    return Graph.from_edges(n, edges)


def write_metis(g: Graph, out: TextIO | None = None) -> str | None:
    """Serialize ``g`` in METIS format; returns the text if ``out`` is None."""
    buf = io.StringIO() if out is None else out
    buf.write(f"{g.n} {g.m}\n")
    for nb in g.adj:
        buf.write(" ".join(str(u + 1) for u in nb))
        buf.write("\n")
    if out is None:
        return buf.getvalue()
    return None


def read_graph(path: str | os.PathLike) -> Graph:
    """Read a graph file, detecting DIMACS (``c``/``p`` lines) vs METIS."""
    with open(path) as fh:
        text = fh.read()
    for line in text.splitlines():
        tokens = line.split()
        if not tokens or tokens[0].startswith("%"):
            continue
        if tokens[0] in ("c", "p"):
            return parse_dimacs(text)
        break
    return parse_metis(text)
