"""
Balanced partitions and node separators
=======================================

The combine operators cut the graph into blocks.  A node separator is
derived from a bipartition by covering its cut edges with as few nodes as
possible (a bipartite matching gives the exact minimum).
"""

import random

import numpy as np

from evomis import bfs_partition, bipartition_separator, kway_separator, partition_kway
from evomis.generators import grid_graph

g = grid_graph(20, 20)
rng = random.Random(1)

for k in (2, 8, 64):
    p = partition_kway(g, k, 0.1, rng)
    print(f"k={k:>2}: cut {p.cut:4d}  largest block {p.block_sizes.max()}  limit {p.l_max}")

p = partition_kway(g, 2, 0.05, rng)
sep = bipartition_separator(g, p)
print("bipartition cut:", p.cut, "-> separator size:", sep.separator_size)

# a breadth-first split is balanced too, but usually cuts more
b = bfs_partition(g, rng)
print("BFS bipartition cut:", b.cut)

s8 = kway_separator(g, 8, 0.2, rng)
print("8-way separator:", s8.separator_size, "nodes, block sizes", s8.block_sizes.tolist())

# draw the 2-way separator on the grid
grid = np.where(sep.assignment == -1, "#", np.where(sep.assignment == 0, ".", "o")).reshape(20, 20)
print("\n".join("".join(row) for row in grid))
