"""
Combining two solutions across a separator
==========================================

Because no edge joins the two blocks of a node separator, the solution of
one parent on one side can be glued to the other parent's on the other side.
"""

import random

from evomis import kway_separator, partition_kway, random_maximal
from evomis.evolution import (
    combine_edge_separator,
    combine_multiway_partition,
    combine_multiway_separator,
    combine_node_separator,
)
from evomis.generators import erdos_renyi

g = erdos_renyi(500, 0.01, seed=7)
rng = random.Random(7)
parents = [random_maximal(g, rng) for _ in range(4)]
print("parent sizes:", [p.size for p in parents])

o = combine_node_separator(g, parents[0], parents[1], kway_separator(g, 2, 0.2, rng), rng)
print("node separator offspring:", o.individual.size)

o = combine_edge_separator(g, parents[0], parents[1], partition_kway(g, 2, 0.2, rng), rng)
open_edges = sum(u.size for u, _ in o.info["uncovered"])
print("edge separator offspring:", o.individual.size, f"({open_edges} cut edges needed repair)")

o = combine_multiway_separator(g, parents, kway_separator(g, 16, 0.3, rng), rng)
print("multi-way separator offspring:", o.individual.size, "parent per block:", o.info["choice"].tolist())

o = combine_multiway_partition(g, parents, partition_kway(g, 16, 0.3, rng), rng)
print("multi-way partition offspring:", o.individual.size)
