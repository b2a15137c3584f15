"""
Three ways to build a starting solution
=======================================

Random order, least residual degree first, and the complement of a greedy
vertex cover, compared on a random graph.
"""

import random
from collections import Counter

import numpy as np

from evomis import greedy_min_residual, greedy_vertex_cover, random_maximal
from evomis.generators import erdos_renyi, path_graph

g = erdos_renyi(400, 0.02, seed=1)
rng = random.Random(0)

for name, make in [("random", random_maximal), ("min residual", greedy_min_residual),
                   ("vertex cover", greedy_vertex_cover)]:
    sizes = np.array([make(g, rng).size for _ in range(50)])
    print(f"{name:>13}: mean {sizes.mean():6.1f}  min {sizes.min()}  max {sizes.max()}")

# on a path the min-residual greedy always starts at an endpoint
p5 = path_graph(5)
print("min residual on P5:", Counter(tuple(greedy_min_residual(p5, random.Random(s)).nodes().tolist()) for s in range(100)))
print("random on P5:      ", Counter(tuple(random_maximal(p5, random.Random(s)).nodes().tolist()) for s in range(100)))
