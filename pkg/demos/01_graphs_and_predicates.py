"""
Graphs, independent sets and the checks around them
===================================================

Parse a METIS file, look at the CSR arrays, and test a few node sets.
"""

import numpy as np

from evomis import Individual, is_independent_set, is_maximal, parse_metis, tightness, write_metis

# a path on five nodes; METIS lists 1-based neighbors, one line per node
g = parse_metis("5 4\n2\n1 3\n2 4\n3 5\n4\n")
print("n, m:", g.n, g.m)
print("xadj:", g.xadj.tolist())
print("adjncy:", g.adjncy.tolist())

# a solution is a bit array over the nodes
alternating = Individual.from_nodes(g.n, [0, 2, 4])
middle = Individual.from_nodes(g.n, [1, 3])
print("{0,2,4} independent:", is_independent_set(g, alternating), "maximal:", is_maximal(g, alternating))
print("{1,3}   independent:", is_independent_set(g, middle), "maximal:", is_maximal(g, middle))
print("{0,1}   independent:", is_independent_set(g, Individual.from_nodes(g.n, [0, 1])))

# tightness counts solution neighbors of a node outside the solution
print("tightness of node 1 w.r.t. {0,2,4}:", tightness(g, alternating, 1))

# round trip through the writer
assert parse_metis(write_metis(g)) == g
print(write_metis(g))

# the complement of a vertex cover is independent
cover = np.array([False, True, False, True, False])
print("complement of cover {1,3}:", np.flatnonzero(~cover).tolist(), is_independent_set(g, ~cover))
