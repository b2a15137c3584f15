"""
(1,2)-swaps and iterated local search
=====================================

A swap takes one node out and puts two in.  Local search applies swaps until
none is left; the iterated version perturbs the solution in between.
"""

import random

from evomis import Individual, SolutionState, find_12_swap, iterate, local_search
from evomis.generators import erdos_renyi, path_graph

p5 = path_graph(5)
st = SolutionState(p5, Individual.from_nodes(5, [1, 4]))
print("swap for node 1 in {1,4}:", find_12_swap(st, 1))
local_search(st, random.Random(0))
print("after local search:", st.to_individual().nodes().tolist())

# on a larger graph: local optimum, then a few thousand perturbation rounds
g = erdos_renyi(1000, 0.005, seed=3)
rng = random.Random(3)
st = SolutionState(g)
local_search(st, rng)
print("local optimum size:", st.size)
for rounds in (500, 2000, 5000):
    best = iterate(st, rounds, rng)
    print(f"best after {rounds:>4} more rounds: {best.size}")
st.check()  # full recount of the incremental bookkeeping
