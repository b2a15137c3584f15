"""
Running the evolutionary algorithm
==================================

A short run on a random graph, compared with plain iterated local search,
and the averaged best-so-far curve over a few repetitions.
"""

import random

from evomis import AggregateReport, EvoConfig, evolve, solve_arw
from evomis.generators import erdos_renyi

g = erdos_renyi(600, 0.01, seed=11)

logs = []
for seed in range(3):
    cfg = EvoConfig(time_limit=3.0, seed=seed, population_size=50, arw_iterations=2000)
    best, log = evolve(g, cfg)
    logs.append(log)
    print(f"seed {seed}: size {best.size} after {log.meta['generations']} generations")

best, arw_log = solve_arw(g, 3.0, random.Random(0))
print("iterated local search alone:", best.size)

report = AggregateReport.from_logs("er600", g.n, "evomis", logs)
print(report.to_csv())
for t, v in report.curve:
    print(f"{t:8.3f}s  {v:.2f}")
