import random

import numpy as np
import pytest

from evomis import (
    GraphFormatError,
    bfs_partition,
    bipartition_separator,
    build_pool,
    import_partition,
    kway_separator,
    partition_kway,
)
from evomis.generators import (
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    erdos_renyi,
    grid_graph,
    star_graph,
)
from evomis.partition import SEPARATOR, Partition, PartitionPool, block_limit, write_partition

from oracles import balanced_bipartition_min_cut


def no_cross_edges(g, labels):
    return all(
        labels[u] == labels[v] or SEPARATOR in (labels[u], labels[v]) for u, v in g.edges()
    )


class TestPartitionKway:
    def test_p5_oracle(self, p5):
        assert balanced_bipartition_min_cut(p5, 0.05) == 1
        for seed in range(20):
            p = partition_kway(p5, 2, 0.05, random.Random(seed))
            assert p.cut == 1
            assert sorted(p.block_sizes.tolist()) == [2, 3]
            assert p.l_max == 3

    def test_k3_singletons(self, k3):
        p = partition_kway(k3, 3, 0.0, random.Random(0))
        assert p.block_sizes.tolist() == [1, 1, 1] and p.cut == 3

    def test_grid_2x4(self):
        g = grid_graph(2, 4)
        assert balanced_bipartition_min_cut(g, 0.0) == 2
        for seed in range(20):
            p = partition_kway(g, 2, 0.0, random.Random(seed))
            assert p.cut == 2
            left = set(p.block(p.assignment[0]).tolist())
            assert left in ({0, 1, 4, 5}, {2, 3, 6, 7})

    def test_rejects_infeasible_k(self, k3):
        with pytest.raises(ValueError):
            partition_kway(k3, 4, 0.1, random.Random(0))
        with pytest.raises(ValueError):
            partition_kway(k3, 1, 0.1, random.Random(0))

    @pytest.mark.parametrize("seed", range(30))
    def test_balance_and_recount(self, seed):
        rng = random.Random(seed)
        g = erdos_renyi(rng.randint(10, 120), 0.05, seed)
        k = rng.choice([2, 3, 8])
        eps = rng.uniform(0, 0.75)
        p = partition_kway(g, k, eps, rng)
        p.check(g)
        assert p.block_sizes.max() <= block_limit(g.n, k, eps)
        assert p.cut == sum(1 for u, v in g.edges() if p.assignment[u] != p.assignment[v])

    def test_restarts_keep_the_best(self):
        g = grid_graph(6, 6)
        cuts = [partition_kway(g, 2, 0.1, random.Random(s), restarts=1).cut for s in range(5)]
        best = partition_kway(g, 2, 0.1, random.Random(0), restarts=5).cut
        assert best <= cuts[0]

    def test_same_seed_same_partition(self):
        g = grid_graph(5, 7)
        a = partition_kway(g, 4, 0.2, random.Random(3))
        b = partition_kway(g, 4, 0.2, random.Random(3))
        assert np.array_equal(a.assignment, b.assignment)


class TestSeparators:
    def test_p5_bipartition(self, p5):
        p = Partition.from_assignment(p5, [0, 0, 0, 1, 1], 2, 0.05)
        sep = bipartition_separator(p5, p)
        assert sep.separator_size == 1
        assert sep.separator.tolist() in ([2], [3])
        sep.check(p5)

    def test_disconnected_cut_zero(self):
        g = disjoint_union(complete_graph(3), complete_graph(3))
        p = Partition.from_assignment(g, [0, 0, 0, 1, 1, 1], 2, 0.0)
        assert p.cut == 0
        assert bipartition_separator(g, p).separator_size == 0

    def test_star_center(self):
        g = star_graph(4)
        p = Partition.from_assignment(g, [0, 1, 1, 1, 1], 2, 1.0)
        assert bipartition_separator(g, p).separator.tolist() == [0]

    def test_kway_p5(self, p5):
        for seed in range(10):
            sep = kway_separator(p5, 2, 0.05, random.Random(seed))
            assert sep.separator_size == 1

    def test_c6(self):
        g = cycle_graph(6)
        for seed in range(20):
            sep = kway_separator(g, 2, 0.0, random.Random(seed))
            assert sep.separator_size == 2
            sep.check(g)

    @pytest.mark.parametrize("k", [2, 3, 5])
    def test_edgeless(self, k):
        g = empty_graph(10)
        assert kway_separator(g, k, 0.1, random.Random(k)).separator_size == 0

    @pytest.mark.parametrize("seed", range(30))
    def test_no_cross_block_edges(self, seed):
        rng = random.Random(seed)
        g = erdos_renyi(rng.randint(20, 120), 0.06, seed)
        k = rng.choice([2, 4, 16])
        sep = kway_separator(g, k, rng.uniform(0.05, 0.75), rng)
        assert no_cross_edges(g, sep.assignment.tolist())
        sep.check(g)

    def test_two_way_separator_components(self):
        # removing S leaves at least as many components as nonempty blocks
        g = grid_graph(6, 6)
        sep = kway_separator(g, 2, 0.1, random.Random(4))
        label = {}
        for s in range(g.n):
            if sep.assignment[s] == SEPARATOR or s in label:
                continue
            label[s] = s
            stack = [s]
            while stack:
                u = stack.pop()
                for w in g.adj[u]:
                    if sep.assignment[w] != SEPARATOR and w not in label:
                        label[w] = s
                        stack.append(w)
        assert len(set(label.values())) >= np.count_nonzero(sep.block_sizes)


class TestBfsPartition:
    def test_path_from_end(self, p5):
        p = bfs_partition(p5, random.Random(0), target=3, start=0)
        assert p.block(0).tolist() == [0, 1, 2]

    def test_star_from_center(self):
        g = star_graph(4)
        seen = set()
        for seed in range(30):
            p = bfs_partition(g, random.Random(seed), target=3, start=0)
            first = p.block(0).tolist()
            assert len(first) == 3 and 0 in first
            seen.add(tuple(first))
        assert len(seen) > 1  # tie-break among leaves follows the generator

    def test_stops_at_component(self):
        g = disjoint_union(complete_graph(3), complete_graph(3))
        p = bfs_partition(g, random.Random(0), target=3, start=1)
        assert p.block(0).tolist() == [0, 1, 2]
        p = bfs_partition(g, random.Random(0), target=5, start=1)
        assert p.block(0).tolist() == [0, 1, 2]  # component exhausted

    def test_default_target_is_half(self):
        g = grid_graph(4, 5)
        p = bfs_partition(g, random.Random(2))
        assert p.block_sizes.tolist() == [10, 10]


class TestImport:
    def test_roundtrip(self, p5):
        p = import_partition(p5, "0\n0\n0\n1\n1\n")
        assert p.k == 2 and p.cut == 1 and p.block(0).tolist() == [0, 1, 2]
        assert import_partition(p5, write_partition(p)).assignment.tolist() == p.assignment.tolist()

    def test_single_block_is_unusable(self, p5):
        p = import_partition(p5, "0\n" * 5)
        assert p.k == 1 and not p.usable

    def test_wrong_length(self, p5):
        with pytest.raises(GraphFormatError):
            import_partition(p5, "0\n0\n1\n1\n")

    def test_block_id_too_large(self, p5):
        with pytest.raises(GraphFormatError):
            import_partition(p5, "0\n0\n0\n1\n2\n", k=2)

    def test_balance_is_reported_not_enforced(self, p5):
        p = import_partition(p5, "0\n0\n0\n0\n1\n", epsilon=0.0)
        assert not p.balanced

    def test_separator_export(self, p5):
        sep = bipartition_separator(p5, import_partition(p5, "0\n0\n0\n1\n1\n"))
        assert write_partition(sep).split().count("2") == 1


class TestPool:
    def test_default_sizes(self):
        g = grid_graph(10, 10)
        pool = build_pool(g, 30, 64, random.Random(0))
        for flavor in (pool.bipartitions, pool.biseparators, pool.multiway_partitions, pool.multiway_separators):
            assert len(flavor) == 30
        assert all(p.k == 64 for p in pool.multiway_partitions)
        eps = [p.epsilon for p in pool.bipartitions]
        assert all(0.05 <= e <= 0.75 for e in eps) and len(set(eps)) == 30
        for p in pool.bipartitions + pool.multiway_partitions:
            p.check(g)
        for s in pool.biseparators + pool.multiway_separators:
            s.check(g)

    def test_pool_of_one(self, p5):
        pool = build_pool(p5, 1, 4, random.Random(1))
        assert len(pool.bipartitions) == len(pool.multiway_separators) == 1
        pool.bipartitions[0].check(p5)
        pool.multiway_separators[0].check(p5)

    def test_deterministic(self):
        g = grid_graph(6, 6)
        a = build_pool(g, 3, 5, random.Random(9))
        b = build_pool(g, 3, 5, random.Random(9))
        for x, y in zip(a.multiway_separators + a.bipartitions, b.multiway_separators + b.bipartitions):
            assert np.array_equal(x.assignment, y.assignment)

    def test_lazy_matches_eager(self):
        g = grid_graph(6, 6)
        lazy = PartitionPool(g, 4, 6, seed=11)
        one = lazy.entry("multiway_separator", 2).assignment.copy()
        eager = PartitionPool(g, 4, 6, seed=11, lazy=False)
        assert np.array_equal(one, eager.entry("multiway_separator", 2).assignment)

    def test_refresh(self):
        g = grid_graph(6, 6)
        pool = PartitionPool(g, 2, 4, seed=1)
        before = pool.entry("bipartition", 0).epsilon
        pool.refresh(2)
        assert pool.generation == 1
        assert pool.entry("bipartition", 0).epsilon != before

    def test_bfs_flavors(self):
        g = grid_graph(6, 6)
        pool = PartitionPool(g, 2, 8, seed=1, partitioner="bfs", lazy=False)
        assert all(p.k == 2 for p in pool.multiway_partitions)

    def test_import_template(self, tmp_path, p5):
        (tmp_path / "p.2.0").write_text("0\n0\n0\n1\n1\n")
        (tmp_path / "p.5.0").write_text("0\n1\n2\n3\n4\n")
        pool = PartitionPool(p5, 1, 64, seed=0, partitioner=f"import:{tmp_path}/p.{{k}}.{{i}}")
        assert pool.entry("bipartition", 0).cut == 1
        assert pool.entry("multiway_partition", 0).k == 5
        assert pool.entry("multiway_separator", 0).separator_size == 2
