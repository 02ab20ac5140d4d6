import math

import numpy as np
import pytest

from submax import (CoverageInstance, CutInstance, DomainError,
                    EntropyInstance, ModularInstance, check_monotone,
                    check_submodular, gen_coverage, gen_entropy, gen_instance,
                    gen_modular)


def test_cut_evaluate_triangle(triangle):
    assert triangle.evaluate(0) == 0.0
    assert triangle.evaluate(0b001) == 2.0
    assert triangle.evaluate(0b011) == 2.0
    assert triangle.evaluate(0b111) == 0.0


def test_cut_symmetry_and_batch():
    rng = np.random.default_rng(0)
    inst = gen_instance("random", {"n": 7, "p": 0.5}, seed=2)
    full = (1 << 7) - 1
    masks = [int(rng.integers(0, 1 << 7)) for _ in range(40)]
    batch = inst.batch_evaluate(masks)
    for m, b in zip(masks, batch):
        assert b == pytest.approx(inst.evaluate(m), abs=1e-12)
        assert inst.evaluate(m) == pytest.approx(inst.evaluate(full ^ m))


def test_cut_validation():
    with pytest.raises(DomainError):
        CutInstance(2, [(0, 0, 1.0)])  # self loop
    with pytest.raises(DomainError):
        CutInstance(2, [(0, 2, 1.0)])  # endpoint out of range
    with pytest.raises(DomainError):
        CutInstance(2, [(0, 1, -0.5)])  # negative weight


def test_gen_grid_shape():
    g = gen_instance("grid", {"rows": 10, "cols": 10}, seed=1)
    assert g.n == 100
    assert len(g.edges) == 180
    assert all(0.0 < w <= 1.0 for _, _, w in g.edges)


def test_gen_tree_shape():
    t = gen_instance("tree", {"n": 100}, seed=2)
    assert t.n == 100
    assert len(t.edges) == 99
    # connected: union-find over the edges reaches one component
    parent = list(range(100))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j, _ in t.edges:
        parent[find(i)] = find(j)
    assert len({find(v) for v in range(100)}) == 1


def test_gen_random_density():
    full = gen_instance("random", {"n": 12, "p": 1.0}, seed=3)
    assert len(full.edges) == 12 * 11 // 2
    empty = gen_instance("random", {"n": 12, "p": 0.0}, seed=3)
    assert len(empty.edges) == 0


def test_gen_instance_rejects_unknown():
    with pytest.raises(DomainError):
        gen_instance("petersen", {"n": 10}, seed=0)
    with pytest.raises(DomainError):
        gen_instance("tree", {}, seed=0)


def test_gen_instance_seed_determinism():
    a = gen_instance("random", {"n": 9, "p": 0.4}, seed=11)
    b = gen_instance("random", {"n": 9, "p": 0.4}, seed=11)
    assert a.edges == b.edges


def test_coverage_monotone_submodular():
    c = gen_coverage(6, universe=15, seed=4)
    assert isinstance(c, CoverageInstance)
    assert check_submodular(c)
    assert check_monotone(c)
    assert c.evaluate(0) == 0.0


def test_coverage_evaluate_by_hand():
    c = CoverageInstance(2, 3, [1.0, 2.0, 4.0], [[0, 1], [1, 2]])
    assert c.evaluate(0b01) == 3.0
    assert c.evaluate(0b10) == 6.0
    assert c.evaluate(0b11) == 7.0


def test_modular_evaluate():
    m = ModularInstance(3, [1.0, -2.0, 3.0])
    assert m.evaluate(0b101) == 4.0
    assert gen_modular(5, seed=0).n == 5


def test_entropy_independent_bits():
    t = np.full((2, 2), 0.25)
    e = EntropyInstance((2, 2), t)
    assert e.evaluate(0b01) == pytest.approx(math.log(2.0))
    assert e.evaluate(0b11) == pytest.approx(2.0 * math.log(2.0))


def test_entropy_correlated_pair():
    t = np.zeros((2, 2))
    t[0, 0] = t[1, 1] = 0.5
    e = EntropyInstance((2, 2), t)
    assert e.evaluate(0b11) == pytest.approx(math.log(2.0))
    assert e.evaluate(0b01) == pytest.approx(math.log(2.0))


def test_entropy_is_submodular_and_monotone():
    e = gen_entropy(5, seed=6)
    assert check_submodular(e)
    assert check_monotone(e)


def test_entropy_validation():
    with pytest.raises(DomainError):
        EntropyInstance((2, 2), np.full((2, 2), 0.3))  # does not sum to 1
    with pytest.raises(DomainError):
        EntropyInstance((2,), np.array([1.5, -0.5]))  # negative mass
