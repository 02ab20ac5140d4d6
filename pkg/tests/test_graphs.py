import numpy as np
import pytest

from submax import (CutInstance, DomainError, EntropyInstance, LambdaFunction,
                    value_table)
from submax.graphs import (Dag, DecomposableGraph, NotTriangulatedError,
                           NuVector, best_tree_structure, dag_bound,
                           dag_bound_function, decomposable_bound,
                           is_ancestral, junction_tree, nu_from_decomposable,
                           peo_and_check, random_dag, random_directed_tree,
                           random_ktree_nu, reroot_tree, structure_max,
                           tree_nu)


def chain3():
    return Dag.from_parents(3, [0, 0b001, 0b010])


def test_dag_validation():
    with pytest.raises(DomainError):
        Dag.from_parents(2, [0b10, 0b01])  # 2-cycle
    with pytest.raises(DomainError):
        Dag.from_parents(2, [0, 0b100])  # parent out of range
    with pytest.raises(DomainError):
        Dag.from_parents(2, [0b01, 0])  # self parent


def test_dag_bound_chain_on_path(path3):
    g = chain3()
    assert dag_bound(path3, g, 0b111) == pytest.approx(0.0)
    assert dag_bound(path3, g, 0b101) == pytest.approx(2.0)
    assert dag_bound(path3, g, 0) == 0.0


def test_dag_bound_emptygraph_sums_singletons(triangle):
    g = Dag.from_parents(3, [0, 0, 0])
    assert dag_bound(triangle, g, 0b111) == pytest.approx(6.0)


def test_dag_bound_dominates(triangle):
    g = chain3()
    vals = value_table(triangle)
    for mask in range(8):
        assert dag_bound(triangle, g, mask) >= vals[mask] - 1e-9


def test_is_ancestral():
    g = chain3()
    assert is_ancestral(g, 0)
    assert is_ancestral(g, 0b001)
    assert is_ancestral(g, 0b011)
    assert not is_ancestral(g, 0b010)
    assert not is_ancestral(g, 0b101)


def test_random_dag_properties():
    rng = np.random.default_rng(5)
    for _ in range(30):
        g = random_dag(8, rng)
        seen = 0
        for v in g.topo:
            assert g.parents[v] & ~seen == 0  # topological order
            seen |= 1 << v
        assert max(p.bit_count() for p in g.parents) <= 3


def test_random_directed_tree_shape():
    rng = np.random.default_rng(6)
    for _ in range(20):
        g = random_directed_tree(7, rng)
        roots = [v for v in range(7) if g.parents[v] == 0]
        assert len(roots) == 1
        assert all(g.parents[v].bit_count() <= 1 for v in range(7))


def test_reroot_tree_changes_root_preserves_bound(path3):
    rng = np.random.default_rng(7)
    g = random_directed_tree(3, rng)
    for r in range(3):
        g2 = reroot_tree(g, r)
        assert g2.parents[r] == 0
        for mask in range(8):
            assert dag_bound(path3, g2, mask) == pytest.approx(
                dag_bound(path3, g, mask), abs=1e-9)


def test_peo_on_triangle_graph():
    adj = [0b110, 0b101, 0b011]
    peo, later = peo_and_check(adj)
    assert sorted(peo) == [0, 1, 2]


def test_four_cycle_not_triangulated():
    with pytest.raises(NotTriangulatedError) as exc:
        DecomposableGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert len(exc.value.witness) == 4


def test_star_junction_tree():
    star = DecomposableGraph.from_tree(4, [(0, 1), (0, 2), (0, 3)])
    cliques, seps = junction_tree(star)
    assert sorted(cliques) == [0b0011, 0b0101, 0b1001]
    assert seps == [0b0001, 0b0001]
    assert star.width == 1


def test_from_tree_validation():
    with pytest.raises(DomainError):
        DecomposableGraph.from_tree(3, [(0, 1)])  # too few edges
    with pytest.raises(DomainError):
        DecomposableGraph.from_tree(3, [(0, 1), (0, 1)])  # duplicate


def test_nu_from_star():
    star = DecomposableGraph.from_tree(4, [(0, 1), (0, 2), (0, 3)])
    nu = nu_from_decomposable(star)
    d = nu.as_dict()
    assert d[0b0001] == -2.0
    assert d[0b0011] == d[0b0101] == d[0b1001] == 1.0
    assert np.allclose(nu.element_sums(), 1.0)


def test_tree_nu_path():
    nu = tree_nu(3, [(0, 1), (1, 2)])
    d = nu.as_dict()
    assert d == {0b010: -1.0, 0b011: 1.0, 0b110: 1.0}


def test_nu_apply_equals_decomposable_bound(path3):
    star = DecomposableGraph.from_tree(3, [(0, 1), (0, 2)])
    nu = nu_from_decomposable(star)
    for mask in range(8):
        assert nu.apply(path3, mask) == pytest.approx(
            decomposable_bound(path3, star, mask), abs=1e-9)


def test_decomposable_bound_validates():
    tri = DecomposableGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    f = CutInstance(3, [(0, 1, 1.0)])
    # single maximal clique covering V: the bound equals F itself
    for mask in range(8):
        assert decomposable_bound(f, tri, mask) == pytest.approx(
            f.evaluate(mask))


def test_best_tree_structure_picks_correlated_edge():
    t = np.zeros((2, 2, 2))
    t[0, 0, 0] = t[1, 1, 0] = t[0, 0, 1] = t[1, 1, 1] = 0.25
    ent = EntropyInstance((2, 2, 2), t)
    dec = best_tree_structure(ent)
    assert 0b011 in dec.cliques


def test_best_tree_structure_recovers_generating_tree():
    from submax import gen_instance
    inst = gen_instance("tree", {"n": 8}, seed=9)
    dec = best_tree_structure(inst)
    got = {frozenset({i, j}) for i, j, _ in inst.edges}
    have = set()
    for c in dec.cliques:
        ii = [b for b in range(8) if (c >> b) & 1]
        if len(ii) == 2:
            have.add(frozenset(ii))
    assert got == have


def test_random_ktree_nu_sums_to_one():
    rng = np.random.default_rng(8)
    for k in (1, 2, 3):
        nu = random_ktree_nu(7, k, rng)
        assert np.allclose(nu.element_sums(), 1.0)
        assert max(m.bit_count() for m, _ in nu.items) == k + 1


def test_structure_max_matches_brute_force():
    rng = np.random.default_rng(10)
    for _ in range(30):
        n = int(rng.integers(3, 8))
        edges = [(i, j, float(1.0 - rng.random()))
                 for i in range(n) for j in range(i + 1, n)
                 if rng.random() < 0.5]
        f = CutInstance(n, edges)
        k = int(rng.integers(1, 3))
        nu = random_ktree_nu(n, k, rng)
        val, amask = structure_max(f, nu)
        table = [nu.apply(f, m) for m in range(1 << n)]
        assert val == pytest.approx(max(table), abs=1e-9)
        assert nu.apply(f, amask) == pytest.approx(val, abs=1e-9)


def test_structure_max_with_shift():
    f = CutInstance(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)])
    nu = tree_nu(3, [(0, 1), (1, 2)])
    shift = np.array([0.5, 0.5, 0.5])
    val, amask = structure_max(f, nu, shift=shift)
    best = max(nu.apply(f, m) - 0.5 * m.bit_count() for m in range(8))
    assert val == pytest.approx(best, abs=1e-12)


def test_dag_bound_function_wraps(triangle):
    g = chain3()
    wrapped = dag_bound_function(triangle, g)
    for mask in range(8):
        assert wrapped.evaluate(mask) == pytest.approx(
            dag_bound(triangle, g, mask))
