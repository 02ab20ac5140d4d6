import numpy as np
import pytest

from submax import CapacityError, DomainError
from submax.polytopes import (enumerate_dk, in_nk, mk_membership,
                              nk_violations, project_simplex)


def test_index_order_n3_k1():
    idx = enumerate_dk(3, 1)
    assert idx.masks == [0b001, 0b010, 0b100, 0b011, 0b101, 0b110]
    assert idx.dim == 6
    assert idx.pos[0b101] == 4
    assert list(idx.sizes) == [1, 1, 1, 2, 2, 2]


def test_index_dims():
    assert enumerate_dk(4, 2).dim == 4 + 6 + 4
    assert enumerate_dk(2, 1).dim == 3
    assert enumerate_dk(6, 1).dim == 6 + 15


def test_index_bounds():
    with pytest.raises(DomainError):
        enumerate_dk(3, 0)
    with pytest.raises(DomainError):
        enumerate_dk(3, 3)
    with pytest.raises(CapacityError):
        enumerate_dk(60, 4)


def test_maximal_masks():
    idx = enumerate_dk(3, 1)
    assert idx.maximal_masks() == [0b011, 0b101, 0b110]


def test_rows_shape_n3_k1():
    idx = enumerate_dk(3, 1)
    rows = idx.rows()
    # 3 maximal pairs x (1 empty + 2 singleton + 1 pair) rows
    assert len(rows) == 12
    mat, m0 = idx.constraint_matrix()
    assert mat.shape == (12, 6)
    # const is 1 exactly on the C = empty rows
    empties = [r for r, (_, c, _, _, const) in enumerate(rows) if c == 0]
    assert all(m0[r] == 1.0 for r in empties)
    assert sum(m0) == 3.0


def test_violations_pair_without_support():
    idx = enumerate_dk(2, 1)
    v = nk_violations(idx, np.array([0.0, 0.0, 1.0]))
    assert len(v) == 2
    assert {c for _, c, _ in v} == {0b01, 0b10}
    assert all(d == 0b11 for d, _, _ in v)
    assert all(val == pytest.approx(-1.0) for _, _, val in v)


def test_violations_clean_points():
    idx = enumerate_dk(2, 1)
    assert nk_violations(idx, np.array([1.0, 1.0, 1.0])) == []
    assert nk_violations(idx, np.array([0.5, 0.5, 0.25])) == []
    assert in_nk(idx, np.zeros(3))


def test_violations_box():
    idx = enumerate_dk(2, 1)
    v = nk_violations(idx, np.array([1.5, 0.0, 0.0]))
    assert any(d == c == 0b01 for d, c, _ in v)
    with pytest.raises(DomainError):
        nk_violations(idx, np.zeros(4))


def test_integral_moments_always_feasible():
    rng = np.random.default_rng(0)
    for _ in range(40):
        n = int(rng.integers(2, 7))
        k = int(rng.integers(1, min(3, n - 1) + 1))
        idx = enumerate_dk(n, k)
        mask = int(rng.integers(0, 1 << n))
        y = idx.moments_of(mask)
        assert in_nk(idx, y)
        assert mk_membership(idx, y)


def test_moments_of():
    idx = enumerate_dk(3, 1)
    y = idx.moments_of(0b101)
    assert list(y) == [1.0, 0.0, 1.0, 0.0, 1.0, 0.0]


def test_mk_membership_rejects():
    idx = enumerate_dk(3, 1)
    # singletons say {0, 1} but the pair moment is missing
    assert not mk_membership(idx, np.array([1.0, 1.0, 0.0, 0.0, 0.0, 0.0]))
    with pytest.raises(DomainError):
        mk_membership(idx, np.full(6, 0.5))
    with pytest.raises(CapacityError):
        mk_membership(enumerate_dk(15, 1), np.zeros(15 + 105))


def test_project_simplex_examples():
    np.testing.assert_allclose(project_simplex([0.2, 0.8]), [0.2, 0.8])
    np.testing.assert_allclose(project_simplex([2.0, 0.0]), [1.0, 0.0])
    np.testing.assert_allclose(project_simplex([0.5, 0.5, 0.5]),
                               [1 / 3, 1 / 3, 1 / 3])
    np.testing.assert_allclose(project_simplex([1.5, 0.2]), [1.0, 0.0])


def test_project_simplex_properties():
    rng = np.random.default_rng(1)
    for _ in range(50):
        d = int(rng.integers(1, 9))
        v = rng.normal(size=d) * 3
        w = project_simplex(v)
        assert np.all(w >= 0)
        assert w.sum() == pytest.approx(1.0, abs=1e-12)
        # projection of a feasible point is itself
        np.testing.assert_allclose(project_simplex(w), w, atol=1e-12)
        # non-expansive
        u = rng.normal(size=d) * 3
        pu = project_simplex(u)
        assert np.linalg.norm(pu - w) <= np.linalg.norm(u - v) + 1e-12


def test_superset_matrix():
    idx = enumerate_dk(3, 1)
    s = idx.superset_matrix()
    nu = np.array([0.0, -1.0, 0.0, 1.0, 0.0, 1.0])  # path coefficients
    kappa = s @ nu
    # kappa_B = sum of coefficients on supersets of B
    assert list(kappa) == [1.0, 1.0, 1.0, 1.0, 0.0, 1.0]
