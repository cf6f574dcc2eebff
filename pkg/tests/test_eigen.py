import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra import numpy as hnp

from hsosc.eigen import eigen_lowest, symmetric_eigenvalues, tridiagonalize


def test_diagonal_matrix():
    d = np.array([3.0, -1.0, 2.0, 0.5])
    np.testing.assert_array_equal(symmetric_eigenvalues(np.diag(d)), np.sort(d))


@pytest.mark.parametrize("a,b", [(2.0, 0.5), (1.0, -3.0), (0.0, 1e-8)])
def test_two_by_two(a, b):
    vals = symmetric_eigenvalues([[a, b], [b, a]])
    np.testing.assert_allclose(vals, [a - abs(b), a + abs(b)], rtol=1e-14, atol=1e-15)


def test_tridiagonal_form_preserves_spectrum():
    rng = np.random.default_rng(5)
    a = rng.normal(size=(12, 12))
    a = a + a.T
    d, e = tridiagonalize(a)
    t = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
    np.testing.assert_allclose(np.linalg.eigvalsh(t), np.linalg.eigvalsh(a), atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(hnp.arrays(float, st.tuples(st.integers(1, 25)).map(lambda t: (t[0], t[0])),
                  elements=st.floats(-10, 10)))
def test_matches_lapack(m):
    a = m + m.T
    np.testing.assert_allclose(symmetric_eigenvalues(a), np.linalg.eigvalsh(a), atol=1e-11)


def test_parity_split_matches_full_solve():
    rng = np.random.default_rng(9)
    n = 20
    a = rng.normal(size=(n, n))
    a = a + a.T
    i, j = np.indices(a.shape)
    a[(i - j) % 2 == 1] = 0.0
    full = eigen_lowest(a, n, split_parity=False)
    split = eigen_lowest(a, n, split_parity=True)
    np.testing.assert_allclose(split, full, atol=1e-12)
    assert eigen_lowest(a, 3).shape == (3,)


def test_count_bounds():
    with pytest.raises(ValueError):
        eigen_lowest(np.eye(3), 4)


@pytest.mark.parametrize("tiny", [2.7401709e-214, 1e-300])
def test_graded_matrix_with_underflowing_block(tiny):
    m = np.full((4, 4), tiny)
    m[0, 1] = 1.0
    a = m + m.T
    np.testing.assert_allclose(symmetric_eigenvalues(a), np.linalg.eigvalsh(a), atol=1e-15)


@pytest.mark.parametrize("scale", [1e-300, 1e299])
def test_extreme_scaling(scale):
    rng = np.random.default_rng(0)
    a = rng.normal(size=(6, 6))
    a = (a + a.T) * scale
    np.testing.assert_allclose(symmetric_eigenvalues(a), np.linalg.eigvalsh(a), rtol=1e-12)
