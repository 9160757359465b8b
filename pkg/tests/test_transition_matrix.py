import numpy as np
import pytest

from blobqueue import InvalidParameterError, build_transition_matrix, epoch_arrival_pmf

from conftest import transition_matrix_oracle


def _pmf(z: float):
    return epoch_arrival_pmf(z, 1.0, 1e-14)


def test_single_capacity_row_pattern():
    pmf = _pmf(0.8)
    P = build_transition_matrix(pmf, B=1, n_max=6).to_dense()
    # From an empty queue with capacity 1: stay empty on 0 or 1 arrivals,
    # reach state 1 on exactly 2.
    assert P[0, 0] == pytest.approx(pmf.alphas[0] + pmf.alphas[1], abs=1e-15)
    assert P[0, 1] == pytest.approx(pmf.alphas[2], abs=1e-15)
    assert P[2, 0] == 0.0  # would need to serve 2


def test_no_arrivals_serves_down_to_floor():
    pmf = _pmf(0.0)
    P = build_transition_matrix(pmf, B=3, n_max=8).to_dense()
    for i in range(9):
        target = max(i - 3, 0)
        expected = np.zeros(9)
        expected[target] = 1.0
        np.testing.assert_array_equal(P[i], expected)


@pytest.mark.parametrize("z,B,n_max", [(0.5, 2, 4), (1.0, 1, 10), (2.5, 4, 25), (6.0, 6, 80)])
def test_matches_enumeration_oracle(z, B, n_max):
    P = build_transition_matrix(_pmf(z), B, n_max).to_dense()
    expected = transition_matrix_oracle(z, B, n_max)
    assert np.abs(P - expected).max() < 1e-12


@pytest.mark.parametrize("z,B,n_max", [(0.5, 2, 20), (4.2, 6, 300), (12.0, 16, 150)])
def test_row_stochastic_and_reachability(z, B, n_max):
    tm = build_transition_matrix(_pmf(z), B, n_max)
    P = tm.to_dense()
    np.testing.assert_allclose(tm.row_sums(), 1.0, rtol=0, atol=1e-12)
    assert P.min() >= 0.0
    i, j = np.indices(P.shape)
    assert np.all(P[j < i - B] == 0.0)


def test_sparse_and_dense_builders_agree():
    pmf = _pmf(3.0)
    dense = build_transition_matrix(pmf, B=6, n_max=100)
    # Force the sparse construction by building a large matrix and
    # comparing the shared corner.
    big = build_transition_matrix(pmf, B=6, n_max=4000)
    assert not dense.is_sparse and big.is_sparse
    np.testing.assert_allclose(
        big.to_dense()[:50, :50], dense.to_dense()[:50, :50], rtol=0, atol=1e-15
    )
    np.testing.assert_allclose(big.row_sums(), 1.0, rtol=0, atol=1e-12)


def test_truncation_mass_sits_in_last_column():
    # Tiny state space: overflow beyond n_max collects in the last column.
    pmf = _pmf(2.0)
    P = build_transition_matrix(pmf, B=1, n_max=2).to_dense()
    expected = transition_matrix_oracle(2.0, 1, 2)
    assert np.abs(P - expected).max() < 1e-12
    assert P[2, 2] > 0.5  # heavy load, tiny space: mass piles up at the cap


def test_rejects_capacity_above_bound():
    with pytest.raises(InvalidParameterError):
        build_transition_matrix(_pmf(1.0), B=4, n_max=3)
    with pytest.raises(InvalidParameterError):
        build_transition_matrix(_pmf(1.0), B=0, n_max=3)
