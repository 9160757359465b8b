import math

import numpy as np
import pytest

from blobqueue import InvalidParameterError, epoch_arrival_pmf

from conftest import poisson_pmf_oracle

E_INV = 0.36787944117144233  # exp(-1), frozen from high-precision evaluation


def test_zero_rate_degenerates_to_no_arrivals():
    pmf = epoch_arrival_pmf(0.0, 12.0, 1e-12)
    assert pmf.K == 0
    assert pmf.alphas[0] == 1.0
    assert pmf.mean == 0.0


def test_unit_mean_matches_exponential_constant():
    pmf = epoch_arrival_pmf(1.0 / 12.0, 12.0, 1e-12)
    assert pmf.alphas[0] == pytest.approx(E_INV, abs=1e-15)


@pytest.mark.parametrize("z", [0.01, 0.25, 1.0, 3.7, 15.2, 80.0])
def test_recurrence_matches_log_gamma_oracle(z):
    pmf = epoch_arrival_pmf(z, 1.0, 1e-14)
    expected = np.array([poisson_pmf_oracle(k, z) for k in range(pmf.K + 1)])
    np.testing.assert_allclose(pmf.alphas, expected, rtol=1e-12, atol=1e-300)


@pytest.mark.parametrize("z,tol", [(0.5, 1e-6), (2.0, 1e-10), (10.0, 1e-12)])
def test_cdf_properties(z, tol):
    pmf = epoch_arrival_pmf(z, 1.0, tol)
    assert np.all(pmf.alphas >= 0)
    np.testing.assert_allclose(pmf.betas, np.cumsum(pmf.alphas), rtol=0, atol=0)
    assert np.all(np.diff(pmf.betas) >= 0)
    assert pmf.betas[-1] <= 1.0 + 1e-15
    assert 1.0 - pmf.betas[-1] < tol
    # K is minimal: one term earlier the tail was still too large.
    if pmf.K > 0:
        assert 1.0 - pmf.betas[-2] >= tol


def test_saturating_beta_lookup():
    pmf = epoch_arrival_pmf(0.5, 1.0, 1e-10)
    assert pmf.beta(pmf.K + 7) == pmf.beta(pmf.K)
    assert pmf.alpha(pmf.K + 7) == 0.0
    assert pmf.alpha(-1) == 0.0
    assert pmf.beta(-1) == 0.0


@pytest.mark.parametrize(
    "lam,tau,tol",
    [(-1.0, 12.0, 1e-9), (1.0, 0.0, 1e-9), (1.0, -3.0, 1e-9), (1.0, 12.0, 0.0), (1.0, 12.0, 1.0)],
)
def test_invalid_parameters_raise(lam, tau, tol):
    with pytest.raises(InvalidParameterError):
        epoch_arrival_pmf(lam, tau, tol)


def test_mean_is_rate_times_interval():
    pmf = epoch_arrival_pmf(0.35, 12.0, 1e-12)
    assert pmf.mean == pytest.approx(4.2)
    # The tabulated pmf reproduces the mean it was built from.
    ks = np.arange(pmf.K + 1)
    assert float(ks @ pmf.alphas) == pytest.approx(4.2, rel=1e-10)
