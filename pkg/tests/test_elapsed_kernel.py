import numpy as np
import pytest
from scipy.special import gammainc

from blobqueue import InvalidParameterError, elapsed_time_kernel

from conftest import kernel_coefficient_quadrature

ONE_MINUS_E_INV = 0.6321205588285577  # 1 - exp(-1), frozen


def test_first_coefficient_closed_form():
    k = elapsed_time_kernel(1.0 / 12.0, 12.0, 0)
    assert k.coeffs[0] == pytest.approx(ONE_MINUS_E_INV, abs=1e-15)


@pytest.mark.parametrize("z", [0.25, 0.5, 1.0, 4.2, 15.2])
def test_matches_quadrature_oracle(z, request):
    k = elapsed_time_kernel(z, 1.0, 50)
    for m in range(51):
        ref = kernel_coefficient_quadrature(z, m)
        assert k.coeffs[m] == pytest.approx(ref, abs=1e-12), f"m={m}"


@pytest.mark.parametrize("z", [0.1, 1.0, 7.5, 40.0])
def test_matches_library_gamma(z):
    M = 120
    k = elapsed_time_kernel(z, 1.0, M)
    ref = gammainc(np.arange(1, M + 2), z) / z
    np.testing.assert_allclose(k.coeffs, ref, rtol=0, atol=1e-14)


@pytest.mark.parametrize("z", [0.2, 1.0, 5.0, 20.0])
def test_total_probability_over_epoch(z):
    M = int(z + 40 * np.sqrt(z + 1) + 80)
    k = elapsed_time_kernel(z, 1.0, M)
    assert k.coeffs.min() >= 0.0
    assert float(k.coeffs.sum()) == pytest.approx(1.0, abs=1e-10)


def test_tiny_rate_is_accurate():
    # coeffs[0] ~ 1 - z/2 must not lose precision to cancellation.
    lam, tau = 1e-9, 12.0
    k = elapsed_time_kernel(lam, tau, 3)
    z = lam * tau
    assert k.coeffs[0] == pytest.approx(1.0 - z / 2.0, rel=1e-9)
    assert k.coeffs[1] == pytest.approx(z / 2.0, rel=1e-6)


def test_extreme_mean_falls_back_cleanly():
    k = elapsed_time_kernel(800.0, 1.0, 1000)
    assert float(k.coeffs.sum()) == pytest.approx(1.0, abs=1e-9)
    assert k.coeffs.min() >= 0.0


def test_zero_rate_rejected():
    with pytest.raises(InvalidParameterError):
        elapsed_time_kernel(0.0, 12.0, 10)
    with pytest.raises(InvalidParameterError):
        elapsed_time_kernel(1.0, 12.0, -1)
