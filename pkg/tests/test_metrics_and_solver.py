import math

import numpy as np
import pytest

from blobqueue import (
    InvalidParameterError,
    ModelParams,
    NoConvergenceError,
    StateDistribution,
    UnstableLoadError,
    metrics,
    solve_delay,
)
from blobqueue.analytic import TIME_STATIONARY


def test_empty_distribution_has_zero_population():
    probs = np.zeros(8)
    probs[0] = 1.0
    bar = StateDistribution(probs=probs, kind=TIME_STATIONARY)
    m = metrics(bar, ModelParams(lam=0.1, tau=12.0, B=6, n_max=7))
    assert m.N == 0.0
    assert m.T == 0.0
    assert m.rho == pytest.approx(0.1 * 12.0 / 6)


def test_littles_law_is_identity():
    m = solve_delay(0.25, 12.0, 6)
    assert m.T * 0.25 == pytest.approx(m.N, rel=1e-15)
    assert m.T >= 12.0 / 2 - 1e-9


@pytest.mark.parametrize("B", [3, 6, 16])
def test_low_load_delay_is_half_interval(B):
    lam = 1e-4 * B / 12.0
    m = solve_delay(lam, 12.0, B)
    assert m.T == pytest.approx(6.0, rel=1e-3)


def test_target_queue_length_near_published_load():
    # With capacity 6 and 12 s blocks, mean population 3 sits near rho 0.76.
    m = solve_delay(0.76 * 6 / 12.0, 12.0, 6)
    assert m.N == pytest.approx(3.0, rel=0.05)


def test_unstable_load_rejected():
    with pytest.raises(UnstableLoadError) as exc:
        solve_delay(0.999 * 6 / 12.0, 12.0, 6)
    assert exc.value.rho == pytest.approx(0.999)
    with pytest.raises(UnstableLoadError):
        solve_delay(1.2 * 6 / 12.0, 12.0, 6)


def test_truncation_stability_beyond_stopping_point():
    lam, tau, B = 0.9 * 6 / 12.0, 12.0, 6
    m = solve_delay(lam, tau, B)
    doubled = solve_delay(lam, tau, B, n_floor=2 * (m.n_max_used + 1) - 1)
    assert abs(doubled.T - m.T) / m.T < 1e-6


def test_budget_exhaustion_reports_last_result():
    with pytest.raises(NoConvergenceError) as exc:
        solve_delay(0.95 * 6 / 12.0, 12.0, 6, n_budget=96)
    assert "metrics" in exc.value.achieved


def test_solver_deterministic():
    a = solve_delay(0.35, 12.0, 6)
    b = solve_delay(0.35, 12.0, 6)
    assert (a.T, a.N, a.n_max_used) == (b.T, b.N, b.n_max_used)
    np.testing.assert_array_equal(a.pi_bar.probs, b.pi_bar.probs)


def test_metrics_rejects_wrong_kind_and_zero_rate():
    probs = np.zeros(8)
    probs[0] = 1.0
    bar = StateDistribution(probs=probs, kind=TIME_STATIONARY)
    with pytest.raises(InvalidParameterError):
        ModelParams(lam=0.0, tau=12.0, B=6, n_max=7)
    with pytest.raises(InvalidParameterError):
        solve_delay(0.0, 12.0, 6)
    plus = StateDistribution(probs=probs, kind="departure-embedded")
    with pytest.raises(InvalidParameterError):
        metrics(plus, ModelParams(lam=0.1, tau=12.0, B=6, n_max=7))


def test_model_params_invariants():
    with pytest.raises(InvalidParameterError):
        ModelParams(lam=1.0, tau=12.0, B=6, n_max=5)
    with pytest.raises(InvalidParameterError):
        ModelParams(lam=1.0, tau=12.0, B=6, n_max=100)  # rho = 2
    p = ModelParams(lam=0.25, tau=12.0, B=6, n_max=100)
    assert p.rho == pytest.approx(0.5)


@pytest.mark.parametrize("rho", [0.1, 0.3, 0.5, 0.7, 0.9])
def test_single_service_closed_form(rho):
    # With capacity 1 the whole pipeline reduces to a clocked single-service
    # queue whose mean delay has the closed form tau/2 + tau*rho/(2(1-rho)).
    tau = 12.0
    T = solve_delay(rho / tau, tau, 1).T
    assert T == pytest.approx(tau / 2 + tau * rho / (2 * (1 - rho)), rel=1e-8)


def test_tail_mass_shrinks_with_state_space():
    lam, tau, B = 0.8 * 6 / 12.0, 12.0, 6
    m = solve_delay(lam, tau, B)
    assert m.tail_mass < 1e-9
    assert math.isfinite(m.T)
