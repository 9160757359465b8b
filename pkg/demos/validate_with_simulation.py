#!/usr/bin/env python3
"""Validate the analytic solution against the event-based simulator.

Runs the clocked batch-service simulation at rho = 0.5 and checks that
the analytic delay falls inside the simulated confidence interval and
that the queue-length distributions match state by state (including the
arrival-observed one, which Poisson arrivals make equal to the time
average).
"""

from blobqueue import SimConfig, solve_delay, validate_against_analytic

TAU, B, RHO = 12.0, 6, 0.5
LAM = RHO * B / TAU

analytic = solve_delay(LAM, TAU, B)
print(f"analytic: T = {analytic.T:.5f} s, N = {analytic.N:.5f} (rho={RHO})")

config = SimConfig(
    lam=LAM, tau=TAU, B=B,
    horizon_blocks=100_000, warmup_blocks=10_000,
    seed=42, replications=10,
)
report = validate_against_analytic(config, analytic)

lo, hi = report.sim_ci95
print(f"simulated 95% CI: [{lo:.5f}, {hi:.5f}] s "
      f"({config.replications} x {config.horizon_blocks} blocks)")
print(f"analytic T inside CI: {report.t_inside_ci}")

print("\nqueue-length distribution, simulated vs analytic (3 SE gate):")
print(" state   time-avg    analytic     |z|   arrivals-see    |z|")
aod = {c.state: c for c in report.arrival_obs_checks}
for c in report.time_avg_checks:
    a = aod.get(c.state)
    right = f"  {a.simulated:10.6f}  {a.z_score:5.2f}" if a else ""
    print(f"  {c.state:4d}  {c.simulated:10.6f}  {c.analytic:10.6f}  {c.z_score:5.2f}{right}")

print(f"\ntime-average check:      {'ok' if report.time_avg_ok else 'FAILED'}")
print(f"arrival-observed check:  {'ok' if report.arrival_obs_ok else 'FAILED'}")
print(f"overall:                 {'ok' if report.passed else 'FAILED'}")
