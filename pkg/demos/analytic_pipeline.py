#!/usr/bin/env python3
"""Walk through the analytic chain step by step at one operating point.

Shows each intermediate object for a queue with 6 blob slots per block,
12-second blocks, and offered load rho = 0.5, then sweeps the load to
show how delay grows toward the stability boundary.
"""

import numpy as np

from blobqueue import (
    build_transition_matrix,
    elapsed_time_kernel,
    epoch_arrival_pmf,
    metrics,
    ModelParams,
    solve_delay,
    stationary_departure_distribution,
    sweep_load,
    time_stationary_distribution,
)

TAU = 12.0
B = 6
RHO = 0.5
LAM = RHO * B / TAU

print(f"operating point: lam={LAM} BTX/s, tau={TAU}s, B={B}  (rho={RHO})")

# 1. Arrivals per service epoch are Poisson with mean lam*tau.
pmf = epoch_arrival_pmf(LAM, TAU, 1e-14)
print(f"\nepoch arrivals: mean {pmf.mean}, tabulated up to K={pmf.K}")
print("  first counts:", np.round(pmf.alphas[:6], 5))

# 2. Queue observed right after each block is a Markov chain.
n_max = 120
P = build_transition_matrix(pmf, B, n_max)
print(f"\ntransition matrix: {P.dimension} states, row sums all "
      f"{P.row_sums().min():.12f}..{P.row_sums().max():.12f}")

# 3. Its stationary vector is the post-block queue distribution.
pi_plus = stationary_departure_distribution(P)
print("post-block queue distribution:", np.round(pi_plus.probs[:6], 5))

# 4. Mixing over the elapsed time within an epoch gives the distribution
#    at a random instant; Poisson arrivals see exactly this.
kernel = elapsed_time_kernel(LAM, TAU, n_max)
pi_bar = time_stationary_distribution(pi_plus, kernel)
print("time-stationary distribution:  ", np.round(pi_bar.probs[:6], 5))

# 5. Little's law turns the mean queue length into the mean delay.
m = metrics(pi_bar, ModelParams(lam=LAM, tau=TAU, B=B, n_max=n_max))
print(f"\nmean queue length N = {m.N:.6f} BTX")
print(f"mean delay        T = {m.T:.6f} s   (block interval {TAU}s)")

# The one-call version picks the state-space size automatically.
auto = solve_delay(LAM, TAU, B)
print(f"solve_delay agrees: T = {auto.T:.6f} s with n_max = {auto.n_max_used}")

print("\ndelay across the load range:")
for row in sweep_load(B, TAU, [0.1, 0.3, 0.5, 0.7, 0.9, 0.95]):
    print(f"  rho={row.rho:4.2f}  N={row.N:10.4f}  T={row.T:10.4f} s")
