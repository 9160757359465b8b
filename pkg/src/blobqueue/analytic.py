"""Steady-state analysis of a clocked batch-service queue.

Blob-carrying transactions (BTXs) arrive as a Poisson stream with rate
``lam`` (1/second).  Blocks are produced every ``tau`` seconds whether or
not any BTX is waiting, and each block serves up to ``B`` queued BTXs in
FIFO order; arrivals during an epoch may join the batch served at the
epoch's end.  The offered load per blob slot is ``rho = lam * tau / B``
and stability requires ``rho < 1``.

The analysis chain observes the queue just after each block (a Markov
chain over remaining queue lengths), solves for its stationary vector,
then recovers the distribution seen at a random instant in time by mixing
over the elapsed time since the last block:

    epoch_arrival_pmf -> build_transition_matrix
        -> stationary_departure_distribution
        -> elapsed_time_kernel -> time_stationary_distribution -> metrics

Because Poisson arrivals see time averages, the time-stationary
distribution is also the one observed by arriving BTXs, so the mean delay
follows from the mean queue length via Little's law (``T = N / lam``).

``solve_delay`` runs the whole chain with an adaptive bound on the number
of tracked queue states; ``sweep_load`` maps it across a load grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import InvalidParameterError, NoConvergenceError, UnstableLoadError

__all__ = [
    "ModelParams",
    "EpochArrivalPMF",
    "TransitionMatrix",
    "StateDistribution",
    "ElapsedTimeKernel",
    "QueueMetrics",
    "SweepRow",
    "epoch_arrival_pmf",
    "build_transition_matrix",
    "stationary_departure_distribution",
    "elapsed_time_kernel",
    "time_stationary_distribution",
    "metrics",
    "solve_delay",
    "sweep_load",
]

DEPARTURE_EMBEDDED = "departure-embedded"
TIME_STATIONARY = "time-stationary"

# Largest state count handled with dense linear algebra; beyond this the
# transition matrix is kept sparse and solved with a sparse LU.
_DENSE_LIMIT = 2048

_DEFAULT_TAIL_TOL = 1e-14
_DEFAULT_RESIDUAL_TOL = 1e-12


@dataclass(frozen=True)
class ModelParams:
    """Queue parameters: arrival rate, block interval, blob capacity, state bound."""

    lam: float
    tau: float
    B: int
    n_max: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise InvalidParameterError(f"lam must be finite and > 0, got {self.lam!r}")
        if not (math.isfinite(self.tau) and self.tau > 0):
            raise InvalidParameterError(f"tau must be finite and > 0, got {self.tau!r}")
        if self.B < 1:
            raise InvalidParameterError(f"B must be >= 1, got {self.B!r}")
        if self.n_max < self.B:
            raise InvalidParameterError(
                f"n_max ({self.n_max}) must be >= B ({self.B})"
            )
        if self.rho >= 1.0:
            raise InvalidParameterError(
                f"unstable parameters: rho = lam*tau/B = {self.rho:.6g} >= 1"
            )

    @property
    def rho(self) -> float:
        return self.lam * self.tau / self.B


@dataclass(frozen=True, eq=False)
class EpochArrivalPMF:
    """Distribution of the number of arrivals during one service epoch.

    ``alphas[k]`` is the probability of exactly k Poisson arrivals in an
    interval of length tau, ``betas[j]`` the probability of at most j.
    The sequence is cut at the first K with ``1 - betas[K] < tail_tol``.
    """

    alphas: np.ndarray
    betas: np.ndarray
    mean: float

    @property
    def K(self) -> int:
        return len(self.alphas) - 1

    @property
    def tail(self) -> float:
        """Probability mass beyond the last tabulated count."""
        return max(0.0, 1.0 - float(self.betas[-1]))

    def alpha(self, k: int) -> float:
        """alphas[k], zero beyond the cut."""
        if k < 0 or k > self.K:
            return 0.0
        return float(self.alphas[k])

    def beta(self, j: int) -> float:
        """betas[j], saturating at the last tabulated value."""
        if j < 0:
            return 0.0
        return float(self.betas[min(j, self.K)])


def epoch_arrival_pmf(lam: float, tau: float, tail_tol: float = _DEFAULT_TAIL_TOL) -> EpochArrivalPMF:
    """Tabulate the per-epoch Poisson arrival counts.

    Uses the multiplicative recurrence alphas[k+1] = alphas[k] * z / (k+1)
    with z = lam*tau, so no factorial is ever evaluated.
    """
    if not (math.isfinite(lam) and lam >= 0):
        raise InvalidParameterError(f"lam must be finite and >= 0, got {lam!r}")
    if not (math.isfinite(tau) and tau > 0):
        raise InvalidParameterError(f"tau must be finite and > 0, got {tau!r}")
    if not (0.0 < tail_tol < 1.0):
        raise InvalidParameterError(f"tail_tol must be in (0, 1), got {tail_tol!r}")

    z = lam * tau
    if z == 0.0:
        ones = np.array([1.0])
        return EpochArrivalPMF(alphas=ones, betas=ones.copy(), mean=0.0)

    # Generous upper bound on how far the tail can reach before dropping
    # below any representable tolerance.
    k_cap = int(z + 200.0 * math.sqrt(z + 1.0) + 500)
    alphas = [math.exp(-z)]
    beta = alphas[0]
    k = 0
    while 1.0 - beta >= tail_tol:
        if k >= k_cap:
            raise NoConvergenceError(
                f"arrival pmf tail did not reach {tail_tol:g} within {k_cap} terms",
                achieved={"tail": 1.0 - beta, "terms": k + 1},
            )
        alphas.append(alphas[-1] * z / (k + 1))
        beta += alphas[-1]
        k += 1
    arr = np.array(alphas)
    return EpochArrivalPMF(alphas=arr, betas=np.cumsum(arr), mean=z)


@dataclass(frozen=True, eq=False)
class TransitionMatrix:
    """One-epoch transition matrix of the queue observed after each block.

    Row i, column j holds the probability that a queue of i BTXs right
    after a block becomes j right after the next one.  States beyond
    n_max are folded into the last column, so every row sums to one and
    the truncation shows up only through that column.
    """

    entries: np.ndarray | sp.csr_matrix
    B: int
    n_max: int

    @property
    def dimension(self) -> int:
        return self.n_max + 1

    @property
    def is_sparse(self) -> bool:
        return sp.issparse(self.entries)

    def to_dense(self) -> np.ndarray:
        if self.is_sparse:
            return self.entries.toarray()
        return np.asarray(self.entries)

    def row_sums(self) -> np.ndarray:
        return np.asarray(self.entries.sum(axis=1)).ravel()


def build_transition_matrix(pmf: EpochArrivalPMF, B: int, n_max: int) -> TransitionMatrix:
    """Assemble the post-block transition matrix for batch capacity B.

    From state i, k arrivals lead to state max(i + k - B, 0):
      * column 0 is reachable only from i <= B and collects all arrival
        counts up to B - i, hence entry (i, 0) = betas[B - i];
      * column j >= 1 requires exactly k = j - i + B arrivals;
      * entries with j < i - B are structurally zero (at most B served).
    The residual row mass (counts beyond the tabulated pmf plus states
    beyond n_max) is folded into the last column.
    """
    if B < 1:
        raise InvalidParameterError(f"B must be >= 1, got {B!r}")
    if n_max < B:
        raise InvalidParameterError(f"n_max ({n_max}) must be >= B ({B})")

    n = n_max + 1
    alphas = pmf.alphas
    K = pmf.K

    if n <= _DENSE_LIMIT:
        P = np.zeros((n, n))
        # Diagonal bands: entry (i, j) = alphas[j - i + B].
        for m in range(min(K, B + n - 2) + 1):
            off = m - B
            if off <= -n:
                continue
            if off >= 0:
                idx = np.arange(0, n - off)
                P[idx, idx + off] = alphas[m]
            else:
                idx = np.arange(-off, n)
                P[idx, idx + off] = alphas[m]
        for i in range(min(B, n_max) + 1):
            P[i, 0] = pmf.beta(B - i)
        P[:, -1] = np.clip(1.0 - P[:, :-1].sum(axis=1), 0.0, None)
        return TransitionMatrix(entries=P, B=B, n_max=n_max)

    diags = []
    offsets = []
    for m in range(min(K, B + n - 2) + 1):
        off = m - B
        if off <= -n:
            continue
        diags.append(np.full(n - abs(off), alphas[m]))
        offsets.append(off)
    M = sp.diags(diags, offsets, shape=(n, n), format="lil")
    for i in range(min(B, n_max) + 1):
        M[i, 0] = pmf.beta(B - i)
    row_sums = np.asarray(M.sum(axis=1)).ravel()
    last = np.asarray(M[:, -1].todense()).ravel()
    M[:, -1] = np.clip(1.0 - (row_sums - last), 0.0, None)[:, None]
    return TransitionMatrix(entries=M.tocsr(), B=B, n_max=n_max)


@dataclass(frozen=True, eq=False)
class StateDistribution:
    """Probability vector over queue lengths 0..n_max.

    ``kind`` records which stationary object this is: the queue seen just
    after blocks (departure-embedded) or at a random instant in time.
    ``normalization_deficit`` is the mass lost to state-space truncation
    before the vector was rescaled to sum to one.
    """

    probs: np.ndarray
    kind: str
    normalization_deficit: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in (DEPARTURE_EMBEDDED, TIME_STATIONARY):
            raise InvalidParameterError(f"unknown distribution kind {self.kind!r}")
        p = np.asarray(self.probs, dtype=float)
        if p.ndim != 1 or len(p) == 0:
            raise InvalidParameterError("probs must be a non-empty 1-d vector")
        if float(p.min(initial=0.0)) < -1e-12:
            raise InvalidParameterError("probs must be nonnegative")
        if abs(float(p.sum()) - 1.0) > 1e-9:
            raise InvalidParameterError("probs must sum to 1 after normalization")

    @property
    def n_max(self) -> int:
        return len(self.probs) - 1

    def mean(self) -> float:
        return float(np.arange(len(self.probs)) @ self.probs)


def _l1_residual(pi: np.ndarray, entries) -> float:
    return float(np.abs(pi @ entries - pi).sum())


def stationary_departure_distribution(
    P: TransitionMatrix, residual_tol: float = _DEFAULT_RESIDUAL_TOL
) -> StateDistribution:
    """Solve pi P = pi, sum(pi) = 1 for the post-block queue distribution.

    A direct linear solve (dense or sparse LU depending on size) with the
    last balance equation replaced by the normalization constraint, then
    fixed-point refinement until the l1 residual meets ``residual_tol``.
    Deterministic for fixed inputs.
    """
    if not (0.0 < residual_tol < 1.0):
        raise InvalidParameterError(f"residual_tol must be in (0, 1), got {residual_tol!r}")
    n = P.dimension
    b = np.zeros(n)
    b[-1] = 1.0
    if not P.is_sparse:
        A = P.entries.T - np.eye(n)
        A[-1, :] = 1.0
        x = np.linalg.solve(A, b)
    else:
        M = (P.entries.T - sp.identity(n, format="csr")).tocsr()
        bottom = sp.csr_matrix(np.ones((1, n)))
        A = sp.vstack([M[:-1, :], bottom]).tocsc()
        x = spla.spsolve(A, b)

    pi = np.clip(x, 0.0, None)
    total = float(pi.sum())
    if total <= 0.0 or not np.isfinite(total):
        raise NoConvergenceError("stationary solve produced a degenerate vector")
    pi /= total

    residual = _l1_residual(pi, P.entries)
    refinements = 0
    while residual >= residual_tol and refinements < 128:
        pi = np.clip(pi @ P.entries, 0.0, None)
        pi /= pi.sum()
        residual = _l1_residual(pi, P.entries)
        refinements += 1
    if residual >= residual_tol:
        raise NoConvergenceError(
            f"stationary residual {residual:.3e} did not reach {residual_tol:g}",
            achieved={"residual": residual, "refinements": refinements},
        )
    return StateDistribution(probs=pi, kind=DEPARTURE_EMBEDDED, normalization_deficit=0.0)


@dataclass(frozen=True, eq=False)
class ElapsedTimeKernel:
    """Arrival-count mixture over a uniformly random elapsed time in an epoch.

    coeffs[m] = (1/tau) * integral_0^tau exp(-lam x) (lam x)^m / m! dx,
    the probability of having seen m arrivals since the last block when
    observing the queue at a random instant.
    """

    coeffs: np.ndarray
    mean: float


def elapsed_time_kernel(lam: float, tau: float, M: int) -> ElapsedTimeKernel:
    """Evaluate the elapsed-time mixing coefficients for m = 0..M.

    Closed form: coeffs[m] = G(m+1, z) / z with z = lam*tau and G the
    regularized lower incomplete gamma function, computed by the stable
    recurrence G(m+1, z) = G(m, z) - exp(-z) z^m / m! rather than by
    quadrature or explicit factorials.
    """
    if not (math.isfinite(lam) and lam > 0):
        raise InvalidParameterError(
            f"lam must be finite and > 0 (no elapsed-time mixing without arrivals), got {lam!r}"
        )
    if not (math.isfinite(tau) and tau > 0):
        raise InvalidParameterError(f"tau must be finite and > 0, got {tau!r}")
    if M < 0:
        raise InvalidParameterError(f"M must be >= 0, got {M!r}")

    z = lam * tau
    c = np.zeros(M + 1)
    if z > 700.0:
        # exp(-z) underflows; fall back to the library gamma evaluation.
        from scipy.special import gammainc

        c[:] = gammainc(np.arange(1, M + 2), z) / z
        return ElapsedTimeKernel(coeffs=c, mean=z)

    g = -math.expm1(-z)  # G(1, z), exact for tiny z
    t = math.exp(-z)  # exp(-z) z^m / m!
    for m in range(M + 1):
        c[m] = g / z
        t *= z / (m + 1)
        g -= t
        if g < 0.0:
            g = 0.0
    return ElapsedTimeKernel(coeffs=c, mean=z)


def _kernel_support(z: float) -> int:
    """Index beyond which the elapsed-time coefficients are negligible."""
    return int(math.ceil(z + 40.0 * math.sqrt(z + 1.0) + 80.0))


def time_stationary_distribution(
    pi_plus: StateDistribution, kernel: ElapsedTimeKernel
) -> StateDistribution:
    """Mix the post-block distribution over elapsed time within an epoch.

    The queue at a random instant is the queue after the last block plus
    the arrivals since, so the time-stationary vector is the discrete
    convolution of ``pi_plus`` with the kernel, cut back to 0..n_max and
    renormalized.  Poisson arrivals see time averages, so this is also
    the distribution observed by arriving BTXs.
    """
    if pi_plus.kind != DEPARTURE_EMBEDDED:
        raise InvalidParameterError(
            f"pi_plus must be {DEPARTURE_EMBEDDED!r}, got {pi_plus.kind!r}"
        )
    n = len(pi_plus.probs)
    conv = np.convolve(pi_plus.probs, kernel.coeffs)[:n]
    raw = float(conv.sum())
    if raw <= 0.0:
        raise NoConvergenceError("time-stationary mixing lost all probability mass")
    deficit = max(0.0, 1.0 - raw)
    return StateDistribution(
        probs=conv / raw, kind=TIME_STATIONARY, normalization_deficit=deficit
    )


@dataclass(frozen=True, eq=False)
class QueueMetrics:
    """Summary performance measures of the queue at one operating point."""

    rho: float
    N: float
    T: float
    n_max_used: int
    tail_mass: float
    pi_bar: StateDistribution | None = field(default=None, repr=False)

    def to_json_dict(self) -> dict:
        return {
            "rho": self.rho,
            "N": self.N,
            "T": self.T,
            "n_max_used": self.n_max_used,
            "tail_mass": self.tail_mass,
        }


def metrics(pi_bar: StateDistribution, params: ModelParams) -> QueueMetrics:
    """Mean queue length and mean delay from the time-stationary vector.

    N is the expectation of the queue length; the mean delay follows from
    Little's law, T = N / lam.
    """
    if pi_bar.kind != TIME_STATIONARY:
        raise InvalidParameterError(
            f"pi_bar must be {TIME_STATIONARY!r}, got {pi_bar.kind!r}"
        )
    if params.lam <= 0:
        raise InvalidParameterError("mean delay is undefined for lam == 0")
    N = pi_bar.mean()
    return QueueMetrics(
        rho=params.rho,
        N=N,
        T=N / params.lam,
        n_max_used=pi_bar.n_max,
        tail_mass=pi_bar.normalization_deficit,
        pi_bar=pi_bar,
    )


def solve_delay(
    lam: float,
    tau: float,
    B: int,
    *,
    stability_margin: float = 1e-3,
    n_floor: int | None = None,
    n_budget: int = 1 << 15,
    tail_tol: float = _DEFAULT_TAIL_TOL,
    residual_tol: float = _DEFAULT_RESIDUAL_TOL,
    tail_mass_tol: float = 1e-10,
    t_rel_tol: float = 1e-6,
) -> QueueMetrics:
    """Run the full analysis chain with an adaptive state-space bound.

    Starting from ``n_floor`` (default 4B + 64) the bound doubles until
    (a) the time-stationary mass in the last 10% of states drops below
    ``tail_mass_tol`` and (b) the mean delay changes by less than
    ``t_rel_tol`` relative between successive sizes.  Raises
    UnstableLoadError when rho >= 1 - stability_margin and
    NoConvergenceError (carrying the last result) if the budget runs out.
    """
    if not (math.isfinite(lam) and lam > 0):
        raise InvalidParameterError(f"lam must be finite and > 0, got {lam!r}")
    if not (math.isfinite(tau) and tau > 0):
        raise InvalidParameterError(f"tau must be finite and > 0, got {tau!r}")
    if B < 1:
        raise InvalidParameterError(f"B must be >= 1, got {B!r}")
    rho = lam * tau / B
    if rho >= 1.0 - stability_margin:
        raise UnstableLoadError(
            f"offered load rho = {rho:.6g} is beyond the stability margin "
            f"(requires rho < {1.0 - stability_margin:.6g})",
            rho=rho,
            margin=stability_margin,
        )

    z = lam * tau
    pmf = epoch_arrival_pmf(lam, tau, tail_tol)
    kernel = elapsed_time_kernel(lam, tau, _kernel_support(z))

    n_max = n_floor if n_floor is not None else 4 * B + 64
    n_max = max(n_max, B)
    params = ModelParams(lam=lam, tau=tau, B=B, n_max=n_max)

    prev_T: float | None = None
    result: QueueMetrics | None = None
    tail10 = math.inf
    t_change = math.inf
    while n_max <= n_budget:
        P = build_transition_matrix(pmf, B, n_max)
        pi_plus = stationary_departure_distribution(P, residual_tol)
        pi_bar = time_stationary_distribution(pi_plus, kernel)
        params = ModelParams(lam=lam, tau=tau, B=B, n_max=n_max)
        result = metrics(pi_bar, params)

        start = (9 * (n_max + 1)) // 10
        tail10 = float(pi_bar.probs[start:].sum())
        if prev_T is not None:
            t_change = abs(result.T - prev_T) / max(abs(result.T), 1e-300)
            if tail10 < tail_mass_tol and t_change < t_rel_tol:
                return result
        prev_T = result.T
        n_max *= 2

    raise NoConvergenceError(
        f"state-space budget {n_budget} exhausted before the delay stabilized "
        f"(last T = {result.T:.9g}, tail mass {tail10:.3e}, rel change {t_change:.3e})",
        achieved={"metrics": result, "tail_mass": tail10, "t_rel_change": t_change},
    )


@dataclass(frozen=True, eq=False)
class SweepRow:
    """One load grid point of a sweep; failures are flagged, not raised."""

    rho: float
    lam: float
    N: float | None
    T: float | None
    status: str
    result: QueueMetrics | None = field(default=None, repr=False)


def sweep_load(B: int, tau: float, rho_grid: list[float], **solver_kwargs) -> list[SweepRow]:
    """Solve the queue on each load of the grid, in ascending rho order.

    Per-point failures become rows with a non-"ok" status instead of
    aborting the sweep.  The row layout maps directly onto the sweep CSV
    schema used by the command-line surface.
    """
    for rho in rho_grid:
        if not (0.0 < rho < 1.0):
            raise InvalidParameterError(f"every rho must be in (0, 1), got {rho!r}")
    rows: list[SweepRow] = []
    for rho in sorted(rho_grid):
        lam = rho * B / tau
        try:
            m = solve_delay(lam, tau, B, **solver_kwargs)
        except UnstableLoadError:
            rows.append(SweepRow(rho=rho, lam=lam, N=None, T=None, status="unstable-load"))
        except NoConvergenceError:
            rows.append(SweepRow(rho=rho, lam=lam, N=None, T=None, status="no-convergence"))
        else:
            rows.append(SweepRow(rho=rho, lam=lam, N=m.N, T=m.T, status="ok", result=m))
    return rows
