"""Discrete-event simulation of the clocked batch-service queue.

Blocks fire every ``tau`` seconds whether or not any BTX is queued; the
block at the end of epoch k serves queued BTXs in FIFO order subject to
the blob capacity ``B``.  An arrival landing exactly on a block instant
is not eligible for that block (strict-inequality convention), so a BTX
arriving at time t is first servable by the block closing epoch
``floor(t / tau)``.

Two engines share the same statistics pipeline:

* a vectorized path for BTXs of one fixed blob size (capacity then maps
  to a fixed number of BTXs per block), which streams exponential
  inter-arrival times in bounded chunks and resolves departures with a
  stride-B running-maximum recursion;
* a per-block loop for mixed blob sizes under either packing policy
  (fifo-blocking: the head-of-line BTX that does not fit blocks the rest;
  first-fit: later BTXs that fit may be pulled forward).

Sojourns are measured per BTX as departure block time minus arrival
time; all statistics exclude the warmup window.  Runs are reproducible:
replication seeds are derived from the master seed and aggregation is
order-independent.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import t as student_t

from .analytic import QueueMetrics, solve_delay
from .errors import InvalidConfigError, InvalidParameterError

__all__ = [
    "SimConfig",
    "ReplicationStats",
    "SimResult",
    "ValidationReport",
    "EffectiveBatchResult",
    "simulate",
    "validate_against_analytic",
    "effective_batch_experiment",
]

FIFO_BLOCKING = "fifo-blocking"
FIRST_FIT = "first-fit"


@dataclass(frozen=True)
class SimConfig:
    """Configuration of one simulation experiment.

    ``blob_size_dist[i]`` is the probability that a BTX carries i+1 blobs;
    None means every BTX carries one blob.  ``warmup_blocks`` defaults to
    10% of the horizon with a floor of 1000 blocks.
    """

    lam: float
    tau: float
    B: int
    blob_size_dist: tuple[float, ...] | None = None
    horizon_blocks: int = 200_000
    warmup_blocks: int | None = None
    seed: int = 0
    replications: int = 10
    packing_policy: str = FIFO_BLOCKING

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise InvalidConfigError(f"lam must be finite and > 0, got {self.lam!r}")
        if not (math.isfinite(self.tau) and self.tau > 0):
            raise InvalidConfigError(f"tau must be finite and > 0, got {self.tau!r}")
        if self.B < 1:
            raise InvalidConfigError(f"B must be >= 1, got {self.B!r}")
        if self.horizon_blocks < 1:
            raise InvalidConfigError("horizon_blocks must be >= 1")
        if self.warmup_blocks is not None and not (
            0 <= self.warmup_blocks < self.horizon_blocks
        ):
            raise InvalidConfigError("need 0 <= warmup_blocks < horizon_blocks")
        if self.replications < 1:
            raise InvalidConfigError("replications must be >= 1")
        if self.packing_policy not in (FIFO_BLOCKING, FIRST_FIT):
            raise InvalidConfigError(f"unknown packing policy {self.packing_policy!r}")
        if self.blob_size_dist is not None:
            d = np.asarray(self.blob_size_dist, dtype=float)
            if d.ndim != 1 or len(d) == 0 or len(d) > self.B:
                raise InvalidConfigError(
                    "blob_size_dist must cover blob counts 1..s with s <= B"
                )
            if d.min() < 0 or abs(d.sum() - 1.0) > 1e-9:
                raise InvalidConfigError("blob_size_dist must be a probability vector")

    @property
    def warmup(self) -> int:
        if self.warmup_blocks is not None:
            return self.warmup_blocks
        return min(max(self.horizon_blocks // 10, 1000), self.horizon_blocks - 1)

    @property
    def size_dist(self) -> np.ndarray:
        if self.blob_size_dist is None:
            return np.array([1.0])
        return np.asarray(self.blob_size_dist, dtype=float)

    def fixed_blob_size(self) -> int | None:
        """The common blob count when the size distribution is a point mass."""
        d = self.size_dist
        nz = np.nonzero(d > 0)[0]
        if len(nz) == 1:
            return int(nz[0]) + 1
        return None


@dataclass(frozen=True, eq=False)
class ReplicationStats:
    """Raw per-replication measurements (post-warmup window only).

    ``idle_blocks`` counts blocks that served nothing; ``empty_after_blocks``
    counts blocks that left the queue empty.
    """

    mean_sojourn: float
    min_sojourn: float
    mean_queue_length: float
    arrivals: int
    served: int
    queue_at_warmup: int
    queue_at_end: int
    idle_blocks: int
    empty_after_blocks: int
    blocks: int
    time_avg: np.ndarray
    arrival_obs: np.ndarray


@dataclass(frozen=True, eq=False)
class SimResult:
    """Aggregated simulation output with a Student-t confidence interval."""

    mean_sojourn: float
    ci95: tuple[float, float]
    mean_queue_length: float
    time_avg_distribution: np.ndarray
    arrival_observed_distribution: np.ndarray
    blocks_simulated: int
    btx_served: int
    per_replication_means: tuple[float, ...]
    per_replication: tuple[ReplicationStats, ...] = field(repr=False, default=())

    def to_json_dict(self) -> dict:
        return {
            "mean_sojourn": self.mean_sojourn,
            "ci95": list(self.ci95),
            "mean_queue_length": self.mean_queue_length,
            "blocks_simulated": self.blocks_simulated,
            "btx_served": self.btx_served,
            "per_replication_means": list(self.per_replication_means),
            "time_avg_distribution": self.time_avg_distribution.tolist(),
            "arrival_observed_distribution": self.arrival_observed_distribution.tolist(),
        }


class _LevelAccumulator:
    """Growable bincount over queue-length levels."""

    __slots__ = ("data",)

    def __init__(self) -> None:
        self.data = np.zeros(8)

    def _ensure(self, n: int) -> None:
        if n > len(self.data):
            grown = np.zeros(max(n, 2 * len(self.data)))
            grown[: len(self.data)] = self.data
            self.data = grown

    def add(self, levels: np.ndarray, weights: np.ndarray | None = None) -> None:
        if len(levels) == 0:
            return
        top = int(levels.max()) + 1
        self._ensure(top)
        self.data[:top] += np.bincount(levels, weights=weights, minlength=top)[:top]

    def trimmed(self) -> np.ndarray:
        nz = np.nonzero(self.data)[0]
        if len(nz) == 0:
            return np.zeros(1)
        return self.data[: nz[-1] + 1].copy()


class _ArrivalStream:
    """Bounded-memory stream of Poisson arrival times.

    Draws exponential inter-arrival gaps in batches; every drawn gap is
    consumed in order, so the sample path for a given generator is
    independent of how it is chunked.
    """

    def __init__(self, rng: np.random.Generator, lam: float) -> None:
        self._rng = rng
        self._lam = lam
        self._next = rng.exponential(1.0 / lam)
        self._buffer = np.empty(0)

    def take_until(self, t_end: float) -> np.ndarray:
        """All arrival times strictly before t_end, in order."""
        parts = []
        if len(self._buffer):
            parts.append(self._buffer[self._buffer < t_end])
            self._buffer = self._buffer[self._buffer >= t_end]
        while len(self._buffer) == 0 and self._next < t_end:
            span = t_end - self._next
            m = max(64, int(self._lam * span * 1.1) + 32)
            gaps = self._rng.exponential(1.0 / self._lam, size=m)
            times = self._next + np.concatenate(([0.0], np.cumsum(gaps[:-1])))
            self._next = times[-1] + gaps[-1]
            parts.append(times[times < t_end])
            self._buffer = times[times >= t_end]
        if not parts:
            return np.empty(0)
        return np.concatenate(parts) if len(parts) > 1 else parts[0]


def _chunk_blocks_for(lam: float, tau: float, horizon: int) -> int:
    target_arrivals = 3_000_000.0
    return max(2048, min(horizon, int(target_arrivals / max(lam * tau, 0.5)) + 1))


class _WindowStats:
    """Accumulates post-warmup statistics shared by both engines."""

    def __init__(self, warmup: int, horizon: int, tau: float) -> None:
        self.warmup = warmup
        self.horizon = horizon
        self.tau = tau
        self.time_at_level = _LevelAccumulator()
        self.arrival_levels = _LevelAccumulator()
        self.sum_sojourn = 0.0
        self.min_sojourn = math.inf
        self.n_sojourn = 0
        self.arrivals = 0
        self.served = 0
        self.queue_at_warmup = 0
        self.queue_at_end = 0
        self.idle_blocks = 0
        self.empty_after_blocks = 0

    def observe_chunk(
        self,
        k0: int,
        k1: int,
        t: np.ndarray,
        e: np.ndarray,
        levels_at_start: np.ndarray,
        served_per_block: np.ndarray,
    ) -> None:
        """Fold one chunk of epochs [k0, k1) into the running statistics.

        ``levels_at_start[j]`` is the queue length at the start of epoch
        k0 + j (just after the previous block served), with one extra
        trailing entry for the start of epoch k1.
        """
        tau = self.tau
        W = self.warmup
        if k0 <= W < k1:
            self.queue_at_warmup = int(levels_at_start[W - k0])
        if k0 <= self.horizon <= k1:
            self.queue_at_end = int(levels_at_start[self.horizon - k0])
        lo = max(W, k0)
        if lo >= k1:
            return
        self.served += int(served_per_block[lo - k0 :].sum())
        self.idle_blocks += int((served_per_block[lo - k0 :] == 0).sum())
        self.empty_after_blocks += int((levels_at_start[lo - k0 + 1 : k1 - k0 + 1] == 0).sum())

        n = len(t)
        if n:
            in_win = e >= lo
            tw, ew = t[in_win], e[in_win]
            self.arrivals += len(tw)
            # Queue length seen by each arrival: epoch-start level plus the
            # number of earlier arrivals in the same epoch.
            first_idx = np.searchsorted(e, ew, side="left")
            rank = np.nonzero(in_win)[0] - first_idx
            seen = levels_at_start[ew - k0] + rank
            self.arrival_levels.add(seen)
            # Each arrival holds the queue at level seen+1 until the next
            # event in its epoch (the next arrival or the block instant).
            nxt = (e + 1).astype(float) * tau
            same = e[1:] == e[:-1]
            nxt[:-1][same] = t[1:][same]
            self.time_at_level.add(seen + 1, weights=nxt[in_win] - tw)
        # Epoch-start level holds from the block instant to the first
        # arrival of the epoch (or the whole epoch when none arrives).
        ks = np.arange(lo, k1)
        if n:
            idx = np.searchsorted(e, ks)
            safe = np.minimum(idx, n - 1)
            has = (idx < n) & (e[safe] == ks)
            t_first = np.where(has, t[safe], (ks + 1) * tau)
        else:
            t_first = (ks + 1) * tau
        self.time_at_level.add(levels_at_start[lo - k0 : k1 - k0], weights=t_first - ks * tau)

    def add_sojourns(self, total: float, count: int, smallest: float) -> None:
        self.sum_sojourn += total
        self.n_sojourn += count
        if count and smallest < self.min_sojourn:
            self.min_sojourn = smallest

    def finish(self) -> ReplicationStats:
        measured_time = (self.horizon - self.warmup) * self.tau
        tad = self.time_at_level.trimmed() / measured_time
        s = tad.sum()
        if s > 0:
            tad /= s
        aod = self.arrival_levels.trimmed()
        total = aod.sum()
        aod = aod / total if total > 0 else np.array([1.0])
        mean_q = float(np.arange(len(tad)) @ tad)
        mean_soj = self.sum_sojourn / self.n_sojourn if self.n_sojourn else math.nan
        return ReplicationStats(
            mean_sojourn=mean_soj,
            min_sojourn=self.min_sojourn,
            mean_queue_length=mean_q,
            arrivals=self.arrivals,
            served=self.served,
            queue_at_warmup=self.queue_at_warmup,
            queue_at_end=self.queue_at_end,
            idle_blocks=self.idle_blocks,
            empty_after_blocks=self.empty_after_blocks,
            blocks=self.horizon,
            time_avg=tad,
            arrival_obs=aod,
        )


def _run_uniform_size(
    lam: float, tau: float, capacity: int, horizon: int, warmup: int, rng: np.random.Generator
) -> ReplicationStats:
    """Vectorized replication for BTXs of one fixed size.

    With every BTX occupying the same number of blob slots, each block
    serves up to ``capacity`` BTXs and the departure block of arrival i
    obeys d[i] = max(e[i], d[i - capacity] + 1); the recursion is solved
    per residue class with a running maximum.  Departures are resolved
    for every arrival (blocks keep firing past the horizon), so sojourns
    of BTXs arriving near the end are measured exactly, not censored.
    """
    C = capacity
    stream = _ArrivalStream(rng, lam)
    stats = _WindowStats(warmup, horizon, tau)
    carry_d = np.full(C, -1, dtype=np.int64)  # departures of the last C arrivals
    spill = np.zeros(0, dtype=np.int64)  # departures booked beyond the chunk
    level = 0
    chunk = _chunk_blocks_for(lam, tau, horizon)

    k0 = 0
    while k0 < horizon:
        k1 = min(k0 + chunk, horizon)
        t = stream.take_until(k1 * tau)
        n = len(t)
        e = np.floor_divide(t, tau).astype(np.int64)

        d = np.empty(n, dtype=np.int64)
        for r in range(min(C, n)):
            x = e[r::C]
            steps = np.arange(1, len(x) + 1, dtype=np.int64)
            v = x - steps
            v[0] = max(v[0], carry_d[r])
            d[r::C] = np.maximum.accumulate(v) + steps
        if n:
            if n >= C:
                carry_d = d[-C:].copy()
            else:
                carry_d = np.concatenate([carry_d[n:], d])

        nb = k1 - k0
        width = max(nb, len(spill), (int(d.max()) - k0 + 1) if n else 0)
        dep = np.zeros(width, dtype=np.int64)
        dep[: len(spill)] += spill
        if n:
            dep += np.bincount(d - k0, minlength=width)
        served_per_block = dep[:nb]
        spill = dep[nb:].copy()

        arrivals_per_block = (
            np.bincount(e - k0, minlength=nb) if n else np.zeros(nb, dtype=np.int64)
        )
        levels = np.empty(nb + 1, dtype=np.int64)
        levels[0] = level
        np.cumsum(arrivals_per_block - served_per_block, out=levels[1:])
        levels[1:] += level
        level = int(levels[-1])

        stats.observe_chunk(k0, k1, t, e, levels, served_per_block)
        if n:
            win = e >= max(warmup, k0)
            if win.any():
                sojourns = (d[win] + 1) * tau - t[win]
                stats.add_sojourns(float(sojourns.sum()), int(win.sum()), float(sojourns.min()))
        k0 = k1
    return stats.finish()


def _serve_block(queue: deque, B: int, policy: str) -> list[float]:
    """Pop the BTXs served by one block; returns their arrival times."""
    served: list[float] = []
    cap = B
    if policy == FIFO_BLOCKING:
        while queue and queue[0][1] <= cap:
            at, size = queue.popleft()
            cap -= size
            served.append(at)
    else:  # first-fit
        kept = []
        for at, size in queue:
            if size <= cap:
                cap -= size
                served.append(at)
            else:
                kept.append((at, size))
        queue.clear()
        queue.extend(kept)
    return served


def _run_mixed_sizes(
    lam: float,
    tau: float,
    B: int,
    size_dist: np.ndarray,
    policy: str,
    horizon: int,
    warmup: int,
    rng: np.random.Generator,
) -> ReplicationStats:
    """Per-block replication for mixed blob sizes (either packing policy)."""
    stream = _ArrivalStream(rng, lam)
    stats = _WindowStats(warmup, horizon, tau)
    queue: deque[tuple[float, int]] = deque()
    level = 0
    warmup_time = warmup * tau
    chunk = _chunk_blocks_for(lam, tau, horizon)

    k0 = 0
    while k0 < horizon:
        k1 = min(k0 + chunk, horizon)
        t = stream.take_until(k1 * tau)
        n = len(t)
        e = np.floor_divide(t, tau).astype(np.int64)
        if len(size_dist) == 1:
            # Degenerate distribution: skip the draw so the arrival stream
            # matches the uniform-size engine draw-for-draw.
            sizes = np.ones(n, dtype=np.int64)
        else:
            sizes = rng.choice(len(size_dist), size=n, p=size_dist) + 1

        nb = k1 - k0
        served_per_block = np.zeros(nb, dtype=np.int64)
        levels = np.empty(nb + 1, dtype=np.int64)
        ptr = 0
        for k in range(k0, k1):
            levels[k - k0] = level
            hi = int(np.searchsorted(e, k, side="right"))
            while ptr < hi:
                queue.append((float(t[ptr]), int(sizes[ptr])))
                ptr += 1
                level += 1
            done = _serve_block(queue, B, policy)
            served_per_block[k - k0] = len(done)
            level -= len(done)
            if k >= warmup:
                block_time = (k + 1) * tau
                for at in done:
                    if at >= warmup_time:
                        stats.add_sojourns(block_time - at, 1, block_time - at)
        levels[nb] = level
        stats.observe_chunk(k0, k1, t, e, levels, served_per_block)
        k0 = k1

    # Drain: blocks keep firing past the horizon so every measured BTX
    # gets its true departure time (no censoring of late arrivals).
    k = horizon
    while queue:
        done = _serve_block(queue, B, policy)
        block_time = (k + 1) * tau
        for at in done:
            if at >= warmup_time:
                stats.add_sojourns(block_time - at, 1, block_time - at)
        k += 1
    return stats.finish()


def _replication_seeds(seed: int, replications: int) -> list[np.random.Generator]:
    children = np.random.SeedSequence(seed).spawn(replications)
    return [np.random.default_rng(c) for c in children]


def simulate(config: SimConfig) -> SimResult:
    """Run all replications of a configuration and aggregate the results.

    Deterministic for a fixed config and seed.  The 95% confidence
    interval uses Student-t over per-replication mean sojourns.
    """
    reps: list[ReplicationStats] = []
    fixed = config.fixed_blob_size()
    for rng in _replication_seeds(config.seed, config.replications):
        if fixed is not None:
            capacity = config.B // fixed
            rep = _run_uniform_size(
                config.lam, config.tau, capacity, config.horizon_blocks, config.warmup, rng
            )
        else:
            rep = _run_mixed_sizes(
                config.lam,
                config.tau,
                config.B,
                config.size_dist,
                config.packing_policy,
                config.horizon_blocks,
                config.warmup,
                rng,
            )
        reps.append(rep)

    means = [r.mean_sojourn for r in reps]
    ordered = sorted(means)
    r = len(ordered)
    mean = math.fsum(ordered) / r
    if r > 1:
        var = math.fsum((m - mean) ** 2 for m in ordered) / (r - 1)
        half = float(student_t.ppf(0.975, r - 1)) * math.sqrt(var / r)
        ci = (mean - half, mean + half)
    else:
        ci = (mean, mean)

    width = max(len(rep.time_avg) for rep in reps)
    tad = np.zeros(width)
    for rep in reps:
        tad[: len(rep.time_avg)] += rep.time_avg
    tad /= tad.sum()
    awidth = max(len(rep.arrival_obs) for rep in reps)
    aod = np.zeros(awidth)
    for rep in reps:
        aod[: len(rep.arrival_obs)] += rep.arrival_obs
    aod /= aod.sum()

    return SimResult(
        mean_sojourn=mean,
        ci95=ci,
        mean_queue_length=float(np.arange(width) @ tad),
        time_avg_distribution=tad,
        arrival_observed_distribution=aod,
        blocks_simulated=config.horizon_blocks * r,
        btx_served=sum(rep.served for rep in reps),
        per_replication_means=tuple(means),
        per_replication=tuple(reps),
    )


@dataclass(frozen=True, eq=False)
class StateCheck:
    """Per-state comparison of a simulated distribution against pi_bar."""

    state: int
    simulated: float
    analytic: float
    std_error: float
    z_score: float
    ok: bool


@dataclass(frozen=True, eq=False)
class ValidationReport:
    """Pass/fail comparison of a simulation against the analytic solution."""

    passed: bool
    t_inside_ci: bool
    analytic_T: float
    sim_ci95: tuple[float, float]
    time_avg_checks: tuple[StateCheck, ...]
    arrival_obs_checks: tuple[StateCheck, ...]
    time_avg_ok: bool
    arrival_obs_ok: bool
    sim: SimResult = field(repr=False, default=None)


def _distribution_checks(
    per_rep: list[np.ndarray],
    analytic: np.ndarray,
    total_samples: float,
    min_expected: float,
    z_limit: float,
) -> tuple[StateCheck, ...]:
    r = len(per_rep)
    width = max(max(len(p) for p in per_rep), len(analytic))
    stack = np.zeros((r, width))
    for i, p in enumerate(per_rep):
        stack[i, : len(p)] = p
    ana = np.zeros(width)
    ana[: len(analytic)] = analytic

    checks = []
    for state in range(width):
        expected = ana[state] * total_samples
        if expected < min_expected:
            continue
        sim_mean = float(stack[:, state].mean())
        se = float(stack[:, state].std(ddof=1)) / math.sqrt(r) if r > 1 else 0.0
        diff = abs(sim_mean - ana[state])
        z = diff / se if se > 0 else (0.0 if diff == 0 else math.inf)
        checks.append(
            StateCheck(
                state=state,
                simulated=sim_mean,
                analytic=float(ana[state]),
                std_error=se,
                z_score=z,
                ok=z <= z_limit,
            )
        )
    return tuple(checks)


def validate_against_analytic(
    config: SimConfig,
    analytic: QueueMetrics,
    *,
    min_expected_count: float = 25.0,
    z_limit: float = 3.0,
) -> ValidationReport:
    """Simulate ``config`` and test it against an analytic solution.

    Requires single-blob BTXs (the regime the analysis covers).  Checks
    that the analytic mean delay lies inside the simulated 95% CI and
    that both observed queue-length distributions (time-averaged and
    arrival-observed; the latter is the Poisson-arrivals-see-time-averages
    check) agree with pi_bar within ``z_limit`` standard errors on every
    state with at least ``min_expected_count`` expected observations.
    """
    if config.fixed_blob_size() != 1:
        raise InvalidConfigError("validation requires single-blob BTXs")
    if analytic.pi_bar is None:
        raise InvalidParameterError("analytic metrics must carry its distribution")

    sim = simulate(config)
    t_ok = sim.ci95[0] <= analytic.T <= sim.ci95[1]

    pi = analytic.pi_bar.probs
    blocks_measured = (config.horizon_blocks - config.warmup) * config.replications
    arrivals_total = sum(rep.arrivals for rep in sim.per_replication)
    tad_checks = _distribution_checks(
        [rep.time_avg for rep in sim.per_replication],
        pi,
        blocks_measured,
        min_expected_count,
        z_limit,
    )
    aod_checks = _distribution_checks(
        [rep.arrival_obs for rep in sim.per_replication],
        pi,
        arrivals_total,
        min_expected_count,
        z_limit,
    )
    tad_ok = all(c.ok for c in tad_checks)
    aod_ok = all(c.ok for c in aod_checks)
    return ValidationReport(
        passed=t_ok and tad_ok and aod_ok,
        t_inside_ci=t_ok,
        analytic_T=analytic.T,
        sim_ci95=sim.ci95,
        time_avg_checks=tad_checks,
        arrival_obs_checks=aod_checks,
        time_avg_ok=tad_ok,
        arrival_obs_ok=aod_ok,
        sim=sim,
    )


@dataclass(frozen=True, eq=False)
class EffectiveBatchResult:
    """Delay comparison of many small BTXs versus few blob-saturating ones."""

    rho: float
    lam: float
    tau: float
    B: int
    single_blob: SimResult
    full_batch: SimResult
    analytic_full_batch: QueueMetrics


def effective_batch_experiment(
    lam: float,
    tau: float,
    B: int,
    *,
    horizon_blocks: int = 200_000,
    warmup_blocks: int | None = None,
    seed: int = 0,
    replications: int = 10,
) -> EffectiveBatchResult:
    """Compare two ways of offering the same blob load rho = lam*tau/B.

    (a) single-blob BTXs at rate lam; (b) BTXs that use all B blob slots,
    at rate lam/B.  Case (b) serves exactly one BTX per block, which is
    the capacity-1 system at rate lam/B, so its simulated sojourn must
    match the analytic solution of that queue.
    """
    rho = lam * tau / B
    if rho >= 1.0:
        raise InvalidParameterError(f"offered load rho = {rho:.6g} must be < 1")
    seeds = np.random.SeedSequence(seed).spawn(2)
    seed_a = int(seeds[0].generate_state(1, np.uint64)[0])
    seed_b = int(seeds[1].generate_state(1, np.uint64)[0])

    single = simulate(
        SimConfig(
            lam=lam,
            tau=tau,
            B=B,
            horizon_blocks=horizon_blocks,
            warmup_blocks=warmup_blocks,
            seed=seed_a,
            replications=replications,
        )
    )
    full_dist = tuple([0.0] * (B - 1) + [1.0])
    full = simulate(
        SimConfig(
            lam=lam / B,
            tau=tau,
            B=B,
            blob_size_dist=full_dist,
            horizon_blocks=horizon_blocks,
            warmup_blocks=warmup_blocks,
            seed=seed_b,
            replications=replications,
        )
    )
    analytic_full = solve_delay(lam / B, tau, 1)
    return EffectiveBatchResult(
        rho=rho,
        lam=lam,
        tau=tau,
        B=B,
        single_blob=single,
        full_batch=full,
        analytic_full_batch=analytic_full,
    )
