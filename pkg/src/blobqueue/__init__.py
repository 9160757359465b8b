"""Queueing analysis of blob-carrying transactions in clocked batch service.

The package solves the steady state of a Poisson-input, fixed-interval,
batch-capacity-B queue (analytic module), validates it with a clocked
discrete-event simulator, and computes blob-usage statistics from
Ethereum block data.
"""

from .analytic import (
    ElapsedTimeKernel,
    EpochArrivalPMF,
    ModelParams,
    QueueMetrics,
    StateDistribution,
    SweepRow,
    TransitionMatrix,
    build_transition_matrix,
    elapsed_time_kernel,
    epoch_arrival_pmf,
    metrics,
    solve_delay,
    stationary_departure_distribution,
    sweep_load,
    time_stationary_distribution,
)
from .blobstats import (
    BlobUsageStats,
    BlockRecord,
    bundled_fixture_path,
    compute_usage_stats,
    fetch_blocks,
    implied_load,
    parse_block_file,
    write_block_file,
)
from .errors import (
    BlobQueueError,
    DuplicateBlockError,
    InvalidConfigError,
    InvalidParameterError,
    NetworkError,
    NoConvergenceError,
    ParseError,
    RangeError,
    RpcError,
    UnstableLoadError,
)
from .simulate import (
    EffectiveBatchResult,
    ReplicationStats,
    SimConfig,
    SimResult,
    ValidationReport,
    effective_batch_experiment,
    simulate,
    validate_against_analytic,
)

__version__ = "0.1.0"

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
    "SimConfig",
    "SimResult",
    "ReplicationStats",
    "ValidationReport",
    "EffectiveBatchResult",
    "simulate",
    "validate_against_analytic",
    "effective_batch_experiment",
    "BlockRecord",
    "BlobUsageStats",
    "parse_block_file",
    "write_block_file",
    "fetch_blocks",
    "compute_usage_stats",
    "implied_load",
    "bundled_fixture_path",
    "BlobQueueError",
    "InvalidParameterError",
    "InvalidConfigError",
    "UnstableLoadError",
    "NoConvergenceError",
    "ParseError",
    "DuplicateBlockError",
    "RangeError",
    "NetworkError",
    "RpcError",
]
