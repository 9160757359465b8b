"""Exception types shared across the toolkit."""

from __future__ import annotations


class BlobQueueError(Exception):
    """Base class for all toolkit errors."""


class InvalidParameterError(BlobQueueError, ValueError):
    """An argument violates a documented precondition."""


class UnstableLoadError(BlobQueueError):
    """Offered load is at or beyond the stability boundary."""

    def __init__(self, message: str, *, rho: float, margin: float) -> None:
        super().__init__(message)
        self.rho = rho
        self.margin = margin


class NoConvergenceError(BlobQueueError):
    """A numeric contract could not be met within the configured budget.

    Carries the best result achieved so far so callers can inspect it.
    """

    def __init__(self, message: str, *, achieved: dict | None = None) -> None:
        super().__init__(message)
        self.achieved = achieved or {}


class InvalidConfigError(BlobQueueError, ValueError):
    """A simulation configuration violates its invariants."""


class ParseError(BlobQueueError):
    """A block file row could not be parsed; fails fast with position info."""

    def __init__(self, message: str, *, path: str, line: int) -> None:
        super().__init__(f"{path}:{line}: {message}")
        self.path = path
        self.line = line


class DuplicateBlockError(ParseError):
    """The same block number appeared more than once in a block file."""


class RangeError(BlobQueueError, ValueError):
    """An invalid block range was requested."""


class NetworkError(BlobQueueError):
    """Transport-level failure that persisted through all retries."""


class RpcError(BlobQueueError):
    """The JSON-RPC endpoint answered with an error object."""

    def __init__(self, message: str, *, code: int | None = None) -> None:
        super().__init__(message)
        self.code = code
