"""Figure rendering for blobqueue sweep CSV files."""

from .render import (
    KINDS,
    SWEEP_COLUMNS,
    EmptySeriesError,
    FigureError,
    FigureSpec,
    MissingColumnError,
    load_sweep_csv,
    render,
)

__version__ = "0.1.0"

__all__ = [
    "KINDS",
    "SWEEP_COLUMNS",
    "FigureSpec",
    "FigureError",
    "MissingColumnError",
    "EmptySeriesError",
    "load_sweep_csv",
    "render",
]
