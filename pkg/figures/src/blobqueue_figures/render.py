"""Render delay figures from blobqueue sweep CSV files.

Input is the sweep CSV schema emitted by ``blobqueue sweep``:

    B,tau,rho,lambda,N_analytic,T_analytic,T_sim_mean,T_sim_ci_low,T_sim_ci_high,status

Two figure kinds are supported:

* ``delay-vs-rho``: one analytic curve per capacity B, with simulation
  means drawn as markers and CI bars wherever the simulation columns are
  filled;
* ``delay-vs-batch``: analytic delay against capacity B, one line per
  distinct load rho.

Every plotted point corresponds to exactly one CSV row; nothing is
interpolated or invented, and input files are never modified.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402 - backend must be set first

__all__ = [
    "SWEEP_COLUMNS",
    "KINDS",
    "FigureSpec",
    "FigureError",
    "MissingColumnError",
    "EmptySeriesError",
    "load_sweep_csv",
    "render",
]

SWEEP_COLUMNS = (
    "B",
    "tau",
    "rho",
    "lambda",
    "N_analytic",
    "T_analytic",
    "T_sim_mean",
    "T_sim_ci_low",
    "T_sim_ci_high",
    "status",
)

DELAY_VS_RHO = "delay-vs-rho"
DELAY_VS_BATCH = "delay-vs-batch"
KINDS = (DELAY_VS_RHO, DELAY_VS_BATCH)

_FLOAT_COLUMNS = SWEEP_COLUMNS[1:9]


class FigureError(Exception):
    """Base class for rendering failures."""


class MissingColumnError(FigureError):
    """The input CSV does not carry the sweep schema."""


class EmptySeriesError(FigureError):
    """No plottable rows were found for the requested figure."""


@dataclass(frozen=True)
class FigureSpec:
    """What to render: inputs, figure kind, output image path."""

    inputs: tuple[str, ...]
    kind: str
    output: str
    log_delay: bool = False
    title: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise FigureError(f"unknown figure kind {self.kind!r}; pick one of {KINDS}")
        if not self.inputs:
            raise FigureError("at least one input CSV is required")


def load_sweep_csv(path: str | Path) -> list[dict]:
    """Read one sweep CSV; numeric fields become floats, blanks become None."""
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in SWEEP_COLUMNS if c not in header]
        if missing:
            raise MissingColumnError(f"{path}: missing column(s) {', '.join(missing)}")
        rows = []
        for raw in reader:
            row: dict = {"B": int(raw["B"]), "status": raw["status"]}
            for col in _FLOAT_COLUMNS:
                value = raw[col]
                row[col] = float(value) if value not in ("", None) else None
            rows.append(row)
    return rows


def _load_all(spec: FigureSpec) -> list[dict]:
    rows: list[dict] = []
    for path in spec.inputs:
        rows.extend(load_sweep_csv(path))
    return rows


def _series(rows: list[dict], key: str) -> dict:
    """Group rows by a column, preserving row order inside each group."""
    groups: dict = {}
    for row in rows:
        groups.setdefault(row[key], []).append(row)
    return dict(sorted(groups.items()))


def _render_delay_vs_rho(ax, rows: list[dict]) -> None:
    plotted = 0
    for B, group in _series(rows, "B").items():
        analytic = [(r["rho"], r["T_analytic"]) for r in group if r["T_analytic"] is not None]
        if analytic:
            xs, ys = zip(*analytic)
            ax.plot(xs, ys, label=f"B = {B} (analytic)")
            plotted += len(xs)
        with_sim = [r for r in group if r["T_sim_mean"] is not None]
        if with_sim:
            xs = [r["rho"] for r in with_sim]
            ys = [r["T_sim_mean"] for r in with_sim]
            if all(
                r["T_sim_ci_low"] is not None and r["T_sim_ci_high"] is not None
                for r in with_sim
            ):
                yerr = [
                    [r["T_sim_mean"] - r["T_sim_ci_low"] for r in with_sim],
                    [r["T_sim_ci_high"] - r["T_sim_mean"] for r in with_sim],
                ]
                ax.errorbar(xs, ys, yerr=yerr, fmt="o", markersize=3.5,
                            capsize=2, linestyle="none", label=f"B = {B} (simulation)")
            else:
                ax.plot(xs, ys, "o", markersize=3.5, linestyle="none",
                        label=f"B = {B} (simulation)")
    if plotted == 0:
        raise EmptySeriesError("no rows with an analytic delay to plot")
    ax.set_xlabel(r"offered load $\rho$")


def _render_delay_vs_batch(ax, rows: list[dict]) -> None:
    plotted = 0
    for rho, group in _series(rows, "rho").items():
        points = [(r["B"], r["T_analytic"]) for r in group if r["T_analytic"] is not None]
        if not points:
            continue
        points.sort()
        xs, ys = zip(*points)
        ax.plot(xs, ys, marker="o", markersize=3.5, label=f"rho = {rho:g}")
        plotted += len(xs)
    if plotted == 0:
        raise EmptySeriesError("no rows with an analytic delay to plot")
    ax.set_xlabel("blob capacity B")


def render(spec: FigureSpec):
    """Render the figure described by ``spec`` and write it to spec.output.

    Returns the matplotlib Figure so callers and tests can inspect the
    plotted series.
    """
    rows = _load_all(spec)
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    try:
        if spec.kind == DELAY_VS_RHO:
            _render_delay_vs_rho(ax, rows)
        else:
            _render_delay_vs_batch(ax, rows)
        ax.set_ylabel("mean delay [s]")
        if spec.log_delay:
            ax.set_yscale("log")
        if spec.title:
            ax.set_title(spec.title)
        ax.grid(True, alpha=0.3)
        ax.legend()
        fig.tight_layout()
        fig.savefig(spec.output, dpi=150)
    except Exception:
        plt.close(fig)
        raise
    return fig
