import importlib.util
import subprocess
import sys

import pytest

from blobqueue_figures import (
    EmptySeriesError,
    FigureError,
    FigureSpec,
    MissingColumnError,
    load_sweep_csv,
    render,
)

HEADER = "B,tau,rho,lambda,N_analytic,T_analytic,T_sim_mean,T_sim_ci_low,T_sim_ci_high,status"

ROWS_WITH_SIM = [
    "3,12,0.2,0.05,0.51,10.2,10.1,10.0,10.3,ok",
    "3,12,0.5,0.125,1.3,10.9,10.8,10.6,11.0,ok",
    "3,12,0.8,0.2,3.1,15.5,15.2,14.9,15.8,ok",
    "6,12,0.2,0.1,0.61,6.1,6.05,6.0,6.2,ok",
    "6,12,0.5,0.25,1.56,6.24,6.21,6.1,6.3,ok",
    "6,12,0.8,0.4,4.3,8.6,8.5,8.3,8.8,ok",
]

ROWS_ANALYTIC_ONLY = [
    "1,12,0.5,0.042,0.5,12,,,,ok",
    "2,12,0.5,0.083,0.74,8.9,,,,ok",
    "6,12,0.5,0.25,1.56,6.24,,,,ok",
    "1,12,0.7,0.058,1.17,20,,,,ok",
    "2,12,0.7,0.117,1.39,11.9,,,,ok",
    "6,12,0.7,0.35,2.53,7.2,,,,ok",
]


def _csv(tmp_path, rows, name="sweep.csv"):
    path = tmp_path / name
    path.write_text(HEADER + "\n" + "\n".join(rows) + "\n", encoding="utf-8")
    return path


def _line_points(fig):
    return {
        line.get_label(): line.get_xydata().tolist()
        for ax in fig.axes
        for line in ax.get_lines()
        if not line.get_label().startswith("_")
    }


def test_delay_vs_rho_one_point_per_row(tmp_path):
    path = _csv(tmp_path, ROWS_WITH_SIM)
    out = tmp_path / "fig.png"
    fig = render(FigureSpec(inputs=(str(path),), kind="delay-vs-rho", output=str(out)))
    assert out.exists() and out.stat().st_size > 0
    ax = fig.axes[0]
    analytic_lines = [l for l in ax.get_lines() if "analytic" in str(l.get_label())]
    assert len(analytic_lines) == 2  # one curve per B
    total_points = sum(len(l.get_xydata()) for l in analytic_lines)
    assert total_points == len(ROWS_WITH_SIM)
    # CI bars present: errorbar containers, one per B.
    assert len(ax.containers) == 2


def test_delay_vs_rho_without_sim_columns(tmp_path):
    path = _csv(tmp_path, ROWS_ANALYTIC_ONLY)
    out = tmp_path / "fig.png"
    fig = render(FigureSpec(inputs=(str(path),), kind="delay-vs-rho", output=str(out)))
    assert len(fig.axes[0].containers) == 0  # no CI bars without sim data


def test_delay_vs_batch_one_point_per_row(tmp_path):
    path = _csv(tmp_path, ROWS_ANALYTIC_ONLY)
    out = tmp_path / "fig.png"
    fig = render(FigureSpec(inputs=(str(path),), kind="delay-vs-batch", output=str(out)))
    points = _line_points(fig)
    assert set(points) == {"rho = 0.5", "rho = 0.7"}
    assert sum(len(v) for v in points.values()) == len(ROWS_ANALYTIC_ONLY)
    # Delay falls as capacity grows along each curve.
    for series in points.values():
        ys = [y for _, y in series]
        assert ys == sorted(ys, reverse=True)


def test_missing_column_rejected(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("B,tau,rho\n6,12,0.5\n", encoding="utf-8")
    with pytest.raises(MissingColumnError):
        load_sweep_csv(path)
    with pytest.raises(MissingColumnError):
        render(FigureSpec(inputs=(str(path),), kind="delay-vs-rho", output=str(tmp_path / "x.png")))


def test_empty_series_rejected(tmp_path):
    rows = ["6,12,0.9995,0.49975,,,,,,unstable-load"]
    path = _csv(tmp_path, rows)
    with pytest.raises(EmptySeriesError):
        render(FigureSpec(inputs=(str(path),), kind="delay-vs-rho", output=str(tmp_path / "x.png")))


def test_unknown_kind_rejected(tmp_path):
    with pytest.raises(FigureError):
        FigureSpec(inputs=("a.csv",), kind="pie", output="x.png")


def test_inputs_never_mutated_and_series_deterministic(tmp_path):
    path = _csv(tmp_path, ROWS_WITH_SIM)
    before = path.read_bytes()
    spec = FigureSpec(inputs=(str(path),), kind="delay-vs-rho", output=str(tmp_path / "a.png"))
    fig1 = render(spec)
    fig2 = render(FigureSpec(inputs=(str(path),), kind="delay-vs-rho",
                             output=str(tmp_path / "b.png")))
    assert path.read_bytes() == before
    assert _line_points(fig1) == _line_points(fig2)


def test_cli_renders(tmp_path):
    from blobqueue_figures.cli import main

    path = _csv(tmp_path, ROWS_ANALYTIC_ONLY)
    out = tmp_path / "cli.png"
    code = main(["--input", str(path), "--kind", "delay-vs-batch", "--output", str(out)])
    assert code == 0
    assert out.exists()
    code = main(["--input", str(tmp_path / "missing.csv"), "--kind", "delay-vs-rho",
                 "--output", str(out)])
    assert code == 1


@pytest.mark.skipif(
    importlib.util.find_spec("blobqueue") is None,
    reason="primary package not installed",
)
def test_acceptance_render_from_real_sweep(tmp_path):
    """Secondary acceptance: render both figure kinds from CSVs produced
    by the primary CLI, one plotted point per row."""
    rho_csv = tmp_path / "rho_sweep.csv"
    batch_csv = tmp_path / "batch_sweep.csv"
    base = [sys.executable, "-m", "blobqueue.cli"]
    subprocess.run(
        base + ["sweep", "--B", "3,6,16", "--tau", "12", "--rho", "0.1:0.9:0.2",
                "--with-sim", "--seed", "42", "--blocks", "4000", "--warmup", "400",
                "--replications", "4", "--out", str(rho_csv)],
        check=True,
    )
    subprocess.run(
        base + ["sweep", "--B", "1,2,3,6,16", "--tau", "12", "--rho", "0.5,0.7,0.9",
                "--out", str(batch_csv)],
        check=True,
    )
    n_rho_rows = len(rho_csv.read_text().splitlines()) - 1
    n_batch_rows = len(batch_csv.read_text().splitlines()) - 1

    fig_rho = render(FigureSpec(inputs=(str(rho_csv),), kind="delay-vs-rho",
                                output=str(tmp_path / "delay_vs_rho.png")))
    analytic_pts = sum(
        len(l.get_xydata())
        for l in fig_rho.axes[0].get_lines()
        if "analytic" in str(l.get_label())
    )
    assert analytic_pts == n_rho_rows == 15

    fig_batch = render(FigureSpec(inputs=(str(batch_csv),), kind="delay-vs-batch",
                                  output=str(tmp_path / "delay_vs_batch.png")))
    batch_pts = sum(len(v) for v in _line_points(fig_batch).values())
    assert batch_pts == n_batch_rows == 15
    assert (tmp_path / "delay_vs_rho.png").stat().st_size > 0
    assert (tmp_path / "delay_vs_batch.png").stat().st_size > 0
