import numpy as np
import pytest

from blobqueue import InvalidParameterError, sweep_load


def test_empty_grid_gives_empty_table():
    assert sweep_load(6, 12.0, []) == []


def test_delay_monotone_in_load():
    grid = [round(0.05 * k, 2) for k in range(1, 20)]
    rows = sweep_load(6, 12.0, grid)
    assert [r.status for r in rows] == ["ok"] * len(grid)
    ts = [r.T for r in rows]
    assert all(b >= a for a, b in zip(ts, ts[1:]))
    assert [r.rho for r in rows] == sorted(grid)


def test_delay_decreases_with_capacity_at_fixed_load():
    ts = {}
    for B in (3, 6, 16):
        (row,) = sweep_load(B, 12.0, [0.7])
        ts[B] = row.T
    assert ts[16] < ts[6] < ts[3]


def test_rows_carry_rate_and_population():
    (row,) = sweep_load(6, 12.0, [0.5])
    assert row.lam == pytest.approx(0.25)
    assert row.N == pytest.approx(row.T * row.lam, rel=1e-12)


def test_failures_are_flagged_not_raised():
    rows = sweep_load(6, 12.0, [0.5, 0.9995])
    assert rows[0].status == "ok"
    assert rows[1].status == "unstable-load"
    assert rows[1].T is None and rows[1].N is None


def test_out_of_range_load_rejected():
    with pytest.raises(InvalidParameterError):
        sweep_load(6, 12.0, [0.5, 1.0])
    with pytest.raises(InvalidParameterError):
        sweep_load(6, 12.0, [0.0])


def test_grid_order_independence():
    a = sweep_load(6, 12.0, [0.7, 0.2, 0.5])
    b = sweep_load(6, 12.0, [0.2, 0.5, 0.7])
    assert [(r.rho, r.T) for r in a] == [(r.rho, r.T) for r in b]
