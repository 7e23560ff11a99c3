import io

from knapcrack.bench import (
    CSV_COLUMNS,
    TrialGrid,
    TrialRecord,
    run_grid,
    summarize,
    write_csv,
)


def test_single_point_grid():
    grid = TrialGrid(n_values=(16,), trials_per_point=1, seed_base=77)
    records = run_grid(grid)
    assert len(records) == 1
    assert records[0].n == 16


def test_grid_deterministic():
    grid = TrialGrid(n_values=(16,), trials_per_point=3, seed_base=5)
    a = run_grid(grid)
    b = run_grid(grid)
    # wall time varies; everything else must be byte-identical
    strip = lambda r: (r.n, r.seed, r.success, r.candidates, r.selection_ok, r.swaps)
    assert [strip(r) for r in a] == [strip(r) for r in b]


def test_summarize_empty():
    assert summarize([]) == []


def test_summarize_rates():
    recs = [
        TrialRecord(n=16, seed=i, success=(i % 2 == 0), wall_ms=float(i),
                    candidates=1, selection_ok=True, swaps=0)
        for i in range(4)
    ]
    (row,) = summarize(recs)
    assert row["successes"] == 2
    assert row["success_rate"] == 0.5
    assert row["median_wall_ms"] == 1.5


def test_summarize_all_success():
    recs = [TrialRecord(n=24, seed=0, success=True, wall_ms=1.0,
                        candidates=2, selection_ok=False, swaps=3)]
    (row,) = summarize(recs)
    assert row["success_rate"] == 1.0


def test_csv_output():
    grid = TrialGrid(n_values=(16,), trials_per_point=2, seed_base=1)
    records = run_grid(grid)
    buf = io.StringIO()
    write_csv(records, buf)
    lines = buf.getvalue().strip().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 3
