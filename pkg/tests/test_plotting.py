"""Checks of the sweep figure rendering."""

import os

import pytest

from wfsim.blackhole import run_sweep
from wfsim.plotting import render_sweep_figures, sweep_figure_paths


class TestSweepFigures:
    def test_paths_derive_from_csv_stem(self):
        paths = sweep_figure_paths("/tmp/report/table.csv")
        assert paths["fidelity"] == "/tmp/report/table_fidelity.png"
        assert paths["decoupling"] == "/tmp/report/table_decoupling.png"
        assert paths["entropies"] == "/tmp/report/table_entropies.png"

    def test_renders_three_figures(self, tmp_path):
        rows = run_sweep(n_interior=2, m_values=(0, 1, 2), seeds=2)
        csv_path = str(tmp_path / "table.csv")
        written = render_sweep_figures(rows, csv_path)
        assert len(written) == 3
        for path in written:
            assert os.path.exists(path)
            assert os.path.getsize(path) > 1000
        assert written[0].endswith("_fidelity.png")

    def test_single_m_value_still_renders(self, tmp_path):
        rows = run_sweep(n_interior=2, m_values=(1,), seeds=1)
        written = render_sweep_figures(rows, str(tmp_path / "one.csv"))
        assert all(os.path.exists(path) for path in written)

    def test_empty_rows_refused(self, tmp_path):
        with pytest.raises(ValueError):
            render_sweep_figures([], str(tmp_path / "none.csv"))
