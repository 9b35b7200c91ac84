import math

import numpy as np
import pytest
from pydantic import ValidationError

from config import ADIABATIC_GRID, NONADIABATIC_GRID, SweepConfig
from errors import ResolutionError
from open_system import FidelityReport, fidelity_sweep, nonadiabatic_protocol, run_grid_point
from open_system import sweep as sweep_module
from quantum_core import TOL


def fast_config(**kwargs) -> SweepConfig:
    defaults = dict(kind="nonadiabatic-decay", grid=(5.0, 50.0), n_states=10, steps_per_window=2000)
    return SweepConfig(**{**defaults, **kwargs})


class TestFidelityReport:

    def test_order_is_enforced(self):
        with pytest.raises(ValidationError):
            FidelityReport(parameter=1.0, min_fidelity=0.9, avg_fidelity=0.8, max_fidelity=1.0,
                           n_states=3, max_trace_dev=0.0, min_eigenvalue=0.0)

    def test_nan_row_is_allowed(self):
        nan = float("nan")
        report = FidelityReport(parameter=1.0, min_fidelity=nan, avg_fidelity=nan, max_fidelity=nan,
                                n_states=3, max_trace_dev=nan, min_eigenvalue=nan, flagged=True)
        assert math.isnan(report.avg_fidelity)

    def test_summary_lists_statistics(self):
        report = FidelityReport(parameter=1.0, min_fidelity=0.5, avg_fidelity=0.75, max_fidelity=1.0,
                                n_states=3, max_trace_dev=0.0, min_eigenvalue=0.0)
        assert "avg fidelity: 0.75" in report.summary()


class TestGridPoint:

    def test_single_state_has_equal_statistics(self):
        report = run_grid_point(fast_config(n_states=1), 50.0)
        assert report.n_states == 1
        assert report.min_fidelity == report.avg_fidelity == report.max_fidelity

    def test_statistics_are_ordered(self):
        report = run_grid_point(fast_config(), 50.0)
        assert report.min_fidelity <= report.avg_fidelity <= report.max_fidelity
        assert report.max_trace_dev < TOL.lindblad_trace
        assert not report.flagged

    def test_failure_becomes_flagged_row(self, monkeypatch):
        def failing(cfg, parameter):
            raise ResolutionError("too coarse")

        monkeypatch.setattr(sweep_module, "build_protocol", failing)
        report = run_grid_point(fast_config(), 5.0)
        assert report.flagged
        assert math.isnan(report.min_fidelity)
        assert "ResolutionError" in report.warnings[0]

    def test_tolerance_breach_flags_row(self, monkeypatch):
        monkeypatch.setattr(TOL, "lindblad_trace", -1.0)
        assert run_grid_point(fast_config(), 5.0).flagged

    @pytest.mark.parametrize("kind, parameter", [("nonadiabatic-decay", 50.0), ("adiabatic-decay", 20.0)])
    def test_rows_depend_only_on_rate_ratios(self, kind, parameter):
        unit = run_grid_point(fast_config(kind=kind, gamma=1.0), parameter)
        doubled = run_grid_point(fast_config(kind=kind, gamma=2.0), parameter)
        assert doubled.min_fidelity == pytest.approx(unit.min_fidelity, abs=1e-9)
        assert doubled.avg_fidelity == pytest.approx(unit.avg_fidelity, abs=1e-9)
        assert doubled.max_fidelity == pytest.approx(unit.max_fidelity, abs=1e-9)

    def test_decay_free_rows_use_unit_rate(self):
        assert fast_config(gamma=0.0).rate_unit == 1.0
        assert fast_config(gamma=2.5).rate_unit == 2.5

    def test_overlap_warning_does_not_flag(self):
        cfg = fast_config(gamma=0.0, steps_per_window=1000)
        run = nonadiabatic_protocol(0.5, cfg)
        assert run.warnings
        report = sweep_module.evaluate_protocol(run, 0.5, np.array([[1.0, 0.0]]))
        assert not report.flagged
        assert report.warnings == run.warnings


class TestSweep:

    def test_default_grids(self):
        assert SweepConfig(kind="nonadiabatic-decay").grid == NONADIABATIC_GRID
        assert SweepConfig(kind="adiabatic-decay").grid == ADIABATIC_GRID
        assert ADIABATIC_GRID[0] == 10.0 and ADIABATIC_GRID[-1] == 200.0

    def test_rows_follow_grid(self):
        cfg = fast_config(grid=(5.0, 20.0, 50.0))
        assert [r.parameter for r in fidelity_sweep(cfg)] == [5.0, 20.0, 50.0]

    def test_worker_count_does_not_change_results(self):
        cfg = fast_config(grid=(5.0, 20.0, 50.0))
        serial = fidelity_sweep(cfg, workers=1)
        parallel = fidelity_sweep(cfg, workers=3)
        assert [r.model_dump() for r in serial] == [r.model_dump() for r in parallel]

    def test_samplers_agree(self):
        fibonacci = run_grid_point(fast_config(n_states=2000), 50.0)
        uniform = run_grid_point(fast_config(n_states=2000, sampler="seeded-uniform", seed=11), 50.0)
        assert fibonacci.avg_fidelity == pytest.approx(uniform.avg_fidelity, abs=1e-3)

    @pytest.mark.slow
    def test_nonadiabatic_fidelity_rises_with_pulse_strength(self):
        cfg = SweepConfig(kind="nonadiabatic-decay", n_states=500, steps_per_window=5000)
        reports = fidelity_sweep(cfg, workers=4)
        averages = [r.avg_fidelity for r in reports]
        assert all(b >= a - 1e-9 for a, b in zip(averages, averages[1:]))
        assert averages[-1] > 0.99
        assert not any(r.flagged for r in reports)

    @pytest.mark.slow
    def test_adiabatic_fidelity_oscillates_without_decay(self):
        cfg = SweepConfig(kind="adiabatic-nodecay", n_states=200, steps_per_window=2000)
        averages = np.array([r.avg_fidelity for r in fidelity_sweep(cfg, workers=4)])
        interior = averages[1:-1]
        peaks = (interior > averages[:-2]) & (interior > averages[2:])
        assert peaks.sum() >= 2
        assert averages[-1] > 0.99

    @pytest.mark.slow
    def test_adiabatic_fidelity_with_decay(self):
        cfg = SweepConfig(kind="adiabatic-decay", grid=(200.0,), n_states=200, steps_per_window=2000)
        [report] = fidelity_sweep(cfg)
        assert report.avg_fidelity > 0.98
        assert report.max_trace_dev < TOL.lindblad_trace
