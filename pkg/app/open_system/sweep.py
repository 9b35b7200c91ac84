"""Fidelity sweeps over a parameter grid with a concurrent worker pool."""

import asyncio
import logging
import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from config import SweepConfig
from errors import HolonomyLabError
from open_system.experiments import (
    ProtocolRun,
    adiabatic_protocol,
    bloch_sphere_amplitudes,
    nonadiabatic_protocol,
)
from quantum_core import TOL
from utils import output_logging


status_logger = logging.getLogger("status_logger")
output_logger = logging.getLogger("sweep_output_logger")


class FidelityReport(BaseModel):
    """
    Fidelity statistics at one grid point.

    Attributes:
        parameter (float): beta/gamma or Omega*T.
        min_fidelity (float): Smallest fidelity over the sampled inputs.
        avg_fidelity (float): Mean fidelity.
        max_fidelity (float): Largest fidelity.
        n_states (int): Number of sampled inputs.
        max_trace_dev (float): Largest |tr(rho_out) - 1|.
        min_eigenvalue (float): Smallest eigenvalue over all output states.
        flagged (bool): Whether a diagnostic left its tolerance.
        warnings (tuple[str, ...]): Diagnostic messages.
    """
    model_config = ConfigDict(frozen=True)

    parameter: float = Field(description="Grid value: beta/gamma or Omega*T.")
    min_fidelity: float = Field(description="Minimum fidelity over the input states.")
    avg_fidelity: float = Field(description="Average fidelity over the input states.")
    max_fidelity: float = Field(description="Maximum fidelity over the input states.")
    n_states: int = Field(ge=1, description="Number of input states.")
    max_trace_dev: float = Field(description="Largest trace deviation of an output state.")
    min_eigenvalue: float = Field(description="Smallest eigenvalue of an output state.")
    flagged: bool = Field(default=False, description="True when a diagnostic is out of tolerance.")
    warnings: tuple[str, ...] = Field(default=(), description="Diagnostic messages.")

    @model_validator(mode="after")
    def _check_order(self):
        values = (self.min_fidelity, self.avg_fidelity, self.max_fidelity)
        if not any(math.isnan(v) for v in values):
            if not self.min_fidelity <= self.avg_fidelity <= self.max_fidelity:
                raise ValueError("fidelities must satisfy min <= avg <= max")
        return self

    def summary(self) -> str:
        lines = [
            f"min fidelity: {self.min_fidelity:.12g}",
            f"avg fidelity: {self.avg_fidelity:.12g}",
            f"max fidelity: {self.max_fidelity:.12g}",
            f"states: {self.n_states}",
            f"max trace deviation: {self.max_trace_dev:.3e}",
            f"min eigenvalue: {self.min_eigenvalue:.3e}",
        ]
        return "\n".join(lines)


def evaluate_protocol(run: ProtocolRun, parameter: float, amplitudes: np.ndarray) -> FidelityReport:
    """Fidelity statistics of one protocol over a batch of qubit inputs."""
    rho = run.output_states(amplitudes)
    targets = run.target_states(amplitudes)
    overlaps = np.einsum("si,sij,sj->s", targets.conj(), rho, targets)

    warnings = list(run.warnings)
    imag = float(np.max(np.abs(overlaps.imag)))
    if imag >= TOL.fidelity_imag:
        warnings.append(f"fidelity imaginary part {imag:.3e}")
    fids = np.clip(overlaps.real, 0.0, 1.0)

    trace_dev = float(np.max(np.abs(np.trace(rho, axis1=1, axis2=2) - 1.0)))
    min_eig = float(np.min(np.linalg.eigvalsh(rho)))
    if trace_dev > TOL.lindblad_trace:
        warnings.append(f"trace deviation {trace_dev:.3e} exceeds {TOL.lindblad_trace:.1e}")
    if min_eig < TOL.lindblad_min_eig:
        warnings.append(f"eigenvalue {min_eig:.3e} below {TOL.lindblad_min_eig:.1e}")
    flagged = len(warnings) > len(run.warnings)

    lo, hi = float(fids.min()), float(fids.max())
    return FidelityReport(
        parameter=parameter,
        min_fidelity=lo,
        avg_fidelity=float(np.clip(fids.mean(), lo, hi)),
        max_fidelity=hi,
        n_states=int(fids.shape[0]),
        max_trace_dev=trace_dev,
        min_eigenvalue=min_eig,
        flagged=flagged,
        warnings=tuple(warnings),
    )


def build_protocol(cfg: SweepConfig, parameter: float) -> ProtocolRun:
    if cfg.kind == "nonadiabatic-decay":
        return nonadiabatic_protocol(parameter, cfg)
    return adiabatic_protocol(parameter, cfg)


def run_grid_point(cfg: SweepConfig, parameter: float, amplitudes: np.ndarray | None = None) -> FidelityReport:
    """
    One sweep row. Numerical trouble yields a flagged row of NaN fidelities
    instead of an exception.
    """
    if amplitudes is None:
        amplitudes = bloch_sphere_amplitudes(cfg.n_states, cfg.sampler, cfg.seed)
    try:
        report = evaluate_protocol(build_protocol(cfg, parameter), parameter, amplitudes)
    except HolonomyLabError as err:
        status_logger.warning("Grid point %s failed: %s", parameter, err)
        nan = float("nan")
        report = FidelityReport(parameter=parameter, min_fidelity=nan, avg_fidelity=nan,
                                max_fidelity=nan, n_states=int(amplitudes.shape[0]),
                                max_trace_dev=nan, min_eigenvalue=nan, flagged=True,
                                warnings=(f"{type(err).__name__}: {err}",))

    output_logging(output_logger,
                   f"{cfg.kind.upper()} / PARAMETER {parameter:g}",
                   report.summary(),
                   "; ".join(report.warnings) or None)
    return report


async def fidelity_sweep_async(cfg: SweepConfig, workers: int = 1) -> list[FidelityReport]:
    """Runs the grid points concurrently in worker threads; rows keep grid order."""
    amplitudes = bloch_sphere_amplitudes(cfg.n_states, cfg.sampler, cfg.seed)
    semaphore = asyncio.Semaphore(max(1, workers))

    async def run_point(parameter: float) -> FidelityReport:
        async with semaphore:
            status_logger.info("Running %s at %g", cfg.kind, parameter)
            report = await asyncio.to_thread(run_grid_point, cfg, parameter, amplitudes)
            status_logger.info("Finished %s at %g: avg fidelity %.6f",
                               cfg.kind, parameter, report.avg_fidelity)
            return report

    return list(await asyncio.gather(*(run_point(p) for p in cfg.grid)))


def fidelity_sweep(cfg: SweepConfig, workers: int = 1) -> list[FidelityReport]:
    """
    Min/avg/max gate fidelity for every grid point of ``cfg``.

    Every grid point uses the same sampled inputs and is computed
    independently, so the rows do not depend on ``workers``.
    """
    loop = asyncio.new_event_loop()
    try:
        return loop.run_until_complete(fidelity_sweep_async(cfg, workers))
    finally:
        loop.close()
