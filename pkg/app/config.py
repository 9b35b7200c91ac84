"""Pydantic models of the JSON experiment configuration."""

import json
import pathlib
from typing import Annotated, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from errors import ConfigError
from holonomy import DEFAULT_LOOP_STEPS


SCHEMA_VERSION = 1

NONADIABATIC_GRID = (5.0, 10.0, 20.0, 50.0, 100.0, 200.0, 500.0, 1000.0, 2000.0, 5000.0)
ADIABATIC_GRID = tuple(float(x) for x in np.arange(10, 201, 5))

SweepKind = Literal["nonadiabatic-decay", "adiabatic-decay", "adiabatic-nodecay"]


class SweepConfig(BaseModel):
    """
    Decay experiment sweep.

    The grid holds beta/gamma for the non-adiabatic kind and Omega*T for the
    adiabatic kinds. Every rate is expressed through ``rate_unit``, so rows
    depend only on the ratios and not on the value of gamma.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: SweepKind = Field(description="Experiment: nonadiabatic-decay, adiabatic-decay or adiabatic-nodecay.")
    grid: tuple[float, ...] = Field(
        default=(),
        description="Strictly increasing positive parameter values (beta/gamma or Omega*T); "
                    "empty selects the default grid of the kind."
    )
    n_states: int = Field(default=4000, ge=1, description="Number of sampled input states per grid point.")
    sampler: Literal["fibonacci", "seeded-uniform"] = Field(
        default="fibonacci", description="Bloch-sphere sampler for the input states."
    )
    seed: int = Field(default=0, ge=0, description="Seed of the seeded-uniform sampler.")
    omega_over_gamma: float = Field(default=12.5, gt=0, description="Adiabatic coupling strength Omega/gamma.")
    gamma_dt: float = Field(default=8.0, gt=0, description="Delay gamma*Delta_t between the two non-adiabatic pulses.")
    gamma: float = Field(
        default=1.0, ge=0,
        description="Decay rate from |e> to |g>; beta, Delta t and Omega are scaled by it. 0 disables decay."
    )
    pulse_shape: Literal["sech", "square"] = Field(
        default="sech", description="Non-adiabatic pulse shape; square is the exact-pi surrogate."
    )
    sech_half_width: float = Field(default=10.0, gt=0, description="Half-width of a sech window in units of 1/beta.")
    steps_per_window: int = Field(default=20000, ge=10, description="RK4 steps per pulse window.")
    max_phase_step: float = Field(default=0.05, gt=0, description="Upper bound on Omega*dt for adiabatic runs.")
    overlap_threshold: float = Field(default=1e-6, gt=0, description="Pulse-overlap mass that triggers a warning.")

    @model_validator(mode="before")
    @classmethod
    def _default_grid(cls, data):
        if isinstance(data, dict) and not data.get("grid"):
            kind = data.get("kind")
            grid = NONADIABATIC_GRID if kind == "nonadiabatic-decay" else ADIABATIC_GRID
            data = {**data, "grid": grid}
        return data

    @field_validator("grid")
    @classmethod
    def _check_grid(cls, grid):
        if not grid:
            raise ValueError("grid must not be empty")
        if any(x <= 0 for x in grid):
            raise ValueError("grid values must be positive")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("grid must be strictly increasing")
        return grid

    @property
    def rate_unit(self) -> float:
        """gamma, or 1 when decay is switched off."""
        return self.gamma if self.gamma > 0 else 1.0

    @property
    def decay_on(self) -> bool:
        return self.kind != "adiabatic-nodecay" and self.gamma > 0


class LoopRequest(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    theta: float = Field(description="Polar angle of the loop axis, radians.")
    phi: float = Field(default=0.0, description="Azimuthal angle of the loop axis, radians.")


class HolonomyRequest(BaseModel):
    """Holonomy computation for one loop or a composition of loops."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["holonomy"] = Field(description="Request kind.")
    loops: tuple[LoopRequest, ...] = Field(
        default=(LoopRequest(theta=0.0),),
        min_length=1,
        description="Loops in the order they are traversed."
    )
    pulse: Literal["square", "sech", "sech-truncated"] = Field(
        default="square", description="Pulse shape; sech is renormalized to area pi, sech-truncated is not."
    )
    subspace: Literal["one-qubit", "two-qubit"] = Field(default="one-qubit", description="Transported subspace.")
    grid: int = Field(default=DEFAULT_LOOP_STEPS, ge=2, description="Time steps per loop.")
    method: Literal["overlap", "magnus"] = Field(default="overlap", description="Path-ordered product scheme.")


class ExperimentConfig(BaseModel):
    """
    Top-level configuration file.

    Attributes:
        schema_version (int): Must equal 1.
        experiment: A sweep or a holonomy request, selected by ``kind``.
        output (str | None): Output file; defaults to stdout for holonomy requests.
        format (str): "csv" or "json".
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    schema_version: int = Field(description="Configuration schema version; only 1 is supported.")
    experiment: Annotated[SweepConfig | HolonomyRequest, Field(discriminator="kind")] = Field(
        description="Experiment description, selected by its 'kind' field."
    )
    output: str | None = Field(default=None, description="Output path for sweep results.")
    format: Literal["csv", "json"] = Field(default="csv", description="Output format.")

    @field_validator("schema_version")
    @classmethod
    def _check_version(cls, version):
        if version != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {version}; expected {SCHEMA_VERSION}")
        return version


def _describe(err: ValidationError) -> str:
    parts = []
    for item in err.errors():
        field = ".".join(str(loc) for loc in item["loc"]) or "config"
        parts.append(f"{field}: {item['msg']}")
    return "; ".join(parts)


def load_config(path: str | pathlib.Path) -> ExperimentConfig:
    """
    Reads and validates an experiment configuration file.

    Raises:
        ConfigError: If the file is unreadable, not JSON, or fails validation.
            The message names the offending field.
    """
    path = pathlib.Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except OSError as err:
        raise ConfigError(f"cannot read config {path}: {err}") from err
    except json.JSONDecodeError as err:
        raise ConfigError(f"config {path} is not valid JSON: {err}") from err

    try:
        return ExperimentConfig.model_validate(payload)
    except ValidationError as err:
        raise ConfigError(f"invalid config {path}: {_describe(err)}") from err
