"""Pulse envelopes Omega(t) with declared support windows and closed-form areas."""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from errors import UnsupportedEnvelopeError


ENVELOPE_KINDS = ("square", "sech", "piecewise-constant")

# Half-width of a truncated sech window in units of 1/beta.
DEFAULT_SECH_HALF_WIDTH = 10.0


def gudermannian(x):
    """gd(x) = 2 arctan(tanh(x / 2)), the antiderivative of sech."""
    return 2.0 * np.arctan(np.tanh(np.asarray(x, dtype=float) / 2.0))


class PulseEnvelope(BaseModel):
    """
    Real, non-negative pulse envelope that vanishes outside its window.

    Attributes:
        kind (str): "square", "sech" or "piecewise-constant".
        amplitude (float): Omega_0 of a square pulse or beta of a sech pulse.
        center (float): Center t_0 of a sech pulse.
        t_start (float): Start of the support window.
        t_end (float): End of the support window.
        scale (float): Factor applied to the whole envelope.
        levels (tuple[float, ...]): Segment values of a piecewise-constant envelope.
    """
    model_config = ConfigDict(frozen=True)

    kind: str = Field(description="Envelope shape: 'square', 'sech' or 'piecewise-constant'.")
    amplitude: float = Field(
        default=1.0, gt=0,
        description="Omega_0 for square pulses, beta for sech pulses (inverse time)."
    )
    center: float = Field(default=0.0, description="Center t_0 of a sech pulse.")
    t_start: float = Field(description="Start of the support window.")
    t_end: float = Field(description="End of the support window.")
    scale: float = Field(
        default=1.0, gt=0,
        description="Overall factor; renormalized sech pulses use it to restore area pi."
    )
    levels: tuple[float, ...] = Field(
        default=(),
        description="Values of equally long segments of a piecewise-constant envelope."
    )

    @model_validator(mode="after")
    def _check_window(self):
        if not self.t_end > self.t_start:
            raise ValueError("t_end must be greater than t_start")
        if any(level < 0 for level in self.levels):
            raise ValueError("piecewise-constant levels must be non-negative")
        if self.kind == "piecewise-constant" and not self.levels:
            raise ValueError("piecewise-constant envelopes need at least one level")
        return self

    @property
    def duration(self) -> float:
        return self.t_end - self.t_start

    @property
    def area(self) -> float:
        return pulse_area(self)

    def _require_kind(self) -> None:
        if self.kind not in ENVELOPE_KINDS:
            raise UnsupportedEnvelopeError(f"unsupported envelope kind: {self.kind!r}")

    def value(self, t):
        """Envelope value at time(s) ``t``; exactly 0 outside the window."""
        self._require_kind()
        t = np.asarray(t, dtype=float)
        inside = (t >= self.t_start) & (t <= self.t_end)

        if self.kind == "square":
            raw = np.full_like(t, self.amplitude)
        elif self.kind == "sech":
            raw = self.amplitude / np.cosh(self.amplitude * (t - self.center))
        else:
            width = self.duration / len(self.levels)
            idx = np.clip(np.floor((t - self.t_start) / width).astype(int), 0, len(self.levels) - 1)
            raw = np.asarray(self.levels, dtype=float)[idx]

        out = np.where(inside, self.scale * raw, 0.0)
        return float(out) if out.ndim == 0 else out

    def cumulative_area(self, t):
        """Closed-form integral of the envelope from ``t_start`` to ``t``."""
        self._require_kind()
        t = np.clip(np.asarray(t, dtype=float), self.t_start, self.t_end)

        if self.kind == "square":
            out = self.amplitude * (t - self.t_start)
        elif self.kind == "sech":
            beta = self.amplitude
            out = gudermannian(beta * (t - self.center)) - gudermannian(beta * (self.t_start - self.center))
        else:
            levels = np.asarray(self.levels, dtype=float)
            width = self.duration / len(levels)
            edges = np.concatenate(([0.0], np.cumsum(levels * width)))
            pos = (t - self.t_start) / width
            idx = np.clip(np.floor(pos).astype(int), 0, len(levels) - 1)
            out = edges[idx] + levels[idx] * (pos - idx) * width

        out = self.scale * out
        return float(out) if np.ndim(out) == 0 else out

    def ideal_area_between(self, a: float, b: float) -> float:
        """
        Area between ``a`` and ``b`` of the untruncated pulse shape.

        For sech pulses this includes the tails cut off by the window and is
        the quantity used to measure overlap between neighbouring pulses.
        """
        self._require_kind()
        if self.kind == "sech":
            beta = self.amplitude
            return float(self.scale * (gudermannian(beta * (b - self.center))
                                       - gudermannian(beta * (a - self.center))))
        return float(self.cumulative_area(b) - self.cumulative_area(a))


def pulse_area(e: PulseEnvelope) -> float:
    """
    Closed-form area of the envelope over its declared window.

    Raises:
        UnsupportedEnvelopeError: If the envelope kind has no closed form.
    """
    return e.cumulative_area(e.t_end)


def square_pulse(area: float = np.pi, amplitude: float = 1.0, t_start: float = 0.0) -> PulseEnvelope:
    """Square pulse of the given amplitude whose width yields ``area``."""
    return PulseEnvelope(kind="square", amplitude=amplitude,
                         t_start=t_start, t_end=t_start + area / amplitude)


def sech_pulse(beta: float,
               center: float = 0.0,
               half_width: float = DEFAULT_SECH_HALF_WIDTH,
               renormalize: bool = False) -> PulseEnvelope:
    """
    Hyperbolic secant pulse beta * sech(beta (t - center)) truncated to
    center +- half_width / beta.

    The truncated area is 2 gd(half_width), short of pi by about 4 e^{-half_width}.
    With ``renormalize`` the envelope is scaled so the window area is exactly pi.
    """
    scale = np.pi / (2.0 * float(gudermannian(half_width))) if renormalize else 1.0
    return PulseEnvelope(kind="sech", amplitude=beta, center=center,
                         t_start=center - half_width / beta,
                         t_end=center + half_width / beta,
                         scale=scale)


def piecewise_pulse(levels, t_start: float, t_end: float) -> PulseEnvelope:
    return PulseEnvelope(kind="piecewise-constant", levels=tuple(float(x) for x in levels),
                         t_start=t_start, t_end=t_end)
