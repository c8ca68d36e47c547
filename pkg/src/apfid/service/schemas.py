"""Request and response bodies for the HTTP service."""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, ConfigDict, Field


class ChannelPair(BaseModel):
    model_config = ConfigDict(extra="forbid")

    input: str
    output: str


class PeakPolicyBody(BaseModel):
    model_config = ConfigDict(extra="forbid")

    rel_threshold: float = 0.02
    refine: bool = True


class RunConfigBody(BaseModel):
    """Mirrors the config JSON accepted by the CLI."""

    model_config = ConfigDict(extra="forbid")

    channels: list[ChannelPair]
    delta: float | None = None
    fit_tolerance: float = 1e-3
    max_order: int = 8
    peak: PeakPolicyBody = Field(default_factory=PeakPolicyBody)
    omega_max: float | None = None
    grid_step: float | None = None
    sign_regime: str = "negative"


class IdentifyRequest(BaseModel):
    csv: str = Field(description="telemetry CSV text, header t,<col>,...")
    config: RunConfigBody
    jobs: int = 1


class SpectrumRequest(BaseModel):
    csv: str
    column: str
    omega_max: float | None = None
    grid_step: float | None = None


class SpectrumResponse(BaseModel):
    omegas: list[float]
    amplitudes: list[float]
    dc: float


class SimulateRequest(BaseModel):
    spec: dict[str, Any] = Field(description="simulation spec, see README")


class HealthResponse(BaseModel):
    status: str
    version: str
