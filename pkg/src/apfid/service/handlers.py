"""Service handlers; the CLI calls these in-process as a thin client."""

from __future__ import annotations

import numpy as np

from ..errors import ConfigError
from ..io_csv import format_csv, parse_csv
from ..reporting import RunConfig, run_identification
from ..simspec import build_simulation
from ..spectral import Spectrum, amplitude_spectrum
from .schemas import IdentifyRequest, SimulateRequest, SpectrumRequest


def handle_identify(req: IdentifyRequest) -> str:
    """Telemetry CSV text plus config to canonical report JSON text."""
    record = parse_csv(req.csv)
    config = RunConfig.from_dict(req.config.model_dump())
    return run_identification(record, config, jobs=req.jobs)


def handle_spectrum(req: SpectrumRequest) -> Spectrum:
    """Amplitude spectrum of one telemetry column."""
    record = parse_csv(req.csv)
    if req.column not in record.signals:
        raise ConfigError(f"column {req.column!r} not in record")
    signal = record.signals[req.column]
    resolution = 2.0 * np.pi / signal.duration
    omega_max = req.omega_max if req.omega_max is not None else 0.9 * np.pi / signal.dt
    grid_step = req.grid_step if req.grid_step is not None else resolution / 4.0
    return amplitude_spectrum(signal, omega_max, grid_step)


def handle_simulate(req: SimulateRequest) -> str:
    """Simulation spec to telemetry CSV text."""
    return format_csv(build_simulation(req.spec))
