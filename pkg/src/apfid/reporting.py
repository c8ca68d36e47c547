"""Run configuration and deterministic JSON report emission.

The report echoes the effective configuration so a result can be
reproduced from the report alone, and is rendered with a fixed key order
and shortest round-trip floats: identical inputs and config produce
byte-identical report text.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ApfidError, ConfigError
from .identify import ChannelIdentification, IdentifyConfig, identify_channel
from .io_csv import TelemetryRecord
from .spectral import PeakPolicy

__all__ = ["RunConfig", "emit_report", "run_identification"]


@dataclass(frozen=True)
class RunConfig:
    """Channel list plus identification knobs, as read from config JSON."""

    channels: tuple[tuple[str, str], ...]
    delta: float | None = None
    fit_tolerance: float = 1e-3
    max_order: int = 8
    peak: PeakPolicy = field(default_factory=PeakPolicy)
    omega_max: float | None = None
    grid_step: float | None = None
    sign_regime: str = "negative"
    data: str | None = None
    out: str | None = None

    def __post_init__(self) -> None:
        if not self.channels:
            raise ConfigError("config lists no channels")
        for pair in self.channels:
            if len(pair) != 2 or not all(isinstance(c, str) and c for c in pair):
                raise ConfigError(f"bad channel entry {pair!r}")

    @classmethod
    def from_dict(cls, raw: dict) -> "RunConfig":
        if not isinstance(raw, dict):
            raise ConfigError("config root must be a JSON object")
        known = {
            "channels",
            "delta",
            "fit_tolerance",
            "max_order",
            "peak",
            "omega_max",
            "grid_step",
            "sign_regime",
            "data",
            "out",
        }
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        try:
            channels = tuple(
                (str(ch["input"]), str(ch["output"])) for ch in raw.get("channels", [])
            )
        except (TypeError, KeyError):
            raise ConfigError("channels must be objects with 'input' and 'output'") from None
        peak_raw = raw.get("peak", {})
        if not isinstance(peak_raw, dict):
            raise ConfigError("peak must be an object")
        try:
            peak = PeakPolicy(
                rel_threshold=float(peak_raw.get("rel_threshold", 0.02)),
                refine=bool(peak_raw.get("refine", True)),
            )
            return cls(
                channels=channels,
                delta=_opt_float(raw.get("delta"), "delta"),
                fit_tolerance=float(raw.get("fit_tolerance", 1e-3)),
                max_order=int(raw.get("max_order", 8)),
                peak=peak,
                omega_max=_opt_float(raw.get("omega_max"), "omega_max"),
                grid_step=_opt_float(raw.get("grid_step"), "grid_step"),
                sign_regime=str(raw.get("sign_regime", "negative")),
                data=raw.get("data"),
                out=raw.get("out"),
            )
        except ApfidError:
            raise
        except (TypeError, ValueError) as e:
            raise ConfigError(f"bad config value: {e}") from None

    def identify_config(self) -> IdentifyConfig:
        return IdentifyConfig(
            delta=self.delta,
            peak=self.peak,
            fit_tolerance=self.fit_tolerance,
            max_order=self.max_order,
            omega_max=self.omega_max,
            grid_step=self.grid_step,
            sign_regime=self.sign_regime,
        )

    def echo(self) -> dict:
        """Effective configuration, with defaults made explicit."""
        return {
            "channels": [{"input": i, "output": o} for i, o in self.channels],
            "delta": self.delta,
            "fit_tolerance": self.fit_tolerance,
            "max_order": self.max_order,
            "peak": {"rel_threshold": self.peak.rel_threshold, "refine": self.peak.refine},
            "omega_max": self.omega_max,
            "grid_step": self.grid_step,
            "sign_regime": self.sign_regime,
        }


def _opt_float(value, name: str) -> float | None:
    if value is None:
        return None
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be a number or null") from None


def emit_report(
    results,
    config: RunConfig,
) -> str:
    """Render identification results as canonical JSON text.

    ``results`` holds (input name, output name, delta, ChannelIdentification)
    tuples in config order. Key order is fixed; floats use shortest
    round-trip form, so equal runs yield equal bytes.
    """
    channels = []
    for input_name, output_name, delta, ident in results:
        channels.append(
            {
                "input": input_name,
                "output": output_name,
                "delta": delta,
                "matched_frequencies": [float(w) for w in ident.matched.omegas],
                "astatism": ident.p_a,
                "order": ident.order,
                "coefficients": [float(c) for c in ident.coeffs],
                "residuals": {str(g): ident.residuals[g] for g in sorted(ident.residuals)},
            }
        )
    report = {"config": config.echo(), "channels": channels}
    return json.dumps(report, indent=2) + "\n"


def _one_channel(
    record: TelemetryRecord, config: RunConfig, pair: tuple[str, str]
) -> tuple[str, str, float, ChannelIdentification]:
    input_name, output_name = pair
    input_names = sorted({i for i, _ in config.channels})
    inputs = [record.signals[n] for n in input_names]
    output = record.signals[output_name]
    ident = identify_channel(
        inputs, output, input_names.index(input_name), config.identify_config()
    )
    delta = config.delta if config.delta is not None else 2.0 * np.pi / record.duration
    return input_name, output_name, delta, ident


def run_identification(record: TelemetryRecord, config: RunConfig, jobs: int = 1) -> str:
    """Identify every configured channel and render the report.

    Channels run concurrently up to ``jobs`` workers; the report always
    lists them in config order. The first failing channel (in config
    order) aborts the run.
    """
    if jobs < 1:
        raise ConfigError("jobs must be at least 1")
    missing = [
        name
        for pair in config.channels
        for name in pair
        if name not in record.signals
    ]
    if missing:
        raise ConfigError(f"config references missing columns: {sorted(set(missing))}")

    if jobs == 1 or len(config.channels) == 1:
        results = [_one_channel(record, config, pair) for pair in config.channels]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_one_channel, record, config, pair)
                for pair in config.channels
            ]
            results = []
            for fut in futures:  # config order, not completion order
                results.append(fut.result())
    return emit_report(results, config)
