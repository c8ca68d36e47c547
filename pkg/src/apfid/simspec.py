"""Simulation specs: JSON description of a rig rendered to telemetry.

A spec names input columns with their tone content, channels (input
column, output column, plant), optional couplings shared between input
pairs, and optional per-column measurement noise. Tones are given as
cos/sin amplitudes; internally a tone is the complex coefficient
cos_amp - j*sin_amp (see signals module).

Several channels may feed one output column; their responses add.
"""

from __future__ import annotations

from .errors import ConfigError
from .io_csv import TelemetryRecord
from .signals import (
    ChannelModel,
    HarmonicModel,
    NoiseSpec,
    Signal,
    apply_noise,
    simulate_channel,
    synth_coupled_inputs,
    synth_harmonic,
)

__all__ = ["build_simulation"]


def _tone(raw: dict) -> tuple[float, complex]:
    try:
        omega = float(raw["omega"])
    except (TypeError, KeyError, ValueError):
        raise ConfigError(f"tone needs a numeric 'omega': {raw!r}") from None
    cos_amp = float(raw.get("cos", 0.0))
    sin_amp = float(raw.get("sin", 0.0))
    return omega, complex(cos_amp, -sin_amp)


def _model(raw: dict | None) -> HarmonicModel:
    raw = raw or {}
    return HarmonicModel(
        dc=float(raw.get("dc", 0.0)),
        terms=tuple(_tone(t) for t in raw.get("tones", [])),
    )


def _merge(models: list[HarmonicModel]) -> HarmonicModel:
    # Superposition onto one output: coefficients at exactly equal
    # frequencies add.
    dc = 0.0
    acc: dict[float, complex] = {}
    for m in models:
        dc += m.dc
        for w, c in m.terms:
            acc[w] = acc.get(w, 0j) + c
    return HarmonicModel(dc=dc, terms=tuple(sorted(acc.items())))


def build_simulation(spec: dict) -> TelemetryRecord:
    """Render a simulation spec to a multi-column telemetry record."""
    if not isinstance(spec, dict):
        raise ConfigError("simulation spec root must be a JSON object")
    try:
        count = int(spec["count"])
        dt = float(spec["dt"])
    except (KeyError, TypeError, ValueError):
        raise ConfigError("spec needs integer 'count' and numeric 'dt'") from None
    t0 = float(spec.get("t0", 0.0))
    delta = spec.get("delta")
    delta = float(delta) if delta is not None else None

    inputs_raw = spec.get("inputs", [])
    if not inputs_raw:
        raise ConfigError("spec lists no inputs")
    input_names = [str(i.get("name", "")) for i in inputs_raw]
    if any(not n for n in input_names) or len(set(input_names)) != len(input_names):
        raise ConfigError("input names must be nonempty and unique")
    input_models = [_model(i) for i in inputs_raw]

    couplings: dict[tuple[int, int], HarmonicModel] = {}
    for raw in spec.get("couplings", []):
        pair = raw.get("inputs")
        if not isinstance(pair, list) or len(pair) != 2:
            raise ConfigError("coupling needs 'inputs': [nameA, nameB]")
        try:
            idx = (input_names.index(str(pair[0])), input_names.index(str(pair[1])))
        except ValueError:
            raise ConfigError(f"coupling references unknown input in {pair}") from None
        couplings[idx] = _model(raw)
    if couplings:
        input_models = synth_coupled_inputs(input_models, couplings, delta=delta)

    channels_raw = spec.get("channels", [])
    if not channels_raw:
        raise ConfigError("spec lists no channels")
    responses: dict[str, list[HarmonicModel]] = {}
    output_order: list[str] = []
    for raw in channels_raw:
        try:
            in_name = str(raw["input"])
            out_name = str(raw["output"])
            plant = ChannelModel(p_a=int(raw["p_a"]), coeffs=tuple(raw["coeffs"]))
        except (KeyError, TypeError, ValueError):
            raise ConfigError(
                f"channel needs 'input', 'output', 'p_a' and 'coeffs': {raw!r}"
            ) from None
        if in_name not in input_names:
            raise ConfigError(f"channel references unknown input {in_name!r}")
        model = input_models[input_names.index(in_name)]
        responses.setdefault(out_name, []).append(simulate_channel(plant, model))
        if out_name not in output_order:
            output_order.append(out_name)
    if set(output_order) & set(input_names):
        raise ConfigError("output columns must not reuse input names")

    names = tuple(input_names + output_order)
    signals: dict[str, Signal] = {}
    for name, model in zip(input_names, input_models):
        signals[name] = synth_harmonic(model, count, dt, t0)
    for name in output_order:
        signals[name] = synth_harmonic(_merge(responses[name]), count, dt, t0)

    noise_raw = spec.get("noise", {})
    if not isinstance(noise_raw, dict):
        raise ConfigError("noise must map column names to noise specs")
    for name, raw in noise_raw.items():
        if name not in signals:
            raise ConfigError(f"noise references unknown column {name!r}")
        noise = NoiseSpec(
            mult_mean=float(raw.get("mult_mean", 1.0)),
            mult_fluct=_model(raw.get("mult_fluct")),
            additive=_model(raw.get("additive")),
            delta=delta,
        )
        signals[name] = apply_noise(signals[name], noise)

    return TelemetryRecord(names=names, signals=signals, dt=dt, t0=t0)
