"""Channel identification: frequency matching, astatism, coefficient fits.

The chain for one channel of a multi-input record:

  1. amplitude spectra and peak sets for every input and the output;
  2. tones shared between inputs are pruned (they cannot be attributed);
  3. the channel's tone set is the pruned input set matched against the
     output set;
  4. both records are projected onto the matched tones;
  5. the ratio of the two projections at the lowest matched tone fixes the
     astatism order from its quadrant;
  6. denominator coefficients are fitted by least squares over all matched
     tones, at increasing candidate orders, and the largest order that
     still fits with a significant leading coefficient wins.

Everything below the spectra works on complex tone coefficients, so the
same entry points serve both measured records and exact synthetic data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    ApfidError,
    DegenerateFitError,
    InvalidArgumentError,
    NoCommonFrequenciesError,
    NoConsistentModelError,
    UnclassifiableAstatismError,
    UnderdeterminedError,
)
from .freqset import FrequencySet, FrequencySystem, intersect, prune_shared
from .projection import project_onto
from .signals import Signal
from .spectral import PeakPolicy, amplitude_spectrum, detect_peaks

__all__ = [
    "IdentifyConfig",
    "ChannelIdentification",
    "match_channel_frequencies",
    "detect_astatism",
    "fit_coefficients",
    "select_order",
    "identify_from_projections",
    "identify_channel",
]

# Relative width of the dead zone around the axes in the quadrant test.
_AXIS_RTOL = 1e-6


@dataclass(frozen=True)
class IdentifyConfig:
    """Knobs for the identification pipeline.

    delta defaults to the record resolution 2*pi/T when left None.
    omega_max and grid_step default to 90% of Nyquist and delta/4.
    sign_regime names the sign convention of the denominator
    coefficients: "negative" (the aerodynamic convention this method was
    built around) probes the quadrant of -S_x/S_y, "positive" probes
    +S_x/S_y.
    """

    delta: float | None = None
    peak: PeakPolicy = field(default_factory=PeakPolicy)
    fit_tolerance: float = 1e-3
    max_order: int = 8
    omega_max: float | None = None
    grid_step: float | None = None
    sign_regime: str = "negative"

    def __post_init__(self) -> None:
        if self.delta is not None and (not np.isfinite(self.delta) or self.delta <= 0.0):
            raise InvalidArgumentError("delta must be positive when given")
        if not np.isfinite(self.fit_tolerance) or self.fit_tolerance <= 0.0:
            raise InvalidArgumentError("fit_tolerance must be positive")
        if self.max_order < 1:
            raise InvalidArgumentError("max_order must be at least 1")
        if self.sign_regime not in ("negative", "positive"):
            raise InvalidArgumentError("sign_regime must be 'negative' or 'positive'")


@dataclass(frozen=True)
class ChannelIdentification:
    """Result of one channel identification."""

    matched: FrequencySet
    p_a: int
    order: int
    coeffs: tuple[float, ...]
    residuals: dict[int, float]
    input_coeffs: tuple[complex, ...]
    output_coeffs: tuple[complex, ...]


def match_channel_frequencies(input_pruned: FrequencySet, output_peaks: FrequencySet) -> FrequencySet:
    """Tones the channel input shares with the output.

    Only these tones went through the channel and nothing else; they carry
    every bit of information the record holds about it. An empty result is
    a legitimate answer (the caller decides whether to treat it as fatal).
    """
    return intersect(input_pruned, output_peaks)


def detect_astatism(w: complex) -> int:
    """Astatism order from the quadrant of the low-frequency probe point.

    Quadrant one (Re > 0, Im > 0) means no integrator, quadrant two one,
    quadrant three two. Quadrant four has no reading under this rule, and
    a point within 1e-6 relative of an axis is refused rather than
    guessed.
    """
    w = complex(w)
    scale = abs(w)
    p, q = w.real, w.imag
    if scale == 0.0 or abs(p) < _AXIS_RTOL * scale or abs(q) < _AXIS_RTOL * scale:
        raise UnclassifiableAstatismError(
            f"probe point {w} lies on or too close to an axis", w
        )
    if p > 0.0 and q > 0.0:
        return 0
    if p < 0.0 and q > 0.0:
        return 1
    if p < 0.0 and q < 0.0:
        return 2
    raise UnclassifiableAstatismError(
        f"probe point {w} falls in quadrant four; no astatism order matches", w
    )


def _probe_point(in_c0: complex, out_c0: complex, sign_regime: str) -> complex:
    # Low-frequency quadrant probe. The input/output projection ratio
    # equals the denominator polynomial at j*w_lowest; with all-negative
    # coefficients its sign must be flipped to land the classical
    # quadrant-per-integrator pattern.
    if out_c0 == 0:
        raise UnclassifiableAstatismError("output projection vanishes at the lowest tone", 0j)
    w = in_c0 / out_c0
    return -w if sign_regime == "negative" else w


def fit_coefficients(
    input_coeffs: Sequence[complex],
    output_coeffs: Sequence[complex],
    omegas: Sequence[float],
    p_a: int,
    g: int,
) -> tuple[tuple[float, ...], float]:
    """Least-squares denominator coefficients T_{p_a} .. T_{p_a+g}.

    Each matched tone contributes the complex equation

        sum_k (j*w)^(k+p_a) * T_{k+p_a} * S_y(w) = S_x(w)

    split into real and imaginary rows, so q tones give 2q equations for
    g+1 unknowns, solved jointly rather than tone by tone. Columns are
    scaled by omega_max^-(k+p_a) and both sides are normalised by the
    median projection modulus before solving; both scalings are undone on
    the way out. Returns the coefficients and the relative residual
    |A t - b| / |b|.
    """
    s_x = np.asarray(input_coeffs, dtype=complex)
    s_y = np.asarray(output_coeffs, dtype=complex)
    w = np.asarray(omegas, dtype=float)
    q = w.size
    if q < 1 or s_x.size != q or s_y.size != q:
        raise InvalidArgumentError("need aligned input, output and frequency arrays")
    if np.any(w <= 0.0):
        raise InvalidArgumentError("frequencies must be positive")
    if g < 0:
        raise InvalidArgumentError("candidate order must be nonnegative")
    if 2 * q < g + 1:
        raise UnderdeterminedError(
            f"{2 * q} equations cannot determine {g + 1} coefficients"
        )

    med_in = float(np.median(np.abs(s_x)))
    med_out = float(np.median(np.abs(s_y)))
    if med_in == 0.0 or med_out == 0.0:
        raise DegenerateFitError("projections vanish at the matched tones")

    jw = 1j * w
    powers = np.arange(p_a, p_a + g + 1)
    m = (jw[:, None] ** powers[None, :]) * (s_y / med_out)[:, None]
    rhs = s_x / med_in
    a = np.vstack([m.real, m.imag])
    b = np.concatenate([rhs.real, rhs.imag])

    w_max = float(np.max(w))
    col_scale = w_max ** (-powers.astype(float))
    solution, _, rank, _ = np.linalg.lstsq(a * col_scale[None, :], b, rcond=None)
    if rank < g + 1:
        raise DegenerateFitError(
            f"fit matrix rank {rank} below the {g + 1} unknowns"
        )
    t_norm = solution * col_scale
    residual = float(np.linalg.norm(a @ t_norm - b) / np.linalg.norm(b))
    coeffs = tuple(float(c) for c in t_norm * (med_in / med_out))
    return coeffs, residual


def select_order(
    input_coeffs: Sequence[complex],
    output_coeffs: Sequence[complex],
    matched: FrequencySet,
    p_a: int,
    config: IdentifyConfig,
) -> ChannelIdentification:
    """Try orders 1 .. min(max_order, 2q-1) and keep the first supported one.

    A candidate order g qualifies when its relative residual is within
    fit_tolerance and its leading coefficient still matters at the scale
    of the data: |T_{p_a+g}| * omega_max^(p_a+g) * median|S_y| must exceed
    fit_tolerance * median|S_x|. The smallest qualifying g wins. Residuals
    are non-increasing in g (the columns nest), so this is the threshold
    crossing: the largest order the data refuses to fit, plus one. Taking
    the largest passing g instead would be wrong on real records: near
    g = 2q-1 the system approaches square and interpolates leakage noise
    exactly, with coefficients inflated enough to pass any magnitude
    screen. Residuals for every attempted order are kept in the result.
    With no qualifying order the record supports no constant-coefficient
    model at this tolerance, which is reported with the full residual
    table.
    """
    omegas = matched.omegas
    q = omegas.size
    if q < 2:
        raise InvalidArgumentError("order selection needs at least two matched tones")
    s_x = np.asarray(input_coeffs, dtype=complex)
    s_y = np.asarray(output_coeffs, dtype=complex)
    med_in = float(np.median(np.abs(s_x)))
    med_out = float(np.median(np.abs(s_y)))
    w_max = float(np.max(omegas))

    g_top = min(config.max_order, 2 * q - 1)
    residuals: dict[int, float] = {}
    fits: dict[int, tuple[float, ...]] = {}
    selected: int | None = None
    for g in range(1, g_top + 1):
        coeffs, residual = fit_coefficients(s_x, s_y, omegas, p_a, g)
        residuals[g] = residual
        fits[g] = coeffs
        if selected is not None or residual > config.fit_tolerance:
            continue
        weight = abs(coeffs[-1]) * w_max ** (p_a + g) * med_out
        if weight > config.fit_tolerance * med_in:
            selected = g
    if selected is None:
        raise NoConsistentModelError(
            f"no order up to {g_top} fits within tolerance {config.fit_tolerance:g}",
            residuals,
        )
    return ChannelIdentification(
        matched=matched,
        p_a=p_a,
        order=selected,
        coeffs=fits[selected],
        residuals=residuals,
        input_coeffs=tuple(complex(c) for c in s_x),
        output_coeffs=tuple(complex(c) for c in s_y),
    )


def identify_from_projections(
    input_coeffs: Sequence[complex],
    output_coeffs: Sequence[complex],
    matched: FrequencySet,
    config: IdentifyConfig,
) -> ChannelIdentification:
    """Astatism plus order selection on already-projected tone data."""
    s_x = [complex(c) for c in input_coeffs]
    s_y = [complex(c) for c in output_coeffs]
    if len(s_x) != len(matched) or len(s_y) != len(matched):
        raise InvalidArgumentError("projections must align with the matched set")
    probe = _probe_point(s_x[0], s_y[0], config.sign_regime)
    p_a = detect_astatism(probe)
    return select_order(s_x, s_y, matched, p_a, config)


def _tagged(stage: str, err: ApfidError) -> ApfidError:
    if err.stage is None:
        err.stage = stage
    return err


def identify_channel(
    inputs: Sequence[Signal],
    output: Signal,
    channel: int,
    config: IdentifyConfig | None = None,
) -> ChannelIdentification:
    """Full pipeline for the channel driven by ``inputs[channel]``.

    All records must come from the same run (same dt and length). Errors
    raised along the way carry the pipeline stage that rejected the data.
    """
    config = config or IdentifyConfig()
    if not inputs:
        raise InvalidArgumentError("need at least one input record")
    if not 0 <= channel < len(inputs):
        raise InvalidArgumentError(f"channel index {channel} out of range")
    for s in inputs:
        if s.dt != output.dt or s.count != output.count:
            raise InvalidArgumentError("all records must share dt and length")

    duration = output.duration
    delta = config.delta if config.delta is not None else 2.0 * np.pi / duration
    omega_max = config.omega_max if config.omega_max is not None else 0.9 * np.pi / output.dt
    grid_step = config.grid_step if config.grid_step is not None else delta / 4.0

    try:
        input_peaks = [
            detect_peaks(amplitude_spectrum(s, omega_max, grid_step), config.peak, delta)
            for s in inputs
        ]
        output_peaks = detect_peaks(
            amplitude_spectrum(output, omega_max, grid_step), config.peak, delta
        )
    except ApfidError as e:
        raise _tagged("spectrum", e)

    try:
        if len(inputs) > 1:
            system = FrequencySystem({f"in{i}": p for i, p in enumerate(input_peaks)})
            pruned = prune_shared(system)
            channel_set = pruned[f"in{channel}"]
        else:
            channel_set = input_peaks[0]
    except ApfidError as e:
        raise _tagged("prune", e)

    try:
        matched = match_channel_frequencies(channel_set, output_peaks)
        if len(matched) == 0:
            raise NoCommonFrequenciesError(
                "input and output records share no tones"
            )
    except ApfidError as e:
        raise _tagged("match", e)

    try:
        in_model = project_onto(inputs[channel], matched.omegas)
        out_model = project_onto(output, matched.omegas)
    except ApfidError as e:
        raise _tagged("project", e)

    try:
        return identify_from_projections(
            in_model.coeffs, out_model.coeffs, matched, config
        )
    except ApfidError as e:
        raise _tagged("identify", e)
