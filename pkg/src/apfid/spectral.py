"""Dense amplitude spectra and tone peak extraction.

The spectrum is the modulus of the same projection used everywhere else,
|(2/N) sum_n x_n exp(-j*w*t_n)|, evaluated on a uniform frequency grid.
No window function is applied: the plain projection is the estimator the
coefficient fit assumes, and windows would bias the recovered values. The
grid must
oversample the record resolution 2*pi/T by at least 4x so that quadratic
peak refinement has curvature to work with.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AliasingError, InvalidArgumentError
from .freqset import FrequencySet
from .signals import Signal

__all__ = ["Spectrum", "PeakPolicy", "amplitude_spectrum", "detect_peaks"]

# dft chunk: bounds the (frequencies x samples) kernel to ~32 MB at n = 4096
_CHUNK = 512


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Amplitudes on a strictly increasing positive frequency grid."""

    omegas: np.ndarray
    amplitudes: np.ndarray
    dc: float

    def __post_init__(self) -> None:
        w = np.asarray(self.omegas, dtype=float).reshape(-1).copy()
        a = np.asarray(self.amplitudes, dtype=float).reshape(-1).copy()
        if w.size != a.size:
            raise InvalidArgumentError("omegas and amplitudes must align")
        if w.size and (w[0] <= 0.0 or np.any(np.diff(w) <= 0.0)):
            raise InvalidArgumentError("frequency grid must be positive and increasing")
        if np.any(a < 0.0):
            raise InvalidArgumentError("amplitudes are moduli and cannot be negative")
        w.setflags(write=False)
        a.setflags(write=False)
        object.__setattr__(self, "omegas", w)
        object.__setattr__(self, "amplitudes", a)


@dataclass(frozen=True)
class PeakPolicy:
    """Peak acceptance rules: relative floor and quadratic refinement."""

    rel_threshold: float = 0.02
    refine: bool = True

    def __post_init__(self) -> None:
        if not 0.0 < self.rel_threshold <= 1.0:
            raise InvalidArgumentError("rel_threshold must be in (0, 1]")


def amplitude_spectrum(x: Signal, omega_max: float, grid_step: float) -> Spectrum:
    """Projection amplitudes on the grid grid_step, 2*grid_step, ... <= omega_max."""
    nyquist = np.pi / x.dt
    if not np.isfinite(omega_max) or omega_max <= 0.0:
        raise InvalidArgumentError("omega_max must be positive and finite")
    if omega_max >= nyquist:
        raise AliasingError(
            f"omega_max {omega_max:g} reaches the Nyquist rate {nyquist:g}"
        )
    resolution = 2.0 * np.pi / x.duration
    if not np.isfinite(grid_step) or grid_step <= 0.0:
        raise InvalidArgumentError("grid_step must be positive and finite")
    if grid_step > resolution / 4.0 * (1.0 + 1e-12):
        raise InvalidArgumentError(
            f"grid_step {grid_step:g} undersamples the record resolution; "
            f"need at most {resolution / 4.0:g}"
        )
    m = int(np.floor(omega_max / grid_step + 1e-9))
    if m < 3:
        raise InvalidArgumentError("omega_max spans fewer than three grid points")
    omegas = grid_step * np.arange(1, m + 1)
    t = x.times()
    scale = 2.0 / x.count
    mean = float(np.mean(x.samples))
    # the mean is reported separately as dc; leaving it in the samples
    # would smear an O(1) skirt over the lowest grid points
    centered = x.samples - mean
    amps = np.empty(m)
    for start in range(0, m, _CHUNK):
        ws = omegas[start : start + _CHUNK]
        kernel = np.exp(-1j * ws[:, None] * t[None, :])
        amps[start : start + _CHUNK] = scale * np.abs(kernel @ centered)
    return Spectrum(omegas=omegas, amplitudes=amps, dc=mean)


def _refine(w: np.ndarray, a: np.ndarray, i: int) -> float:
    # Vertex of the parabola through the three grid points around a local
    # maximum. The denominator is nonpositive at a strict maximum; a flat
    # triple would divide by zero, so fall back to the grid point.
    left, mid, right = a[i - 1], a[i], a[i + 1]
    denom = left - 2.0 * mid + right
    if denom == 0.0:
        return float(w[i])
    shift = 0.5 * (left - right) / denom
    shift = float(np.clip(shift, -0.5, 0.5))
    step = 0.5 * (w[i + 1] - w[i - 1])
    return float(w[i] + shift * step)


def detect_peaks(spectrum: Spectrum, policy: PeakPolicy, delta: float) -> FrequencySet:
    """Strict local maxima above the relative floor, one survivor per tone.

    A candidate survives only when no taller candidate sits within 2
    delta of it. The comparison runs against every candidate, suppressed
    or not, so a run of rectangular-window sidelobes (spaced just over
    delta, first one at about 1.43 delta and 22% of the lobe, shifted
    further when tones interfere) collapses onto its tone instead of
    leaking through one by one. True tones 3 delta apart or more are
    never merged. Grid endpoints are never peaks: a tone needs both
    neighbours to show curvature.
    """
    if not np.isfinite(delta) or delta <= 0.0:
        raise InvalidArgumentError("delta must be positive and finite")
    w, a = spectrum.omegas, spectrum.amplitudes
    if w.size < 3 or float(np.max(a, initial=0.0)) == 0.0:
        return FrequencySet(np.array([]), delta)
    floor = policy.rel_threshold * float(np.max(a))
    inner = np.arange(1, w.size - 1)
    is_peak = (a[inner] > a[inner - 1]) & (a[inner] > a[inner + 1]) & (a[inner] >= floor)
    idx = inner[is_peak]
    if idx.size == 0:
        return FrequencySet(np.array([]), delta)

    if policy.refine:
        locations = np.array([_refine(w, a, i) for i in idx])
    else:
        locations = w[idx].astype(float)
    heights = a[idx]

    # a bump closer to dc than the record resolution is not a resolvable
    # tone, only fold-over of the leakage skirt
    resolvable = locations >= delta
    locations, heights = locations[resolvable], heights[resolvable]

    radius = 2.0 * delta
    kept: list[float] = []
    for j in range(locations.size):
        near = np.abs(locations - locations[j]) <= radius
        if np.any(heights[near] > heights[j]):
            continue
        kept.append(float(locations[j]))
    return FrequencySet.from_values(kept, delta)
