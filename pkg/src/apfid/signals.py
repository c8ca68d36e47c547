"""Signal synthesis: harmonic models, noise application, channel simulation.

A harmonic model is a dc level plus a finite sum of tones at arbitrary
positive frequencies. Each tone is stored as one complex coefficient c with

    contribution(t) = Re{c * exp(j*w*t)}

so Re(c) multiplies cos(w*t) and -Im(c) multiplies sin(w*t), and taking a
time derivative multiplies c by j*w. Frequencies never need to be
commensurable; none of the code below assumes a common period.

A channel is the constant-coefficient operator

    sum_k T_k * y^(k)(t) = x(t),   k = p_a .. p_a + n,

i.e. a unit-numerator plant whose denominator polynomial has a zero of
order p_a at s = 0 (p_a integrators, "astatism order" p_a). Driving it
with a tone at w scales the tone's coefficient by 1/D(jw).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    AmbiguousCouplingError,
    InvalidArgumentError,
    SingularPlantError,
)

__all__ = [
    "Signal",
    "HarmonicModel",
    "NoiseSpec",
    "ChannelModel",
    "synth_harmonic",
    "apply_noise",
    "simulate_channel",
    "synth_coupled_inputs",
]


@dataclass(frozen=True, eq=False)
class Signal:
    """Uniformly sampled real record. Record length is (count - 1) * dt."""

    samples: np.ndarray
    dt: float
    t0: float = 0.0

    def __post_init__(self) -> None:
        arr = np.asarray(self.samples, dtype=float).reshape(-1).copy()
        if arr.size < 2:
            raise InvalidArgumentError("a signal needs at least two samples")
        if not np.all(np.isfinite(arr)):
            raise InvalidArgumentError("samples must be finite")
        if not np.isfinite(self.dt) or self.dt <= 0.0:
            raise InvalidArgumentError("dt must be positive and finite")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    @property
    def count(self) -> int:
        return int(self.samples.size)

    @property
    def duration(self) -> float:
        return (self.count - 1) * self.dt

    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.count)


@dataclass(frozen=True)
class HarmonicModel:
    """dc level plus tones at distinct positive frequencies."""

    dc: float = 0.0
    terms: tuple[tuple[float, complex], ...] = ()

    def __post_init__(self) -> None:
        norm = tuple(sorted(((float(w), complex(c)) for w, c in self.terms), key=lambda wc: wc[0]))
        omegas = [w for w, _ in norm]
        if any(not np.isfinite(w) or w <= 0.0 for w in omegas):
            raise InvalidArgumentError("tone frequencies must be positive and finite")
        if len(set(omegas)) != len(omegas):
            raise InvalidArgumentError("tone frequencies must be pairwise distinct")
        if not np.isfinite(self.dc):
            raise InvalidArgumentError("dc must be finite")
        object.__setattr__(self, "terms", norm)

    @property
    def omegas(self) -> np.ndarray:
        return np.array([w for w, _ in self.terms], dtype=float)

    @property
    def coeffs(self) -> np.ndarray:
        return np.array([c for _, c in self.terms], dtype=complex)

    def evaluate(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if not self.terms:
            return np.full(t.shape, self.dc)
        phases = np.exp(1j * np.outer(t, self.omegas))
        return self.dc + np.real(phases @ self.coeffs)

    def mean_square(self) -> float:
        """Exact infinite-record mean of the squared signal."""
        return float(self.dc**2 + 0.5 * np.sum(np.abs(self.coeffs) ** 2))


def _collides(omegas_a, omegas_b, delta: float | None) -> float | None:
    # Returns an offending frequency from omegas_a, or None.
    for wa in omegas_a:
        for wb in omegas_b:
            if (delta is None and wa == wb) or (delta is not None and abs(wa - wb) < delta):
                return float(wa)
    return None


@dataclass(frozen=True)
class NoiseSpec:
    """Measurement distortion: gain drift, additive tones, cross-channel bleed.

    The recorded signal is (mult_mean + mult_fluct(t)) * x(t) + additive(t)
    + coupling(t). mult_fluct must have zero dc (the mean gain lives in
    mult_mean). When ``delta`` is given, the three tone sets must be
    pairwise disjoint under it; otherwise only exact collisions are
    rejected.
    """

    mult_mean: float = 1.0
    mult_fluct: HarmonicModel = field(default_factory=HarmonicModel)
    additive: HarmonicModel = field(default_factory=HarmonicModel)
    coupling: HarmonicModel | None = None
    delta: float | None = None

    def __post_init__(self) -> None:
        if not np.isfinite(self.mult_mean):
            raise InvalidArgumentError("mult_mean must be finite")
        if self.mult_fluct.dc != 0.0:
            raise InvalidArgumentError("mult_fluct must have zero dc")
        groups = [self.mult_fluct.omegas, self.additive.omegas]
        if self.coupling is not None:
            groups.append(self.coupling.omegas)
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                bad = _collides(groups[i], groups[j], self.delta)
                if bad is not None:
                    raise InvalidArgumentError(
                        f"noise tone sets overlap near {bad:g} rad/s"
                    )


@dataclass(frozen=True)
class ChannelModel:
    """Denominator polynomial T_{p_a} .. T_{p_a+n} with p_a leading integrators."""

    p_a: int
    coeffs: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.p_a not in (0, 1, 2):
            raise InvalidArgumentError("astatism order must be 0, 1 or 2")
        coeffs = tuple(float(c) for c in self.coeffs)
        if not coeffs:
            raise InvalidArgumentError("a channel needs at least one coefficient")
        if any(not np.isfinite(c) for c in coeffs):
            raise InvalidArgumentError("coefficients must be finite")
        if coeffs[-1] == 0.0:
            raise InvalidArgumentError("leading coefficient must be nonzero")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def denominator(self, omega) -> complex | np.ndarray:
        """D(jw) = sum_k T_k (jw)^k over k = p_a .. p_a + n."""
        jw = 1j * np.asarray(omega, dtype=float)
        acc = np.zeros(jw.shape, dtype=complex)
        for k, t_k in enumerate(self.coeffs):
            acc = acc + t_k * jw ** (self.p_a + k)
        if np.ndim(omega) == 0:
            return complex(acc)
        return acc


def synth_harmonic(model: HarmonicModel, count: int, dt: float, t0: float = 0.0) -> Signal:
    """Sample the model at count points spaced dt starting at t0."""
    if count < 2:
        raise InvalidArgumentError("count must be at least 2")
    t = t0 + dt * np.arange(count)
    return Signal(model.evaluate(t), dt=dt, t0=t0)


def apply_noise(signal: Signal, spec: NoiseSpec) -> Signal:
    """Distort a record in place of the measurement chain."""
    t = signal.times()
    gain = spec.mult_mean + spec.mult_fluct.evaluate(t)
    out = gain * signal.samples + spec.additive.evaluate(t)
    if spec.coupling is not None:
        out = out + spec.coupling.evaluate(t)
    return Signal(out, dt=signal.dt, t0=signal.t0)


def simulate_channel(plant: ChannelModel, model: HarmonicModel) -> HarmonicModel:
    """Steady-state response of the channel to a harmonic drive.

    Every tone keeps its frequency; its coefficient is divided by D(jw).
    The tone set of the response therefore equals the tone set of the
    drive, which is what makes frequency matching across a channel sound.
    """
    if model.dc != 0.0 and plant.p_a > 0:
        raise InvalidArgumentError("an astatic channel cannot pass a dc drive")
    terms = []
    for w, c in model.terms:
        d = plant.denominator(w)
        if d == 0:
            raise SingularPlantError(f"denominator vanishes at {w:g} rad/s")
        terms.append((w, c / d))
    dc_out = 0.0
    if model.dc != 0.0:
        d0 = plant.coeffs[0]
        if d0 == 0.0:
            raise SingularPlantError("denominator vanishes at dc")
        dc_out = model.dc / d0
    return HarmonicModel(dc=dc_out, terms=tuple(terms))


def synth_coupled_inputs(
    independent: Sequence[HarmonicModel],
    couplings: Mapping[tuple[int, int], HarmonicModel],
    delta: float | None = None,
) -> list[HarmonicModel]:
    """Add shared coupling terms to pairs of otherwise independent inputs.

    couplings maps an index pair (i, l) to the common component injected
    into both inputs, which is what makes physically coupled actuators
    linearly dependent. A coupling tone that lands within ``delta`` of an
    independent tone of an affected input (exact match when delta is None)
    is rejected: it could not be separated from the input's own content.
    """
    extras: list[list[HarmonicModel]] = [[] for _ in independent]
    for (i, l), model in couplings.items():
        if i == l:
            raise InvalidArgumentError("a coupling links two distinct inputs")
        for idx in (i, l):
            if not 0 <= idx < len(independent):
                raise InvalidArgumentError(f"coupling index {idx} out of range")
            extras[idx].append(model)

    out: list[HarmonicModel] = []
    for idx, base in enumerate(independent):
        dc = base.dc
        terms = list(base.terms)
        seen = list(base.omegas)
        for model in extras[idx]:
            bad = _collides(model.omegas, seen, delta)
            if bad is not None:
                raise AmbiguousCouplingError(
                    f"coupling tone at {bad:g} rad/s collides with input {idx}"
                )
            dc += model.dc
            terms.extend(model.terms)
            seen.extend(model.omegas)
        out.append(HarmonicModel(dc=dc, terms=tuple(terms)))
    return out
