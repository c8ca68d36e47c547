"""Finite-record time averages and tone projections.

The infinite-record mean functional is realised as the plain sample mean
over the available record; every guarantee that holds for the limit holds
here up to a leakage term of order 1/(T * dw), where T is the record
length and dw the smallest frequency gap involved. Projections below make
no attempt to deflate that leakage; callers control it through record
length and tone separation.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateInputError, InvalidArgumentError
from .signals import HarmonicModel, Signal

__all__ = [
    "time_average",
    "inner_product",
    "fourier_coeff",
    "project_onto",
    "cos_angle",
]


def time_average(signal: Signal) -> float:
    """Sample mean, the finite-record stand-in for the time-average functional."""
    return float(np.mean(signal.samples))


def _check_aligned(x: Signal, y: Signal) -> None:
    if x.count != y.count:
        raise InvalidArgumentError("signals must have the same length")
    if x.dt != y.dt:
        raise InvalidArgumentError("signals must share the same dt")


def inner_product(x: Signal, y: Signal) -> float:
    """Mean of the pointwise product; tones at distinct frequencies decay
    towards orthogonality as the record grows."""
    _check_aligned(x, y)
    return float(np.mean(x.samples * y.samples))


def fourier_coeff(x: Signal, omega: float, *, _t: np.ndarray | None = None) -> complex:
    """Complex tone coefficient c(w) = (2/N) * sum_n x_n exp(-j*w*t_n).

    For x(t) = Re{c exp(j*w*t)} this recovers c up to leakage, matching the
    Re{c exp(j*w*t)} synthesis convention: cos(w*t) maps to 1+0j and
    sin(w*t) to -1j.
    """
    if not np.isfinite(omega) or omega <= 0.0:
        raise InvalidArgumentError("omega must be positive and finite")
    if omega >= np.pi / x.dt:
        raise InvalidArgumentError(
            f"omega {omega:g} is at or above the Nyquist rate {np.pi / x.dt:g}"
        )
    t = x.times() if _t is None else _t
    return complex(2.0 * np.mean(x.samples * np.exp(-1j * omega * t)))


def project_onto(x: Signal, omegas) -> HarmonicModel:
    """Harmonic model of x restricted to the given frequencies.

    This is the noise-rejection step: content at any frequency outside
    ``omegas`` influences the result only through leakage.
    """
    t = x.times()
    terms = tuple((float(w), fourier_coeff(x, float(w), _t=t)) for w in omegas)
    return HarmonicModel(dc=time_average(x), terms=terms)


def cos_angle(x: Signal, y: Signal) -> float:
    """Cosine of the angle between two records under the mean-product form.

    |cos| near 1 flags linearly dependent records (a redundant input).
    Clamped to [-1, 1] so downstream comparisons never see rounding
    overshoot.
    """
    _check_aligned(x, y)
    xx = float(np.mean(x.samples * x.samples))
    yy = float(np.mean(y.samples * y.samples))
    if xx == 0.0 or yy == 0.0:
        raise DegenerateInputError("cannot take the angle of a zero-norm record")
    value = float(np.mean(x.samples * y.samples)) / np.sqrt(xx * yy)
    return float(np.clip(value, -1.0, 1.0))
