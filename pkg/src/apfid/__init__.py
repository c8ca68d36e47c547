"""apfid: identification of linear ODE channels from one almost-periodic record.

The package recovers the denominator polynomial of a constant-coefficient
channel sum_k T_k y^(k) = x, including its astatism (integrator) order,
from a single synchronous recording of the inputs and the output. It
works entirely in the frequency domain through tolerance-based frequency
set algebra: tones shared between inputs are discarded, tones shared
between one input and the output localise the channel, and projections at
those tones carry the fit.
"""

__version__ = "0.1.0"

from .errors import (
    AliasingError,
    AmbiguousCouplingError,
    ApfidError,
    ConfigError,
    CsvFormatError,
    DegenerateFitError,
    DegenerateInputError,
    InvalidArgumentError,
    NoCommonFrequenciesError,
    NoConsistentModelError,
    SingularPlantError,
    UnclassifiableAstatismError,
    UnderdeterminedError,
)
from .freqset import (
    FrequencySet,
    FrequencySystem,
    delta_equal,
    intersect,
    is_disjoint_system,
    prune_shared,
    symmetric_difference,
)
from .identify import (
    ChannelIdentification,
    IdentifyConfig,
    detect_astatism,
    fit_coefficients,
    identify_channel,
    identify_from_projections,
    match_channel_frequencies,
    select_order,
)
from .io_csv import TelemetryRecord, format_csv, parse_csv
from .projection import cos_angle, fourier_coeff, inner_product, project_onto, time_average
from .reporting import RunConfig, emit_report, run_identification
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
from .simspec import build_simulation
from .spectral import PeakPolicy, Spectrum, amplitude_spectrum, detect_peaks

__all__ = [
    "__version__",
    "ApfidError",
    "InvalidArgumentError",
    "SingularPlantError",
    "AmbiguousCouplingError",
    "AliasingError",
    "DegenerateInputError",
    "UnclassifiableAstatismError",
    "UnderdeterminedError",
    "DegenerateFitError",
    "NoCommonFrequenciesError",
    "NoConsistentModelError",
    "CsvFormatError",
    "ConfigError",
    "Signal",
    "HarmonicModel",
    "NoiseSpec",
    "ChannelModel",
    "synth_harmonic",
    "apply_noise",
    "simulate_channel",
    "synth_coupled_inputs",
    "Spectrum",
    "PeakPolicy",
    "amplitude_spectrum",
    "detect_peaks",
    "FrequencySet",
    "FrequencySystem",
    "delta_equal",
    "intersect",
    "symmetric_difference",
    "prune_shared",
    "is_disjoint_system",
    "time_average",
    "inner_product",
    "fourier_coeff",
    "project_onto",
    "cos_angle",
    "IdentifyConfig",
    "ChannelIdentification",
    "match_channel_frequencies",
    "detect_astatism",
    "fit_coefficients",
    "select_order",
    "identify_from_projections",
    "identify_channel",
    "TelemetryRecord",
    "parse_csv",
    "format_csv",
    "RunConfig",
    "emit_report",
    "run_identification",
    "build_simulation",
]
