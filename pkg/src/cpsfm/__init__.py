"""Chebyshev-series frequency-modulated waveforms.

Synthesis of finite-duration polynomial-phase signals whose frequency laws
are Chebyshev series, together with closed-form spectra, correlations, and
wideband ambiguity functions via generalized Bessel expansions, plus
brute-force oracles to check them against.
"""

from .chebyshev import (
    ChebSeries,
    NodeSet,
    RidgeSample,
    eval_series,
    fit_wlls,
    integrate_fmf,
    interpolate,
    scale_shift,
    series_add,
)
from .bessel import GbfArgs, GbfTable, choose_truncation, mbf_complex, mgbf
from .waveform import (
    CpsfmWaveform,
    HfmSpec,
    approximate_hfm,
    build_waveform,
    hfm_fmf,
    instantaneous_frequency,
    peak_frequency_hz,
    sample,
)
from .transforms import (
    ResultGrid,
    SupportLimits,
    ambiguity,
    correlation,
    doppler_factor,
    gamma_coeff,
    jamming_rejection_db,
    spectrum,
    support_limits,
)
from .oracle import QuadSpec, SampledSignal, discrete_reference, quad_transform
from .specio import (
    WaveformSpecFile,
    parse_waveform_spec,
    read_result_grid,
    read_ridge_csv,
    read_spec_file,
    serialize_waveform_spec,
    write_result_grid,
    write_ridge_csv,
    write_spec_file,
)
from . import errors

__all__ = [
    "ChebSeries",
    "NodeSet",
    "RidgeSample",
    "eval_series",
    "series_add",
    "integrate_fmf",
    "scale_shift",
    "interpolate",
    "fit_wlls",
    "GbfArgs",
    "GbfTable",
    "mbf_complex",
    "mgbf",
    "choose_truncation",
    "CpsfmWaveform",
    "HfmSpec",
    "build_waveform",
    "sample",
    "instantaneous_frequency",
    "peak_frequency_hz",
    "hfm_fmf",
    "approximate_hfm",
    "ResultGrid",
    "SupportLimits",
    "spectrum",
    "support_limits",
    "gamma_coeff",
    "correlation",
    "ambiguity",
    "doppler_factor",
    "jamming_rejection_db",
    "QuadSpec",
    "SampledSignal",
    "quad_transform",
    "discrete_reference",
    "WaveformSpecFile",
    "parse_waveform_spec",
    "serialize_waveform_spec",
    "read_spec_file",
    "write_spec_file",
    "read_ridge_csv",
    "write_ridge_csv",
    "read_result_grid",
    "write_result_grid",
    "errors",
]
