"""Finite-duration constant-modulus waveforms with Chebyshev-series frequency laws.

A waveform lives on natural time t in [-T/2, T/2], mapped to normalized
time x = 2t/T.  Its normalized frequency law g(x) = (T/2) f(t) is a
Chebyshev series, and the phase law is the antiderivative
phi(x) = phi0 + 2*pi*int g dx, one order higher.  The hyperbolic chirp and
its series approximations live here too.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .chebyshev import ChebSeries, eval_series, integrate_fmf, interpolate
from .errors import AliasingWarning


class CpsfmWaveform:
    """Immutable waveform: duration plus normalized frequency and phase laws.

    The phase series is always derived from the frequency series at
    construction; it cannot be set independently.
    """

    __slots__ = ("duration_s", "fmf", "pmf", "phi0")

    def __init__(self, fmf: ChebSeries, duration_s: float, phi0: float = 0.0):
        duration_s = float(duration_s)
        if duration_s <= 0.0:
            raise ValueError("duration must be positive")
        object.__setattr__(self, "duration_s", duration_s)
        object.__setattr__(self, "fmf", fmf)
        object.__setattr__(self, "phi0", float(phi0))
        object.__setattr__(self, "pmf", integrate_fmf(fmf, float(phi0)))

    def __setattr__(self, name, value):
        raise AttributeError("CpsfmWaveform is immutable")

    @property
    def order(self) -> int:
        """Waveform order: one above the frequency-law order."""
        return self.pmf.order

    def __repr__(self):
        return (
            f"CpsfmWaveform(order={self.order}, duration_s={self.duration_s}, "
            f"fmf={list(self.fmf.coeffs)!r})"
        )


@dataclass(frozen=True)
class HfmSpec:
    """Hyperbolic chirp: initial/terminal frequencies over a duration.

    Either sweep direction is fine; equal endpoints degenerate to a tone.
    """

    f1_hz: float
    f2_hz: float
    duration_s: float

    def __post_init__(self):
        if self.f1_hz <= 0.0 or self.f2_hz <= 0.0:
            raise ValueError("endpoint frequencies must be positive")
        if self.duration_s <= 0.0:
            raise ValueError("duration must be positive")


def build_waveform(fmf: ChebSeries, duration_s: float, phi0: float = 0.0) -> CpsfmWaveform:
    """Construct a waveform from its normalized frequency law."""
    return CpsfmWaveform(fmf, duration_s, phi0)


def instantaneous_frequency(w: CpsfmWaveform, t) -> float:
    """Instantaneous frequency in hertz at natural time t in [-T/2, T/2]."""
    x = 2.0 * np.asarray(t, dtype=float) / w.duration_s
    g = eval_series(w.fmf, x)
    out = 2.0 * np.asarray(g) / w.duration_s
    return float(out) if np.ndim(t) == 0 else out


def peak_frequency_hz(w: CpsfmWaveform, grid: int = 2048) -> float:
    """Largest |instantaneous frequency| over a dense normalized-time grid."""
    x = np.linspace(-1.0, 1.0, grid)
    return float(np.max(np.abs(eval_series(w.fmf, x)))) * 2.0 / w.duration_s


def sample(w: CpsfmWaveform, fs: float) -> np.ndarray:
    """Complex midpoint samples of the analytic signal at rate ``fs``.

    round(fs*T) samples with amplitude 1/sqrt(T), so the discrete energy
    sum|s_k|^2 / fs is 1 to within one part in fs*T.  A rate below twice the
    peak instantaneous frequency raises an aliasing warning, never an error:
    the analytic model itself cannot alias, only this sampler can.
    """
    fs = float(fs)
    if fs * w.duration_s < 2.0:
        raise ValueError("need at least two samples: fs * duration < 2")
    if fs < 2.0 * peak_frequency_hz(w):
        warnings.warn(
            f"fs = {fs:g} Hz is below twice the peak instantaneous frequency",
            AliasingWarning,
            stacklevel=2,
        )
    n = int(round(fs * w.duration_s))
    t = (np.arange(n) + 0.5) / fs - 0.5 * w.duration_s
    phase = eval_series(w.pmf, 2.0 * t / w.duration_s)
    return np.exp(1j * phase) / np.sqrt(w.duration_s)


def hfm_fmf(spec: HfmSpec, t: float) -> float:
    """Hyperbolic frequency law f1*f2*T / ((f1 - f2)*t + f2*T) on [0, T]."""
    denom = (spec.f1_hz - spec.f2_hz) * float(t) + spec.f2_hz * spec.duration_s
    if denom <= 0.0:
        raise ValueError(f"hyperbolic frequency law pole at t = {t}")
    return spec.f1_hz * spec.f2_hz * spec.duration_s / denom


def approximate_hfm(spec: HfmSpec, order: int) -> CpsfmWaveform:
    """Order-``order`` waveform interpolating the hyperbolic chirp's frequency law.

    The chirp's [0, T] time base maps affinely onto [-1, 1] so the endpoint
    frequencies land at x = -1 and x = +1; the normalized law g = (T/2) f is
    interpolated at the Chebyshev nodes with an order-(order-1) series.
    order = 2 therefore yields the linear-chirp approximation.
    """
    if order < 2:
        raise ValueError("approximation order must be >= 2")
    T = spec.duration_s

    def g(x: float) -> float:
        return 0.5 * T * hfm_fmf(spec, 0.5 * T * (x + 1.0))

    return build_waveform(interpolate(g, order - 1), T, 0.0)
