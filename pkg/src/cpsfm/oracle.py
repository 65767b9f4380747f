"""Brute-force reference computations for the closed-form transforms.

Nothing here touches the Bessel-expansion machinery: the continuous oracle
integrates the defining integrals directly in normalized time, and the
discrete oracle works from sampled time series.  Both exist to arbitrate,
so they favor transparency over speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.fft

from .chebyshev import eval_series
from .errors import InadequateSampleRateError, QuadratureConvergenceError
from .transforms import ResultGrid, support_limits
from .waveform import CpsfmWaveform, HfmSpec, hfm_fmf, peak_frequency_hz, sample


@dataclass(frozen=True)
class QuadSpec:
    """Quadrature policy: absolute tolerance, refinement budget, and rule."""

    abs_tol: float = 1e-9
    max_subdivisions: int = 16
    rule: str = "adaptive_simpson"

    def __post_init__(self):
        if self.abs_tol <= 0.0:
            raise ValueError("abs_tol must be > 0")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")
        if self.rule not in ("adaptive_simpson", "trapezoid_dense"):
            raise ValueError(f"unknown quadrature rule {self.rule!r}")


def _phase_rate_bound(w: CpsfmWaveform) -> float:
    """Bound on |d phase/dx|: sum_n n^2 |alpha_n| since |T_n'| <= n^2 on [-1, 1]."""
    alpha = w.pmf.coeffs[1:]
    return float(sum(n * n * abs(a) for n, a in enumerate(alpha, start=1)))


def _refine_integral(f, lo: float, hi: float, omega: float, spec: QuadSpec) -> complex:
    """Integrate complex-valued ``f`` on [lo, hi] by step-halving panels.

    The initial panel count resolves the supplied oscillation-rate bound
    ``omega`` (radians per unit x); refinement then halves the step until
    two successive rule applications agree within the tolerance.
    """
    span = hi - lo
    n = 1 << max(5, int(math.ceil(math.log2(max(16.0 * omega * span, 32.0)))))
    prev = None
    for _ in range(spec.max_subdivisions):
        if n > 1 << 24:
            break
        x = np.linspace(lo, hi, n + 1)
        y = f(x)
        h = span / n
        if spec.rule == "adaptive_simpson":
            est = (h / 3.0) * (
                y[0] + y[-1] + 4.0 * np.sum(y[1:-1:2]) + 2.0 * np.sum(y[2:-2:2])
            )
        else:
            est = h * (0.5 * y[0] + 0.5 * y[-1] + np.sum(y[1:-1]))
        if prev is not None and abs(est - prev) <= spec.abs_tol:
            return complex(est)
        prev = est
        n *= 2
    raise QuadratureConvergenceError(
        f"no convergence to {spec.abs_tol} within {spec.max_subdivisions} refinements"
    )


def quad_transform(
    kind: str,
    wa: CpsfmWaveform,
    wb: CpsfmWaveform | None = None,
    *,
    g: float | None = None,
    xi: float | None = None,
    nu: float | None = None,
    spec: QuadSpec = QuadSpec(),
) -> complex:
    """Direct numerical evaluation of one transform point.

    kind = "spectrum" needs ``g``; "correlation" needs ``xi``; "ambiguity"
    needs ``xi`` and ``nu``.  Normalizations match the closed forms: the
    1/2 measure factor from x = 2t/T, the sqrt(nu) energy factor, and
    support clipping.
    """
    wb_eff = wa if wb is None else wb
    pa, pb = wa.pmf, wb_eff.pmf

    if kind == "spectrum":
        if g is None:
            raise ValueError("spectrum point needs g")
        gv = float(g)

        def f(x):
            return np.exp(1j * (eval_series(pa, x) - 2.0 * np.pi * gv * x))

        omega = _phase_rate_bound(wa) + 2.0 * np.pi * abs(gv)
        return _refine_integral(f, -1.0, 1.0, omega, spec)

    if kind == "correlation":
        if xi is None:
            raise ValueError("correlation point needs xi")
        nu_eff = 1.0
    elif kind == "ambiguity":
        if xi is None or nu is None:
            raise ValueError("ambiguity point needs xi and nu")
        nu_eff = float(nu)
    else:
        raise ValueError(f"unknown transform kind {kind!r}")

    if wb_eff.duration_s != wa.duration_s:
        raise ValueError("correlation-type oracles need identical durations")
    lim = support_limits(float(xi), nu_eff)
    if lim.empty:
        return 0.0 + 0.0j

    def f(x):
        return np.exp(
            1j * (eval_series(pb, nu_eff * (x + float(xi))) - eval_series(pa, x))
        )

    omega = _phase_rate_bound(wa) + nu_eff * _phase_rate_bound(wb_eff)
    value = _refine_integral(f, lim.x1, lim.x2, omega, spec)
    return 0.5 * math.sqrt(nu_eff) * value


@dataclass(frozen=True)
class SampledSignal:
    """Raw complex samples at rate ``fs``; first sample is at time ``t0``."""

    samples: np.ndarray
    fs: float
    t0: float


class _TimeSignal:
    """Uniform view of an evaluable finite-duration analytic signal."""

    def __init__(self, duration_s, peak_f, evaluate):
        self.duration_s = duration_s
        self.peak_f = peak_f
        self.evaluate = evaluate


def _hfm_signal(spec: HfmSpec) -> _TimeSignal:
    """Centered unit-energy hyperbolic chirp, evaluated from its exact phase.

    With u = t + T/2 in [0, T], the phase is the closed-form integral of the
    hyperbolic frequency law; the tone degenerate case falls back to a
    linear phase.
    """
    T = spec.duration_s
    f1, f2 = spec.f1_hz, spec.f2_hz

    def phase(u):
        if f1 == f2:
            return 2.0 * np.pi * f1 * u
        k = f1 * f2 * T / (f1 - f2)
        return 2.0 * np.pi * k * np.log1p((f1 - f2) * u / (f2 * T))

    def evaluate(t):
        t = np.asarray(t, dtype=float)
        u = t + 0.5 * T
        inside = (u >= 0.0) & (u <= T)
        out = np.zeros(t.shape, dtype=complex)
        out[inside] = np.exp(1j * phase(u[inside])) / math.sqrt(T)
        return out

    return _TimeSignal(T, max(f1, f2), evaluate)


def _cpsfm_signal(w: CpsfmWaveform) -> _TimeSignal:
    T = w.duration_s

    def evaluate(t):
        t = np.asarray(t, dtype=float)
        inside = np.abs(t) <= 0.5 * T
        out = np.zeros(t.shape, dtype=complex)
        out[inside] = np.exp(1j * eval_series(w.pmf, 2.0 * t[inside] / T)) / math.sqrt(T)
        return out

    return _TimeSignal(T, peak_frequency_hz(w), evaluate)


def _as_time_signal(obj) -> _TimeSignal:
    if isinstance(obj, CpsfmWaveform):
        return _cpsfm_signal(obj)
    if isinstance(obj, HfmSpec):
        return _hfm_signal(obj)
    raise TypeError(f"cannot interpret {type(obj).__name__} as a time signal")


def _check_rate(sig: _TimeSignal, fs: float) -> None:
    if fs < 10.0 * sig.peak_f:
        raise InadequateSampleRateError(
            f"fs = {fs:g} Hz < 10x peak instantaneous frequency {sig.peak_f:g} Hz"
        )


def _midpoint_times(T: float, fs: float) -> np.ndarray:
    n = int(round(fs * T))
    return (np.arange(n) + 0.5) / fs - 0.5 * T


def _lag_correlation(a: np.ndarray, b: np.ndarray, fs: float, T: float) -> ResultGrid:
    """Full cross-correlation (1/fs) * sum_k a*_k b_{k+l} on integer lags.

    Inputs are unit-energy sample streams, so dividing the lag sums by fs
    alone reproduces the unit-modulus correlation normalization (peak 1 at
    zero lag for matched inputs).
    """
    n = len(a)
    size = scipy.fft.next_fast_len(2 * n)
    fa = scipy.fft.fft(np.conj(a[::-1]), size)
    fb = scipy.fft.fft(b, size)
    full = scipy.fft.ifft(fa * fb)[: 2 * n - 1]
    lags = np.arange(-(n - 1), n)
    xi = 2.0 * (lags / fs) / T
    return ResultGrid(axes=(("xi", xi),), values=full / fs, meta={"fs": fs})


def discrete_reference(
    kind: str,
    inputs,
    fs: float,
    seed: int = 0,
    *,
    g_grid=None,
    xi_grid=None,
    nu_grid=None,
) -> ResultGrid:
    """Sampled-signal reference transforms, independent of the closed forms.

    ``inputs`` is a waveform-like object (CpsfmWaveform or HfmSpec) or a
    pair of them; "correlation" additionally accepts SampledSignal inputs,
    correlating on its native lag grid.  The sample rate is checked against
    the peak instantaneous frequency up front: an oracle that aliased
    silently would be worse than none.
    """
    if kind == "spectrum":
        sig = _as_time_signal(inputs)
        _check_rate(sig, fs)
        t = _midpoint_times(sig.duration_s, fs)
        s = sig.evaluate(t)
        g = np.asarray(g_grid, dtype=float).ravel()
        kernel = np.exp(
            -2j * np.pi * (2.0 * g[:, None] / sig.duration_s) * t[None, :]
        )
        values = (2.0 / math.sqrt(sig.duration_s)) * (kernel @ s) / fs
        return ResultGrid(axes=(("g", g),), values=values, meta={"fs": fs})

    if kind == "correlation":
        a_in, b_in = inputs if isinstance(inputs, tuple) else (inputs, inputs)
        if isinstance(a_in, SampledSignal) or isinstance(b_in, SampledSignal):
            if not (isinstance(a_in, SampledSignal) and isinstance(b_in, SampledSignal)):
                raise TypeError("mixed sampled/analytic correlation is not supported")
            T = len(a_in.samples) / a_in.fs
            return _lag_correlation(a_in.samples, b_in.samples, a_in.fs, T)
        sa, sb = _as_time_signal(a_in), _as_time_signal(b_in)
        _check_rate(sa, fs)
        _check_rate(sb, fs)
        t = _midpoint_times(sa.duration_s, fs)
        a = sa.evaluate(t)
        if xi_grid is None:
            return _lag_correlation(a, sb.evaluate(t), fs, sa.duration_s)
        xi = np.asarray(xi_grid, dtype=float).ravel()
        values = np.empty(len(xi), dtype=complex)
        for i, x in enumerate(xi):
            values[i] = np.vdot(a, sb.evaluate(t + 0.5 * x * sa.duration_s))
        values /= fs
        return ResultGrid(axes=(("xi", xi),), values=values, meta={"fs": fs})

    if kind == "ambiguity":
        a_in, b_in = inputs if isinstance(inputs, tuple) else (inputs, inputs)
        sa, sb = _as_time_signal(a_in), _as_time_signal(b_in)
        _check_rate(sa, fs)
        _check_rate(sb, fs)
        t = _midpoint_times(sa.duration_s, fs)
        a = sa.evaluate(t)
        xi = np.asarray(xi_grid, dtype=float).ravel()
        nu = np.asarray(nu_grid, dtype=float).ravel()
        values = np.empty((len(nu), len(xi)), dtype=complex)
        for i, n in enumerate(nu):
            for k, x in enumerate(xi):
                shifted = sb.evaluate(n * (t + 0.5 * x * sa.duration_s))
                values[i, k] = math.sqrt(n) * np.vdot(a, shifted)
        values /= fs
        return ResultGrid(axes=(("nu", nu), ("xi", xi)), values=values, meta={"fs": fs})

    if kind == "matched_noise_ccf":
        sig = _as_time_signal(inputs)
        _check_rate(sig, fs)
        t = _midpoint_times(sig.duration_s, fs)
        ref = sig.evaluate(t)
        rng = np.random.default_rng(seed)
        spectrum_mag = np.abs(scipy.fft.fft(ref))
        noise = scipy.fft.ifft(
            spectrum_mag * np.exp(2j * np.pi * rng.random(len(ref)))
        )
        # same spectral magnitude implies same energy; rescale only roundoff
        noise *= np.sqrt(np.sum(np.abs(ref) ** 2) / np.sum(np.abs(noise) ** 2))
        grid = _lag_correlation(ref, noise, fs, sig.duration_s)
        return ResultGrid(axes=grid.axes, values=grid.values, meta={"fs": fs, "seed": seed})

    raise ValueError(f"unknown reference kind {kind!r}")
