"""Closed-form spectrum, correlations, and wideband ambiguity functions.

Every transform here reduces to the same template: express the integrand's
phase as a Chebyshev series, substitute x = cos(theta) so the series becomes
a cosine polynomial, expand the resulting unit-modulus generator in
generalized Bessel coefficients, and weight each order by the elementary
integral of e^{j m theta} sin(theta) over the (possibly clipped) support.
Delay and Doppler enter purely through re-coefficienting of the second
waveform's phase series, which is exact polynomial algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bessel import GbfArgs, GbfTable, choose_truncation, mgbf, DEFAULT_TRUNCATION_CAP
from .chebyshev import ChebSeries, scale_shift
from .errors import DurationMismatchError
from .waveform import CpsfmWaveform

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class SupportLimits:
    """Overlap [x1, x2] of a waveform with its delayed, time-scaled copy.

    ``theta1``/``theta2`` are the arccosines of the clipped limits; note the
    orientation flip: x1 <= x2 maps to theta2 <= theta1.  ``empty`` marks a
    vanished overlap (the transforms then return exactly zero).
    """

    x1: float
    x2: float
    theta1: float
    theta2: float
    empty: bool


def support_limits(xi: float, nu: float) -> SupportLimits:
    """Overlap of [-1, 1] with the pre-image of the scaled, shifted copy."""
    if nu <= 0.0:
        raise ValueError("Doppler scale must be positive")
    lo = max(-1.0, -1.0 / nu - xi)
    hi = min(1.0, 1.0 / nu - xi)
    empty = lo >= hi
    x1 = min(lo, 1.0)
    x2 = max(hi, -1.0)
    return SupportLimits(
        x1=x1,
        x2=x2,
        theta1=float(np.arccos(x1)),
        theta2=float(np.arccos(x2)),
        empty=empty,
    )


def gamma_coeff(m: int, theta1: float, theta2: float) -> complex:
    """Elementary weight int_{theta2}^{theta1} e^{j m theta} sin(theta) dtheta.

    Uses the antiderivative e^{j m theta} (cos(theta) - j m sin(theta)) /
    (m^2 - 1); the removable m = +-1 case gets its own closed form.
    Conjugate symmetry gamma_{-m} = conj(gamma_m) holds by construction.
    """
    m = int(m)
    if m in (1, -1):
        return 0.25 * (
            np.exp(2j * m * theta2)
            - np.exp(2j * m * theta1)
            + 2j * m * (theta1 - theta2)
        )
    upsilon1 = np.exp(1j * m * theta1) * (math.cos(theta1) - 1j * m * math.sin(theta1))
    upsilon2 = np.exp(1j * m * theta2) * (math.cos(theta2) - 1j * m * math.sin(theta2))
    return complex(upsilon1 - upsilon2) / (m * m - 1)


def _gamma_weights(m_max: int, theta1: float, theta2: float) -> np.ndarray:
    """Order-indexed assembly weights for a symmetric coefficient table.

    Pairing +m with -m against an even table gives gamma_0 at order zero and
    2*Re(gamma_m) above it.
    """
    m = np.arange(m_max + 1)
    ups1 = np.exp(1j * m * theta1) * (math.cos(theta1) - 1j * m * math.sin(theta1))
    ups2 = np.exp(1j * m * theta2) * (math.cos(theta2) - 1j * m * math.sin(theta2))
    denom = m.astype(float) ** 2 - 1.0
    if m_max >= 1:
        denom[1] = 1.0  # removable singularity, patched below
    gam = (ups1 - ups2) / denom
    if m_max >= 1:
        gam[1] = gamma_coeff(1, theta1, theta2)
    weights = 2.0 * gam.real.astype(complex)
    weights[0] = gam[0]
    return weights


def doppler_factor(v: float, c: float) -> float:
    """Two-way Doppler time-scale (1 + v/c) / (1 - v/c) for closing speed v."""
    if abs(v) >= c:
        raise ValueError("speed must satisfy |v| < c")
    mu = v / c
    return (1.0 + mu) / (1.0 - mu)


@dataclass(frozen=True)
class ResultGrid:
    """Sampled transform output with named axes and provenance metadata."""

    axes: tuple
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        shape = tuple(len(ax) for _, ax in self.axes)
        if self.values.shape != shape:
            raise ValueError(f"value shape {self.values.shape} != axis shape {shape}")

    def axis(self, name: str) -> np.ndarray:
        for axis_name, ax in self.axes:
            if axis_name == name:
                return ax
        raise KeyError(name)


def _assemble(table: GbfTable, weights: np.ndarray) -> complex:
    return complex(weights @ table.coeffs)


def _padded_phase_coeffs(w: CpsfmWaveform, order: int) -> np.ndarray:
    out = np.zeros(order + 1)
    out[: len(w.pmf.coeffs)] = w.pmf.coeffs
    return out


def spectrum(
    w: CpsfmWaveform,
    g_grid,
    *,
    tol: float = DEFAULT_TOL,
    cap: int = DEFAULT_TRUNCATION_CAP,
    method: str = "fourier",
    complex_kernel_shift: bool = False,
    truncation_order: int | None = None,
) -> ResultGrid:
    """Continuous spectrum over normalized frequencies ``g_grid``.

    The transform kernel e^{-j 2 pi g x} is absorbed into the phase series
    as a real shift of the first coefficient, keeping the generator unit
    modulus.  ``complex_kernel_shift`` instead applies the shift to the
    imaginary part; that variant makes the generator unbounded and is kept
    only for side-by-side study, not for use.  ``truncation_order`` overrides
    the automatic expansion-order choice (stability studies).
    """
    g = np.asarray(g_grid, dtype=float).ravel()
    alpha = np.array(w.pmf.coeffs[1:], dtype=complex)
    if len(alpha) == 0:
        alpha = np.zeros(1, dtype=complex)
    phi0 = w.pmf.coeffs[0]

    def shifted(gv: float) -> np.ndarray:
        out = alpha.copy()
        if complex_kernel_shift:
            out[0] -= 2j * np.pi * gv
        else:
            out[0] -= 2.0 * np.pi * gv
        return out

    if truncation_order is not None:
        m_trunc = int(truncation_order)
    else:
        worst = g[np.argmax(np.abs(alpha[0].real - 2.0 * np.pi * g))] if len(g) else 0.0
        m_trunc = choose_truncation(GbfArgs(shifted(worst)), tol, cap)
    weights = _gamma_weights(m_trunc, np.pi, 0.0)

    rho = np.exp(1j * phi0)
    values = np.empty(len(g), dtype=complex)
    for i, gv in enumerate(g):
        table = mgbf(GbfArgs(shifted(gv)), m_trunc, method=method, tol=tol)
        values[i] = rho * _assemble(table, weights)
    meta = {
        "kind": "spectrum",
        "waveform": _waveform_id(w),
        "truncation_order": m_trunc,
        "tol": tol,
        "method": method,
    }
    return ResultGrid(axes=(("g", g),), values=values, meta=meta)


def _waveform_id(w: CpsfmWaveform) -> str:
    return f"order-{w.order}/T={w.duration_s:g}s"


def _pair_setup(wa: CpsfmWaveform, wb: CpsfmWaveform | None):
    wb = wa if wb is None else wb
    if wb.duration_s != wa.duration_s:
        raise DurationMismatchError(
            f"durations differ: {wa.duration_s} vs {wb.duration_s}"
        )
    order = max(wa.pmf.order, wb.pmf.order)
    alpha = _padded_phase_coeffs(wa, order)
    pmf_b = ChebSeries(_padded_phase_coeffs(wb, order))
    return alpha, pmf_b, order


def _warped_args(pmf_b: ChebSeries, alpha: np.ndarray, xi: float, nu: float):
    """Phase-difference coefficients and mean-phase factor for one (xi, nu)."""
    warped = scale_shift(pmf_b, nu, xi)
    diff = np.asarray(warped.coeffs) - alpha
    rho = np.exp(1j * (warped.coeffs[0] - alpha[0]))
    return diff[1:], rho


def _pair_truncation(points, pmf_b, alpha, tol, cap):
    """One truncation order for a whole grid, from its worst argument vector."""
    worst_band = -1.0
    worst = None
    for xi, nu in points:
        if support_limits(xi, nu).empty:
            continue
        diff, _ = _warped_args(pmf_b, alpha, xi, nu)
        band = float(np.sum(np.arange(1, len(diff) + 1) * np.abs(diff)))
        if band > worst_band:
            worst_band, worst = band, diff
    if worst is None:
        return 0
    return choose_truncation(GbfArgs(worst), tol, cap)


def _corr_value(pmf_b, alpha, xi, nu, m_trunc, tol, method):
    lim = support_limits(xi, nu)
    if lim.empty:
        return 0.0 + 0.0j
    diff, rho = _warped_args(pmf_b, alpha, xi, nu)
    table = mgbf(GbfArgs(diff), m_trunc, method=method, tol=tol)
    weights = _gamma_weights(m_trunc, lim.theta1, lim.theta2)
    return rho * 0.5 * math.sqrt(nu) * _assemble(table, weights)


def correlation(
    wa: CpsfmWaveform,
    wb: CpsfmWaveform | None = None,
    xi_grid=(0.0,),
    *,
    tol: float = DEFAULT_TOL,
    cap: int = DEFAULT_TRUNCATION_CAP,
    method: str = "fourier",
) -> ResultGrid:
    """Auto- (wb omitted) or cross-correlation over normalized delays.

    The delayed phase series is re-expanded about the undelayed time axis,
    the first waveform's phase is subtracted coefficient-wise, and the
    constant term rides out front as a unit-modulus mean-phase factor.
    Values are exactly zero wherever the supports no longer overlap.
    """
    alpha, pmf_b, _ = _pair_setup(wa, wb)
    xi = np.asarray(xi_grid, dtype=float).ravel()
    m_trunc = _pair_truncation(((x, 1.0) for x in xi), pmf_b, alpha, tol, cap)
    values = np.array(
        [_corr_value(pmf_b, alpha, x, 1.0, m_trunc, tol, method) for x in xi]
    )
    meta = {
        "kind": "acf" if wb is None or wb is wa else "ccf",
        "waveform_a": _waveform_id(wa),
        "waveform_b": _waveform_id(wa if wb is None else wb),
        "truncation_order": m_trunc,
        "tol": tol,
        "method": method,
    }
    return ResultGrid(axes=(("xi", xi),), values=values, meta=meta)


def ambiguity(
    wa: CpsfmWaveform,
    wb: CpsfmWaveform | None = None,
    xi_grid=(0.0,),
    nu_grid=(1.0,),
    *,
    tol: float = DEFAULT_TOL,
    cap: int = DEFAULT_TRUNCATION_CAP,
    method: str = "fourier",
) -> ResultGrid:
    """Wideband (cross-)ambiguity surface over (Doppler scale, delay).

    The nu = 1 row reproduces ``correlation`` exactly; elsewhere the second
    waveform's phase series is rescaled as well as shifted, and the sqrt(nu)
    energy factor keeps the zero-delay matched peak at unit magnitude.
    """
    alpha, pmf_b, _ = _pair_setup(wa, wb)
    xi = np.asarray(xi_grid, dtype=float).ravel()
    nu = np.asarray(nu_grid, dtype=float).ravel()
    if np.any(nu <= 0.0):
        raise ValueError("Doppler scale grid must be positive")
    m_trunc = _pair_truncation(
        ((x, n) for n in nu for x in xi), pmf_b, alpha, tol, cap
    )
    values = np.empty((len(nu), len(xi)), dtype=complex)
    for i, n in enumerate(nu):
        for k, x in enumerate(xi):
            values[i, k] = _corr_value(pmf_b, alpha, x, n, m_trunc, tol, method)
    meta = {
        "kind": "af" if wb is None or wb is wa else "caf",
        "waveform_a": _waveform_id(wa),
        "waveform_b": _waveform_id(wa if wb is None else wb),
        "truncation_order": m_trunc,
        "tol": tol,
        "method": method,
    }
    return ResultGrid(axes=(("nu", nu), ("xi", xi)), values=values, meta=meta)


def _refined_peak(mags: np.ndarray) -> float:
    """Grid maximum with three-point parabolic refinement."""
    i = int(np.argmax(mags))
    if i == 0 or i == len(mags) - 1:
        return float(mags[i])
    y0, y1, y2 = mags[i - 1], mags[i], mags[i + 1]
    denom = y0 - 2.0 * y1 + y2
    if denom >= 0.0:
        return float(y1)
    delta = 0.5 * (y0 - y2) / denom
    return float(y1 - 0.25 * (y0 - y2) * delta)


def jamming_rejection_db(
    wa: CpsfmWaveform,
    wb: CpsfmWaveform,
    *,
    xi_step: float = 1e-3,
    tol: float = DEFAULT_TOL,
    cap: int = DEFAULT_TRUNCATION_CAP,
) -> float:
    """Peak autocorrelation over peak cross-correlation, in decibels.

    The autocorrelation peak is unity by construction, so only the
    cross-correlation surface is searched (over the full overlap range,
    with parabolic refinement of the grid maximum).
    """
    xi = np.arange(-2.0, 2.0 + 0.5 * xi_step, xi_step)
    ccf = correlation(wa, wb, xi, tol=tol, cap=cap)
    peak = _refined_peak(np.abs(ccf.values))
    return -20.0 * math.log10(peak)
