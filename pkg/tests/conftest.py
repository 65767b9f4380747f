"""Shared fixtures: bat-call fixtures and random waveform populations."""

import numpy as np
import pytest

from cpsfm import ChebSeries, build_waveform

# Fourth-order frequency-law fits of two free-tailed-bat calls, as printed
# (natural frequency in kHz over a 7.5 ms call).
CALL_A_KHZ = (34.9629, -13.1297, -1.0060, 0.6347, -0.6599)
CALL_B_KHZ = (38.8165, -11.9987, 2.6602, -0.2573, -1.0253)
CALL_DURATION_S = 0.0075


def call_waveform(coeffs_khz, duration_s=CALL_DURATION_S):
    """Build a call model from kHz frequency-law coefficients.

    Normalized frequency is (T/2) * f, so kHz coefficients scale by
    500 * duration.
    """
    scale = 0.5 * duration_s * 1e3
    return build_waveform(ChebSeries(np.asarray(coeffs_khz) * scale), duration_s)


def random_waveform(rng, max_order=6, alpha_limit=40.0, duration_s=1.0):
    """Random waveform of order <= max_order with phase coefficients in bounds.

    Frequency-law coefficients decay with index so the phase stays smooth
    enough for brute-force quadrature; draws whose phase series leaves
    [-alpha_limit, alpha_limit] are rejected and retried.
    """
    while True:
        fmf_order = int(rng.integers(0, max_order))  # waveform order <= max_order
        coeffs = rng.uniform(-6.0, 6.0, fmf_order + 1)
        coeffs[1:] /= np.arange(2, fmf_order + 2) ** 2
        w = build_waveform(ChebSeries(coeffs), duration_s, phi0=float(rng.uniform(-np.pi, np.pi)))
        if np.max(np.abs(w.pmf.coeffs)) <= alpha_limit:
            return w


@pytest.fixture(scope="session")
def call_a():
    return call_waveform(CALL_A_KHZ)


@pytest.fixture(scope="session")
def call_b():
    return call_waveform(CALL_B_KHZ)
