"""Waveform model tests: construction, sampling, and the hyperbolic chirp."""

import numpy as np
import pytest

from cpsfm import (
    ChebSeries,
    HfmSpec,
    approximate_hfm,
    build_waveform,
    eval_series,
    hfm_fmf,
    instantaneous_frequency,
    sample,
    spectrum,
)
from cpsfm.errors import AliasingWarning

from conftest import CALL_A_KHZ, random_waveform


class TestBuildWaveform:
    def test_constant_law_is_pure_tone(self):
        w = build_waveform(ChebSeries([5.0]), 1.0, 0.0)
        assert np.allclose(w.pmf.coeffs, (0.0, 10.0 * np.pi), atol=1e-15)

    def test_call_duration(self):
        w = build_waveform(ChebSeries(CALL_A_KHZ), 0.0075)
        assert w.duration_s == 0.0075
        assert w.order == 5

    def test_zero_law_is_rectangular_pulse(self):
        w = build_waveform(ChebSeries([0.0]), 2.0)
        s = sample(w, 64.0)
        assert np.allclose(np.abs(s), 1.0 / np.sqrt(2.0), atol=1e-15)
        assert np.allclose(s.imag, 0.0, atol=1e-15)

    def test_rejects_nonpositive_duration(self):
        with pytest.raises(ValueError):
            build_waveform(ChebSeries([1.0]), 0.0)

    def test_phase_series_is_derived(self):
        w = build_waveform(ChebSeries([1.0, 2.0]), 1.0, phi0=0.5)
        assert w.pmf.order == w.fmf.order + 1
        assert w.pmf.coeffs[0] == 0.5
        with pytest.raises(AttributeError):
            w.pmf = ChebSeries([0.0])

    def test_frequency_normalization_round_trip(self):
        rng = np.random.default_rng(17)
        for _ in range(10):
            w = random_waveform(rng, duration_s=float(rng.uniform(1e-3, 3.0)))
            t = rng.uniform(-0.5, 0.5, 25) * w.duration_s
            f = instantaneous_frequency(w, t)
            g = eval_series(w.fmf, 2.0 * t / w.duration_s)
            assert np.allclose(0.5 * w.duration_s * f, g, rtol=1e-9, atol=1e-12)


class TestSample:
    def test_trivial_pulse(self):
        s = sample(build_waveform(ChebSeries([0.0]), 1.0), 100.0)
        assert len(s) == 100
        assert np.allclose(s, 1.0, atol=1e-15)

    def test_constant_modulus(self):
        rng = np.random.default_rng(18)
        for _ in range(5):
            w = random_waveform(rng, duration_s=2.0)
            s = sample(w, 200.0)
            assert np.allclose(np.abs(s), 1.0 / np.sqrt(w.duration_s), atol=1e-12)

    def test_tone_frequency_from_phase_differences(self):
        w = build_waveform(ChebSeries([10.0]), 1.0)
        fs = 1000.0
        s = sample(w, fs)
        freq = np.diff(np.unwrap(np.angle(s))) * fs / (2.0 * np.pi)
        assert np.allclose(freq, 20.0, rtol=1e-3)

    def test_unit_energy(self):
        rng = np.random.default_rng(19)
        for _ in range(5):
            w = random_waveform(rng, duration_s=float(rng.uniform(0.5, 2.0)))
            fs = float(rng.uniform(150.0, 400.0))
            s = sample(w, fs)
            energy = np.sum(np.abs(s) ** 2) / fs
            assert abs(energy - 1.0) <= 2.0 / (fs * w.duration_s)

    def test_aliasing_warns_but_returns(self):
        w = build_waveform(ChebSeries([40.0]), 1.0)
        with pytest.warns(AliasingWarning):
            s = sample(w, 30.0)
        assert len(s) == 30

    def test_too_few_samples_raises(self):
        with pytest.raises(ValueError):
            sample(build_waveform(ChebSeries([0.0]), 1.0), 1.5)

    def test_dft_matches_analytic_spectrum(self):
        # sampled-signal transform vs closed form, 1% where energy lives
        rng = np.random.default_rng(20)
        for _ in range(3):
            w = random_waveform(rng, duration_s=1.0)
            g = np.linspace(-10, 10, 101)
            peak = 2.0 * np.max(np.abs(eval_series(w.fmf, np.linspace(-1, 1, 512))))
            # rate must cover the kernel frequency 2*g/T too, not just the signal
            fs = 40.0 * (peak + 2.0 * np.max(np.abs(g)) / w.duration_s)
            s = sample(w, fs)
            t = (np.arange(len(s)) + 0.5) / fs - 0.5 * w.duration_s
            kernel = np.exp(-2j * np.pi * np.outer(2.0 * g / w.duration_s, t))
            dft = 2.0 / np.sqrt(w.duration_s) * (kernel @ s) / fs
            closed = spectrum(w, g).values
            keep = np.abs(closed) > 0.05 * np.max(np.abs(closed))
            rel = np.abs(dft - closed)[keep] / np.abs(closed)[keep]
            assert np.max(rel) < 0.01


class TestHfm:
    SPEC = HfmSpec(100e3, 200e3, 2e-3)

    def test_endpoints(self):
        assert hfm_fmf(self.SPEC, 0.0) == pytest.approx(100e3)
        assert hfm_fmf(self.SPEC, 2e-3) == pytest.approx(200e3)

    def test_midpoint_is_harmonic_mean(self):
        f1, f2 = self.SPEC.f1_hz, self.SPEC.f2_hz
        want = 2.0 * f1 * f2 / (f1 + f2)
        assert hfm_fmf(self.SPEC, 1e-3) == pytest.approx(want, rel=1e-12)

    def test_monotone_between_endpoints(self):
        t = np.linspace(0.0, self.SPEC.duration_s, 1000)
        f = np.array([hfm_fmf(self.SPEC, tv) for tv in t])
        assert np.all(np.diff(f) > 0)
        down = HfmSpec(200e3, 100e3, 2e-3)
        f = np.array([hfm_fmf(down, tv) for tv in t])
        assert np.all(np.diff(f) < 0)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            HfmSpec(0.0, 1.0, 1.0)
        with pytest.raises(ValueError):
            HfmSpec(1.0, 1.0, 0.0)

    def test_pole_guard(self):
        # the law's pole sits outside [0, T]; probing past it must raise
        with pytest.raises(ValueError, match="pole"):
            hfm_fmf(HfmSpec(100.0, 200.0, 1.0), 3.0)


class TestApproximateHfm:
    SPEC = HfmSpec(100e3, 200e3, 2e-3)

    def test_order_two_is_affine(self):
        w = approximate_hfm(self.SPEC, 2)
        assert w.fmf.order == 1

    def test_equal_endpoints_give_constant_law(self):
        w = approximate_hfm(HfmSpec(150e3, 150e3, 1e-3), 6)
        assert np.allclose(w.fmf.coeffs[1:], 0.0, atol=1e-9)

    def test_error_shrinks_with_order(self):
        T = self.SPEC.duration_s
        x = np.linspace(-1.0, 1.0, 10_000)
        truth = np.array([0.5 * T * hfm_fmf(self.SPEC, 0.5 * T * (xv + 1.0)) for xv in x])
        errs = {}
        for order in (4, 8):
            w = approximate_hfm(self.SPEC, order)
            errs[order] = np.max(np.abs(eval_series(w.fmf, x) - truth) / np.abs(truth))
        assert errs[8] < errs[4]

    def test_rejects_low_order(self):
        with pytest.raises(ValueError):
            approximate_hfm(self.SPEC, 1)
