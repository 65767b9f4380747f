"""Command-line interface: fit, synthesize, and analyze waveforms.

Every subcommand exits 0 on success and prints a single machine-parsable
``error: <Type>: <detail>`` line on stderr otherwise.  Outputs are
deterministic for identical inputs and seeds.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import specio
from .chebyshev import RidgeSample, eval_series, fit_wlls
from .errors import CpsfmError, SpecFileError
from .oracle import discrete_reference
from .transforms import (
    ambiguity,
    correlation,
    doppler_factor,
    jamming_rejection_db,
    spectrum,
    _refined_peak,
)
from .waveform import HfmSpec, approximate_hfm, peak_frequency_hz, sample


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=1e-10, help="transform tolerance")
    p.add_argument("--mmax-cap", type=int, default=4096, help="truncation hard cap")
    p.add_argument("--seed", type=int, default=0, help="seed for noise baselines")
    p.add_argument("--out", default=None, help="output path (default: stdout)")


def _add_xi_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--xi-min", type=float, default=-2.0)
    p.add_argument("--xi-max", type=float, default=2.0)
    p.add_argument("--xi-step", type=float, default=1e-3)
    p.add_argument("--xi-list", default=None,
                   help="explicit comma-separated delays (use --xi-list=... if negative)")


def _add_nu_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--nu-min", type=float, default=None)
    p.add_argument("--nu-max", type=float, default=None)
    p.add_argument("--nu-count", type=int, default=21)
    p.add_argument("--nu-list", default=None, help="explicit comma-separated scales")


def _parse_list(text: str) -> np.ndarray:
    try:
        return np.array([float(v) for v in text.split(",") if v.strip() != ""])
    except ValueError as exc:
        raise SpecFileError(f"bad numeric list: {exc}") from exc


def _xi_grid(args) -> np.ndarray:
    if args.xi_list is not None:
        return _parse_list(args.xi_list)
    return np.arange(args.xi_min, args.xi_max + 0.5 * args.xi_step, args.xi_step)


def _nu_grid(args) -> np.ndarray:
    if args.nu_list is not None:
        return _parse_list(args.nu_list)
    # default span: closing speeds of +-30 m/s in air
    lo = args.nu_min if args.nu_min is not None else doppler_factor(-30.0, 343.0)
    hi = args.nu_max if args.nu_max is not None else doppler_factor(30.0, 343.0)
    return np.linspace(lo, hi, args.nu_count)


def _g_grid(args, w) -> np.ndarray:
    if args.g_list is not None:
        return _parse_list(args.g_list)
    if args.g_min is not None and args.g_max is not None:
        return np.linspace(args.g_min, args.g_max, args.g_count)
    # default: 1.5x the frequency law's range, centered on it
    vals = eval_series(w.fmf, np.linspace(-1.0, 1.0, 512))
    mid = 0.5 * (vals.max() + vals.min())
    half = 0.75 * max(vals.max() - vals.min(), 1.0)
    return np.linspace(mid - half, mid + half, args.g_count)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_fit(args) -> int:
    rows = specio.read_ridge_csv(args.ridge)
    t = np.array([r[0] for r in rows])
    if args.duration_s is not None:
        duration = args.duration_s
        t0 = 0.0
    else:
        t0 = float(t.min())
        duration = float(t.max()) - t0
    if duration <= 0.0:
        raise SpecFileError("ridge samples span no time; pass --duration-s")
    samples = [
        RidgeSample(
            x=2.0 * (row[0] - t0) / duration - 1.0,
            g=0.5 * duration * row[1],
            weight=row[2],
        )
        for row in rows
    ]
    series = fit_wlls(samples, args.order)
    spec = specio.WaveformSpecFile(
        order=series.order + 1,
        duration_s=duration,
        fmf_coeffs=tuple(series.coeffs),
        label=args.label,
    )
    _emit(specio.serialize_waveform_spec(spec), args.out)
    return 0


def _cmd_synth(args) -> int:
    w = specio.read_spec_file(args.spec).to_waveform()
    samples = sample(w, args.fs)
    if args.out is not None and args.out.lower().endswith(".wav"):
        import scipy.io.wavfile

        scipy.io.wavfile.write(
            args.out, int(round(args.fs)), samples.real.astype(np.float32)
        )
        return 0
    t = (np.arange(len(samples)) + 0.5) / args.fs - 0.5 * w.duration_s
    lines = ["t_s,re,im"]
    lines += [
        f"{float(tv)!r},{float(sv.real)!r},{float(sv.imag)!r}"
        for tv, sv in zip(t, samples)
    ]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_spectrum(args) -> int:
    w = specio.read_spec_file(args.spec).to_waveform()
    grid = spectrum(w, _g_grid(args, w), tol=args.tol, cap=args.mmax_cap)
    _emit(specio.format_result_grid(grid), args.out)
    return 0


def _cmd_acf(args) -> int:
    w = specio.read_spec_file(args.spec).to_waveform()
    grid = correlation(w, None, _xi_grid(args), tol=args.tol, cap=args.mmax_cap)
    _emit(specio.format_result_grid(grid), args.out)
    return 0


def _cmd_ccf(args) -> int:
    wa = specio.read_spec_file(args.spec_a).to_waveform()
    wb = specio.read_spec_file(args.spec_b).to_waveform()
    grid = correlation(wa, wb, _xi_grid(args), tol=args.tol, cap=args.mmax_cap)
    _emit(specio.format_result_grid(grid), args.out)
    return 0


def _cmd_af(args) -> int:
    wa = specio.read_spec_file(args.spec_a).to_waveform()
    wb = specio.read_spec_file(args.spec_b).to_waveform() if args.spec_b else None
    grid = ambiguity(
        wa, wb, _xi_grid(args), _nu_grid(args), tol=args.tol, cap=args.mmax_cap
    )
    _emit(specio.format_result_grid(grid), args.out)
    return 0


def _cmd_approx_hfm(args) -> int:
    hfm = HfmSpec(f1_hz=args.f1, f2_hz=args.f2, duration_s=args.duration_s)
    w = approximate_hfm(hfm, args.order)
    spec = specio.WaveformSpecFile.from_waveform(w, label=args.label)
    _emit(specio.serialize_waveform_spec(spec), args.out)
    return 0


def _cmd_compare(args) -> int:
    file_a = specio.read_spec_file(args.spec_a)
    file_b = specio.read_spec_file(args.spec_b)
    wa, wb = file_a.to_waveform(), file_b.to_waveform()
    rejection = jamming_rejection_db(
        wa, wb, xi_step=args.xi_step, tol=args.tol, cap=args.mmax_cap
    )
    lines = [
        f"waveform_a: {file_a.label or args.spec_a}",
        f"waveform_b: {file_b.label or args.spec_b}",
        f"jamming_rejection_db: {rejection!r}",
    ]
    if args.noise:
        fs = args.fs if args.fs is not None else 40.0 * peak_frequency_hz(wa)
        grid = discrete_reference("matched_noise_ccf", wa, fs, seed=args.seed)
        peak = _refined_peak(np.abs(grid.values))
        lines += [
            f"noise_baseline_db: {float(-20.0 * np.log10(peak))!r}",
            f"noise_seed: {args.seed}",
        ]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cpsfm",
        description="Chebyshev-series FM waveforms: fit, synthesize, analyze.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="fit a ridge CSV to a waveform spec")
    p.add_argument("ridge", help="CSV with header t_s,f_hz,weight")
    p.add_argument("--order", type=int, default=4, help="frequency-law fit order")
    p.add_argument("--duration-s", type=float, default=None,
                   help="declared duration; default spans the samples")
    p.add_argument("--label", default=None)
    _add_common(p)
    p.set_defaults(run=_cmd_fit)

    p = sub.add_parser("synth", help="sample a spec to audio or CSV")
    p.add_argument("spec")
    p.add_argument("--fs", type=float, required=True, help="sample rate in Hz")
    _add_common(p)
    p.set_defaults(run=_cmd_synth)

    p = sub.add_parser("spectrum", help="closed-form spectrum to CSV")
    p.add_argument("spec")
    p.add_argument("--g-min", type=float, default=None)
    p.add_argument("--g-max", type=float, default=None)
    p.add_argument("--g-count", type=int, default=512)
    p.add_argument("--g-list", default=None)
    _add_common(p)
    p.set_defaults(run=_cmd_spectrum)

    p = sub.add_parser("acf", help="closed-form autocorrelation to CSV")
    p.add_argument("spec")
    _add_xi_flags(p)
    _add_common(p)
    p.set_defaults(run=_cmd_acf)

    p = sub.add_parser("ccf", help="closed-form cross-correlation to CSV")
    p.add_argument("spec_a")
    p.add_argument("spec_b")
    _add_xi_flags(p)
    _add_common(p)
    p.set_defaults(run=_cmd_ccf)

    p = sub.add_parser("af", help="wideband (cross-)ambiguity surface to CSV")
    p.add_argument("spec_a")
    p.add_argument("spec_b", nargs="?", default=None)
    _add_xi_flags(p)
    _add_nu_flags(p)
    _add_common(p)
    p.set_defaults(run=_cmd_af)

    p = sub.add_parser("approx-hfm", help="Chebyshev approximation of a hyperbolic chirp")
    p.add_argument("--f1", type=float, required=True, help="initial frequency, Hz")
    p.add_argument("--f2", type=float, required=True, help="terminal frequency, Hz")
    p.add_argument("--duration-s", "--T", dest="duration_s", type=float, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--label", default=None)
    _add_common(p)
    p.set_defaults(run=_cmd_approx_hfm)

    p = sub.add_parser("compare", help="jamming-rejection report for two specs")
    p.add_argument("spec_a")
    p.add_argument("spec_b")
    p.add_argument("--xi-step", type=float, default=1e-3)
    p.add_argument("--noise", action="store_true",
                   help="add a matched-spectrum noise baseline")
    p.add_argument("--fs", type=float, default=None, help="noise baseline sample rate")
    _add_common(p)
    p.set_defaults(run=_cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except CpsfmError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
