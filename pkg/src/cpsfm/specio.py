"""File formats: waveform spec files, ridge-sample CSV, and result-grid CSV.

Spec files are strict JSON objects with explicitly named fields; unknown
keys are rejected by name rather than ignored.  All CSV output prints
floats through repr, so re-ingesting a file reproduces every value
bit-identically.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

import numpy as np

from .chebyshev import ChebSeries
from .errors import SpecFileError
from .transforms import ResultGrid
from .waveform import CpsfmWaveform, build_waveform

_REQUIRED_FIELDS = ("order", "duration_s", "fmf_coeffs")
_OPTIONAL_FIELDS = ("phi0_rad", "label")


@dataclass(frozen=True)
class WaveformSpecFile:
    """On-disk description of a waveform: order, duration, and coefficients."""

    order: int
    duration_s: float
    fmf_coeffs: tuple
    phi0_rad: float = 0.0
    label: str | None = None

    def to_waveform(self) -> CpsfmWaveform:
        return build_waveform(ChebSeries(self.fmf_coeffs), self.duration_s, self.phi0_rad)

    @classmethod
    def from_waveform(cls, w: CpsfmWaveform, label: str | None = None) -> "WaveformSpecFile":
        return cls(
            order=w.order,
            duration_s=w.duration_s,
            fmf_coeffs=tuple(w.fmf.coeffs),
            phi0_rad=w.phi0,
            label=label,
        )


def parse_waveform_spec(text: str) -> CpsfmWaveform:
    """Parse spec-file text into a validated waveform."""
    return _parse_spec_fields(text).to_waveform()


def _parse_spec_fields(text: str) -> WaveformSpecFile:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFileError(f"not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise SpecFileError("spec must be a JSON object")

    for key in raw:
        if key not in _REQUIRED_FIELDS + _OPTIONAL_FIELDS:
            raise SpecFileError(f"unknown field: {key}")
    for key in _REQUIRED_FIELDS:
        if key not in raw:
            raise SpecFileError(f"missing field: {key}")

    order = raw["order"]
    if not isinstance(order, int) or order < 1:
        raise SpecFileError("field order must be a positive integer")
    duration = raw["duration_s"]
    if not isinstance(duration, (int, float)) or duration <= 0.0:
        raise SpecFileError("field duration_s must be positive")
    coeffs = raw["fmf_coeffs"]
    if not isinstance(coeffs, list) or not all(isinstance(c, (int, float)) for c in coeffs):
        raise SpecFileError("field fmf_coeffs must be a list of numbers")
    if len(coeffs) != order:
        raise SpecFileError(
            f"field fmf_coeffs has {len(coeffs)} entries but order is {order}"
        )
    phi0 = raw.get("phi0_rad", 0.0)
    if not isinstance(phi0, (int, float)):
        raise SpecFileError("field phi0_rad must be a number")
    label = raw.get("label")
    if label is not None and not isinstance(label, str):
        raise SpecFileError("field label must be a string")
    return WaveformSpecFile(
        order=order,
        duration_s=float(duration),
        fmf_coeffs=tuple(float(c) for c in coeffs),
        phi0_rad=float(phi0),
        label=label,
    )


def serialize_waveform_spec(spec: WaveformSpecFile) -> str:
    payload = {
        "order": spec.order,
        "duration_s": spec.duration_s,
        "fmf_coeffs": list(spec.fmf_coeffs),
    }
    if spec.phi0_rad != 0.0:
        payload["phi0_rad"] = spec.phi0_rad
    if spec.label is not None:
        payload["label"] = spec.label
    return json.dumps(payload, indent=2) + "\n"


def read_spec_file(path) -> WaveformSpecFile:
    with open(path, "r", encoding="utf-8") as fh:
        return _parse_spec_fields(fh.read())


def write_spec_file(spec: WaveformSpecFile, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_waveform_spec(spec))


def read_ridge_csv(path) -> list[tuple[float, float, float]]:
    """Read (t_s, f_hz, weight) rows; the header row is mandatory."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["t_s", "f_hz", "weight"]:
            raise SpecFileError("ridge file must start with header t_s,f_hz,weight")
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise SpecFileError(f"ridge file line {lineno}: expected 3 columns")
            try:
                rows.append((float(row[0]), float(row[1]), float(row[2])))
            except ValueError as exc:
                raise SpecFileError(f"ridge file line {lineno}: {exc}") from exc
    if not rows:
        raise SpecFileError("ridge file has no samples")
    return rows


def write_ridge_csv(rows, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("t_s,f_hz,weight\n")
        for t, f, w in rows:
            fh.write(f"{float(t)!r},{float(f)!r},{float(w)!r}\n")


def format_result_grid(grid: ResultGrid) -> str:
    """Result grid as CSV: axis columns, then re,im,abs, last axis fastest."""
    names = [name for name, _ in grid.axes]
    buf = io.StringIO()
    buf.write(",".join(names + ["re", "im", "abs"]) + "\n")
    axes = [ax for _, ax in grid.axes]
    flat = grid.values.ravel()
    index = np.stack(
        [a.ravel() for a in np.meshgrid(*axes, indexing="ij")], axis=-1
    ) if axes else np.empty((1, 0))
    for coords, v in zip(index, flat):
        cells = [repr(float(c)) for c in coords]
        cells += [repr(float(v.real)), repr(float(v.imag)), repr(float(abs(v)))]
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()


def write_result_grid(grid: ResultGrid, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_result_grid(grid))


def read_result_grid(path) -> ResultGrid:
    """Re-ingest a result-grid CSV written by :func:`write_result_grid`."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or header[-3:] != ["re", "im", "abs"]:
            raise SpecFileError("result grid must end with columns re,im,abs")
        names = header[:-3]
        coords: list[list[float]] = [[] for _ in names]
        values = []
        for row in reader:
            if not row:
                continue
            for i in range(len(names)):
                coords[i].append(float(row[i]))
            values.append(complex(float(row[-3]), float(row[-2])))

    axes = []
    shape = []
    for i, name in enumerate(names):
        col = np.array(coords[i])
        # row-major over the last axis: unique values keep first appearance order
        uniq = col[np.sort(np.unique(col, return_index=True)[1])]
        axes.append((name, uniq))
        shape.append(len(uniq))
    grid_values = np.array(values).reshape(shape if shape else (1,))
    if not shape:
        raise SpecFileError("result grid has no axis columns")
    return ResultGrid(axes=tuple(axes), values=grid_values, meta={})
