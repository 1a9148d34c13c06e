"""Reading trajectories and reading/writing signature files."""
from __future__ import annotations

import math
import os
import tempfile
from dataclasses import dataclass

import numpy as np

from .signature import PiecewiseLinearPath
from .tensor import TruncatedTensorSeries

SIGNATURE_FORMAT_VERSION = 1
PENDIGITS_POINTS = 8
DIGIT_RESAMPLE_POINTS = 32


class DataFormatError(ValueError):
    pass


@dataclass(frozen=True)
class TrajectorySample:
    points: np.ndarray
    label: int | None = None

    def to_path(self) -> PiecewiseLinearPath:
        return PiecewiseLinearPath(self.points)


def parse_points_csv(text: str) -> PiecewiseLinearPath:
    """One vertex per line, comma separated; blank lines and ``#`` comments skipped."""
    rows = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = [f.strip() for f in line.split(",")]
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            raise DataFormatError(
                f"line {lineno}: expected {width} columns, found {len(fields)}")
        row = []
        for col, field in enumerate(fields, start=1):
            try:
                value = float(field)
            except ValueError:
                raise DataFormatError(
                    f"line {lineno}, column {col}: cannot parse {field!r} as a number") from None
            if not math.isfinite(value):
                raise DataFormatError(f"line {lineno}, column {col}: non-finite value")
            row.append(value)
        rows.append(row)
    try:
        return PiecewiseLinearPath(rows)
    except ValueError as exc:
        raise DataFormatError(f"fewer than 2 distinct points ({exc})") from None


def parse_pendigits(text: str) -> list[TrajectorySample]:
    """UCI pen-digits rows: 16 integer coordinates (8 x,y pairs) then the class label."""
    samples = []
    n_fields = 2 * PENDIGITS_POINTS + 1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != n_fields:
            raise DataFormatError(
                f"line {lineno}: expected {n_fields} fields, found {len(fields)}")
        try:
            values = [int(f) for f in fields]
        except ValueError:
            raise DataFormatError(f"line {lineno}: non-integer field") from None
        pts = np.array(values[:-1], dtype=float).reshape(PENDIGITS_POINTS, 2)
        samples.append(TrajectorySample(pts, values[-1]))
    return samples


def normalize_unit_box(sample: TrajectorySample) -> TrajectorySample:
    """Translate to the origin and scale both axes by one factor so the largest coordinate is 1."""
    pts = np.asarray(sample.points, dtype=float)
    lo = pts.min(axis=0)
    span = float(np.max(pts.max(axis=0) - lo))
    if span == 0.0:
        raise DataFormatError("all points are identical")
    return TrajectorySample((pts - lo) / span, sample.label)


def resample_unit_speed(path, k: int) -> PiecewiseLinearPath:
    """k points equally spaced in arc length along the polyline (endpoints kept exactly)."""
    if k < 2:
        raise ValueError("need at least 2 resampled points")
    if not isinstance(path, PiecewiseLinearPath):
        path = PiecewiseLinearPath(path)
    pts = path.point_at(np.linspace(0.0, 1.0, k))
    pts[0] = path.vertices[0]
    pts[-1] = path.vertices[-1]
    return PiecewiseLinearPath(pts)


def digit_path(sample: TrajectorySample, k: int = DIGIT_RESAMPLE_POINTS) -> PiecewiseLinearPath:
    """The preprocessing used for pen digits: unit-box normalisation then arc-length resampling."""
    return resample_unit_speed(normalize_unit_box(sample).to_path(), k)


def format_signature(sig: TruncatedTensorSeries) -> str:
    lines = [f"version={SIGNATURE_FORMAT_VERSION}", f"dimension={sig.dim}", f"depth={sig.depth}"]
    for n, block in enumerate(sig.levels):
        lines.append(f"level {n}: " + " ".join(repr(float(c)) for c in block))
    return "\n".join(lines) + "\n"


def parse_signature(text: str) -> TruncatedTensorSeries:
    header = {}
    levels = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("level"):
            head, _, body = line.partition(":")
            try:
                n = int(head.split()[1])
            except (IndexError, ValueError):
                raise DataFormatError(f"line {lineno}: malformed level header {head!r}") from None
            try:
                values = [float(v) for v in body.split()]
            except ValueError:
                raise DataFormatError(f"line {lineno}: unparsable coefficient in level {n}") from None
            if not all(math.isfinite(v) for v in values):
                raise DataFormatError(f"level {n}: non-finite coefficient")
            if n in levels:
                raise DataFormatError(f"level {n} given twice")
            levels[n] = values
        else:
            key, sep, value = line.partition("=")
            if not sep:
                raise DataFormatError(f"line {lineno}: expected key=value, got {line!r}")
            header[key.strip()] = value.strip()
    try:
        version = int(header["version"])
        dim = int(header["dimension"])
        depth = int(header["depth"])
    except KeyError as exc:
        raise DataFormatError(f"missing header field {exc.args[0]!r}") from None
    except ValueError:
        raise DataFormatError("header fields must be integers") from None
    if version != SIGNATURE_FORMAT_VERSION:
        raise DataFormatError(f"unsupported signature file version {version}")
    if dim < 1 or depth < 0:
        raise DataFormatError(f"invalid dimension {dim} or depth {depth}")
    if sorted(levels) != list(range(depth + 1)):
        raise DataFormatError(f"expected levels 0..{depth}, found {sorted(levels)}")
    for n in range(depth + 1):
        if len(levels[n]) != dim**n:
            raise DataFormatError(
                f"level {n} has {len(levels[n])} coefficients, expected {dim ** n}")
    return TruncatedTensorSeries(dim, tuple(np.array(levels[n]) for n in range(depth + 1)))


def atomic_write_text(path, text: str) -> None:
    """Write via a temporary file in the same directory, then rename into place."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_signature(sig: TruncatedTensorSeries, path) -> None:
    atomic_write_text(path, format_signature(sig))


def read_signature(path) -> TruncatedTensorSeries:
    with open(path) as fh:
        return parse_signature(fh.read())
