"""Text formats for spectra and spectral factors, plus atomic file writes.

A PSD file reads::

    SPECGEO-PSD v1
    m=<m> N=<N>
    <2 m^2 floats: re im of each entry, row-major>   (N lines)

Floats are written in shortest round-trip form, so parsing a written file
reproduces the samples bit for bit. Factor files use the header
``SPECGEO-FACTOR v1`` followed by the same body and a trailing ``omega`` line
plus one row holding ``Omega``.
"""
from __future__ import annotations

import contextlib
import csv
import io
import os
import tempfile
from pathlib import Path

import numpy as np

from .psd import FrequencyGrid, MatrixPsd

PSD_MAGIC = "SPECGEO-PSD v1"
FACTOR_MAGIC = "SPECGEO-FACTOR v1"


class PsdFormatError(ValueError):
    """Malformed PSD or factor file; ``line`` is 1-based."""

    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def format_float(x):
    s = repr(float(x))
    return s[:-2] if s.endswith(".0") else s


def _row(mat):
    flat = np.asarray(mat, dtype=complex).reshape(-1)
    return " ".join(f"{format_float(v.real)} {format_float(v.imag)}" for v in flat)


@contextlib.contextmanager
def atomic_write(path, mode="w", newline=None):
    """Write to a temporary file next to ``path`` and rename it into place."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, mode, newline=newline) as fh:
            yield fh
        os.replace(tmp, path)
    except BaseException:
        with contextlib.suppress(FileNotFoundError):
            os.unlink(tmp)
        raise


def dumps_psd(f):
    lines = [PSD_MAGIC, f"m={f.m} N={f.n_points}"]
    lines.extend(_row(v) for v in f.values)
    return "\n".join(lines) + "\n"


def dumps_factor(sf):
    m = sf.m
    n = sf.factor_values.shape[0]
    lines = [FACTOR_MAGIC, f"m={m} N={n}"]
    lines.extend(_row(v) for v in sf.factor_values)
    lines.append("omega")
    lines.append(_row(sf.omega))
    return "\n".join(lines) + "\n"


def _parse_header(lines, magic):
    if not lines:
        raise PsdFormatError("empty file", 1)
    if lines[0].strip() != magic:
        raise PsdFormatError(f"expected header {magic!r}, got {lines[0].strip()!r}", 1)
    if len(lines) < 2:
        raise PsdFormatError("missing 'm=<m> N=<N>' line", 2)
    fields = dict(tok.split("=", 1) for tok in lines[1].split() if "=" in tok)
    try:
        m, n = int(fields["m"]), int(fields["N"])
    except (KeyError, ValueError):
        raise PsdFormatError(f"bad size line {lines[1].strip()!r}", 2) from None
    if m < 1 or n < 1:
        raise PsdFormatError("m and N must be positive", 2)
    return m, n


def _parse_row(line, lineno, m):
    parts = line.split()
    if len(parts) != 2 * m * m:
        raise PsdFormatError(f"expected {2 * m * m} numbers, found {len(parts)}", lineno)
    try:
        nums = np.array([float(p) for p in parts])
    except ValueError as exc:
        raise PsdFormatError(str(exc), lineno) from None
    if not np.all(np.isfinite(nums)):
        raise PsdFormatError("non-finite value", lineno)
    return (nums[0::2] + 1j * nums[1::2]).reshape(m, m)


def _body(lines, m, n):
    values = np.empty((n, m, m), dtype=complex)
    for k in range(n):
        lineno = k + 3
        if lineno > len(lines):
            raise PsdFormatError(f"file ends after {k} of {n} records", lineno)
        values[k] = _parse_row(lines[lineno - 1], lineno, m)
    return values


def loads_psd(text, provenance=""):
    lines = text.splitlines()
    m, n = _parse_header(lines, PSD_MAGIC)
    values = _body(lines, m, n)
    extra = [ln for ln in lines[n + 2 :] if ln.strip()]
    if extra:
        raise PsdFormatError("unexpected trailing content", n + 3)
    try:
        grid = FrequencyGrid(n)
    except ValueError as exc:
        raise PsdFormatError(str(exc), 2) from None
    return MatrixPsd(grid, values, provenance)


def loads_factor(text):
    """Return ``(factor_values, omega)`` from a factor file."""
    lines = text.splitlines()
    m, n = _parse_header(lines, FACTOR_MAGIC)
    values = _body(lines, m, n)
    if len(lines) < n + 4 or lines[n + 2].strip() != "omega":
        raise PsdFormatError("missing omega block", n + 3)
    omega = _parse_row(lines[n + 3], n + 4, m)
    return values, omega


def read_psd(path):
    path = Path(path)
    return loads_psd(path.read_text(), provenance=str(path))


def write_psd(path, f):
    with atomic_write(path) as fh:
        fh.write(dumps_psd(f))


def write_factor(path, sf):
    with atomic_write(path) as fh:
        fh.write(dumps_factor(sf))


def read_factor(path):
    return loads_factor(Path(path).read_text())


def write_csv(path, header, rows):
    with atomic_write(path, newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def write_text(path, text):
    with atomic_write(path) as fh:
        fh.write(text)


def csv_string(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()
