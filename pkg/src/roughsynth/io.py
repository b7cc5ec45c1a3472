"""File formats: field/spectrum CSV and raw little-endian binaries.

Field binary layout::

    int32[8]   magic 'RSFF', version, N, M, sampling (0 periodic, 1 endpoint), 0, 0, 0
    float64[4] f_min, f_max, L_x, L_y
    float64[M*N] values, one row per y line

Spectral binary layout::

    int32[8]   magic 'RSSF', version, N, M, sampling, hermitian, scaled, 0
    float64[4] L_x, L_y, scaled L_x, scaled L_y (0 when unscaled)
    float64[2*M*N] interleaved (re, im) coefficients, FFT order, rows = m
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .errors import InputDataError
from .grid import ScalarField
from .rogallo import RogalloField
from .spectral import EnergySpectrum, SpectralField

FIELD_MAGIC = int.from_bytes(b"RSFF", "little")
SPECTRAL_MAGIC = int.from_bytes(b"RSSF", "little")
VERSION = 1

_HEADER_INTS = np.dtype("<i4")
_F64 = np.dtype("<f8")
_SAMPLING_CODE = {"periodic": 0, "endpoint": 1}
_SAMPLING_NAME = {v: k for k, v in _SAMPLING_CODE.items()}


def _fmt(v: float) -> str:
    return repr(float(v))


def write_field_csv(f: ScalarField, path) -> None:
    lines = [",".join(_fmt(v) for v in row) for row in f.values]
    Path(path).write_text("\n".join(lines) + "\n")


def read_field_csv(path, L_x: float, L_y: float, sampling="endpoint") -> ScalarField:
    try:
        values = np.loadtxt(path, delimiter=",", ndmin=2)
    except (OSError, ValueError) as exc:
        raise InputDataError(f"cannot read field CSV {path}: {exc}") from exc
    return ScalarField(values, L_x, L_y, sampling)


def write_field_binary(f: ScalarField, path, f_min=None, f_max=None) -> None:
    f_min = float(f.values.min()) if f_min is None else float(f_min)
    f_max = float(f.values.max()) if f_max is None else float(f_max)
    ints = np.array(
        [FIELD_MAGIC, VERSION, f.N, f.M, _SAMPLING_CODE[f.sampling], 0, 0, 0], dtype=_HEADER_INTS
    )
    floats = np.array([f_min, f_max, f.L_x, f.L_y], dtype=_F64)
    with open(path, "wb") as fh:
        fh.write(ints.tobytes())
        fh.write(floats.tobytes())
        fh.write(np.ascontiguousarray(f.values, dtype=_F64).tobytes())


def _read_header(raw: bytes, magic: int, what: str, path):
    if len(raw) < 64:
        raise InputDataError(f"{path}: truncated {what} header")
    ints = np.frombuffer(raw[:32], dtype=_HEADER_INTS)
    floats = np.frombuffer(raw[32:64], dtype=_F64)
    if ints[0] != magic:
        raise InputDataError(f"{path}: not a {what} file (bad magic)")
    if ints[1] != VERSION:
        raise InputDataError(f"{path}: unsupported {what} version {ints[1]}")
    return ints, floats


def read_field_binary(path) -> tuple[ScalarField, float, float]:
    """Returns the field and the stored (f_min, f_max)."""
    raw = Path(path).read_bytes()
    ints, floats = _read_header(raw, FIELD_MAGIC, "field", path)
    N, M = int(ints[2]), int(ints[3])
    body = raw[64:]
    if len(body) != N * M * 8:
        raise InputDataError(f"{path}: expected {N * M} values, found {len(body) // 8}")
    values = np.frombuffer(body, dtype=_F64).reshape(M, N)
    sampling = _SAMPLING_NAME.get(int(ints[4]))
    if sampling is None:
        raise InputDataError(f"{path}: unknown sampling code {ints[4]}")
    f = ScalarField(values, float(floats[2]), float(floats[3]), sampling)
    return f, float(floats[0]), float(floats[1])


def write_spectral_binary(s: SpectralField, path) -> None:
    scaled = s.scaled_lengths
    ints = np.array(
        [SPECTRAL_MAGIC, VERSION, s.N, s.M, _SAMPLING_CODE[s.sampling], int(s.hermitian),
         int(scaled is not None), 0],
        dtype=_HEADER_INTS,
    )
    lx, ly = scaled or (0.0, 0.0)
    floats = np.array([s.L_x, s.L_y, lx, ly], dtype=_F64)
    inter = np.empty(s.coeffs.shape + (2,), dtype=_F64)
    inter[..., 0] = s.coeffs.real
    inter[..., 1] = s.coeffs.imag
    with open(path, "wb") as fh:
        fh.write(ints.tobytes())
        fh.write(floats.tobytes())
        fh.write(inter.tobytes())


def read_spectral_binary(path) -> SpectralField:
    raw = Path(path).read_bytes()
    ints, floats = _read_header(raw, SPECTRAL_MAGIC, "spectral", path)
    N, M = int(ints[2]), int(ints[3])
    body = raw[64:]
    if len(body) != N * M * 16:
        raise InputDataError(f"{path}: expected {N * M} coefficients")
    # reading the pairs as complex keeps signed zeros intact
    coeffs = np.frombuffer(body, dtype=np.dtype("<c16")).reshape(M, N).astype(np.complex128)
    scaled = (float(floats[2]), float(floats[3])) if ints[6] else None
    return SpectralField(
        coeffs,
        float(floats[0]),
        float(floats[1]),
        _SAMPLING_NAME[int(ints[4])],
        hermitian=bool(ints[5]),
        scaled_lengths=scaled,
    )


def write_spectrum_csv(es: EnergySpectrum, path) -> None:
    lines = ["k,E"] + [f"{k},{_fmt(e)}" for k, e in zip(es.k, es.bins)]
    Path(path).write_text("\n".join(lines) + "\n")


def read_spectrum_csv(path) -> EnergySpectrum:
    try:
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    except (OSError, ValueError) as exc:
        raise InputDataError(f"cannot read spectrum CSV {path}: {exc}") from exc
    k = data[:, 0]
    if not np.array_equal(k, np.arange(k.size)):
        raise InputDataError(f"{path}: k column must be 0, 1, 2, ...")
    return EnergySpectrum(data[:, 1])


def write_curve_csv(curve, path) -> None:
    lines = ["r,R"] + [f"{_fmt(r)},{_fmt(v)}" for r, v in zip(curve.separations, curve.values)]
    Path(path).write_text("\n".join(lines) + "\n")


def write_comparison_csv(table, path) -> None:
    head = ["k"] + [f"E[{lb}]" for lb in table.labels] + [f"log10ratio[{lb}]" for lb in table.labels]
    lines = [",".join(head)]
    for k, energies, ratios in table.rows():
        lines.append(",".join([str(k)] + [_fmt(e) for e in energies] + [_fmt(r) for r in ratios]))
    Path(path).write_text("\n".join(lines) + "\n")


def spectrum_hash(es: EnergySpectrum) -> str:
    return hashlib.sha256(np.ascontiguousarray(es.bins, dtype=_F64).tobytes()).hexdigest()


def write_rogallo(rf: RogalloField, spectrum: EnergySpectrum, directory, stem: str) -> Path:
    """Two spectral binaries plus a JSON manifest; returns the manifest path."""
    directory = Path(directory)
    fn, fm = f"{stem}_n.bin", f"{stem}_m.bin"
    write_spectral_binary(rf.comp_n, directory / fn)
    write_spectral_binary(rf.comp_m, directory / fm)
    manifest = {
        "seed": rf.seed,
        "N": rf.comp_n.N,
        "M": rf.comp_n.M,
        "spectrum_sha256": spectrum_hash(spectrum),
        "comp_n": fn,
        "comp_m": fm,
    }
    path = directory / f"{stem}.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


def read_rogallo(manifest_path) -> RogalloField:
    manifest_path = Path(manifest_path)
    meta = json.loads(manifest_path.read_text())
    base = manifest_path.parent
    return RogalloField(
        read_spectral_binary(base / meta["comp_n"]),
        read_spectral_binary(base / meta["comp_m"]),
        meta.get("seed"),
    )
