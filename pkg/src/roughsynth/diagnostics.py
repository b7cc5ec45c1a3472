"""Error norms, two-point correlations and spectrum comparison."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal, Sequence

import numpy as np

from .errors import InputDataError
from .grid import ScalarField
from .spectral import EnergySpectrum


@dataclass(frozen=True)
class ErrorReport:
    epsilon_E: float | None = None
    epsilon_F: float | None = None


def extraction_error(extracted: ScalarField, reference: Callable) -> float:
    """Sup-norm error of an extracted field against ``reference(x, y)``,
    relative to the sup norm of the reference on the same nodes."""
    X, Y = np.meshgrid(extracted.x, extracted.y)
    ref = np.asarray(reference(X, Y), dtype=np.float64)
    scale = np.max(np.abs(ref))
    if scale == 0:
        raise InputDataError("reference function is identically zero on the grid")
    return float(np.max(np.abs(extracted.values - ref)) / scale)


def reference_norm(field_or_grid: ScalarField, reference: Callable) -> float:
    """Discrete 2-norm of ``reference`` on the nodes of a field."""
    X, Y = np.meshgrid(field_or_grid.x, field_or_grid.y)
    return float(np.linalg.norm(np.asarray(reference(X, Y), dtype=np.float64)))


def fs_error(fs_values: ScalarField, extracted: ScalarField, ref_norm: float) -> float:
    """``||f_F - f_E||_2 / ||f_O||_2`` over a shared grid."""
    if fs_values.values.shape != extracted.values.shape:
        raise InputDataError(
            f"grid mismatch: {fs_values.values.shape} vs {extracted.values.shape}"
        )
    if not ref_norm > 0:
        raise InputDataError("reference norm must be positive")
    return float(np.linalg.norm(fs_values.values - extracted.values) / ref_norm)


@dataclass(frozen=True, eq=False)
class CorrelationCurve:
    separations: np.ndarray
    values: np.ndarray
    direction: Literal["x", "y"]

    def half(self) -> "CorrelationCurve":
        """Separations up to and including the midpoint."""
        k = self.values.size // 2 + 1
        return CorrelationCurve(self.separations[:k], self.values[:k], self.direction)


def _circular_autocorrelation(values: np.ndarray) -> np.ndarray:
    """Normalized circular autocorrelation along axis 1, summed over rows."""
    fluct = values - values.mean()
    n = fluct.shape[1]
    spec = np.fft.rfft(fluct, axis=1)
    raw = np.fft.irfft(np.abs(spec) ** 2, n=n, axis=1).sum(axis=0)
    # enforce raw(r) == raw(L - r) bit for bit
    mirror = raw[(-np.arange(n)) % n]
    raw = 0.5 * (raw + mirror)
    return raw / raw[0]


def _correlation(values: np.ndarray, spacing: float, direction) -> CorrelationCurve:
    if values.shape[0] < 2 or values.shape[1] < 2:
        raise InputDataError("correlation needs at least a 2x2 field")
    fluct = values - values.mean()
    if np.max(np.abs(fluct)) <= 1e-12 * max(np.max(np.abs(values)), 1e-300):
        raise InputDataError("field is constant: correlation undefined")
    curve = _circular_autocorrelation(np.ascontiguousarray(values))
    sep = np.arange(values.shape[1]) * spacing
    return CorrelationCurve(sep, curve, direction)


def correlation_x(f: ScalarField) -> CorrelationCurve:
    """Two-point correlation along x with circular wrap.

    Separations are ``i * dx`` in the field's own (possibly scaled)
    coordinates.
    """
    return _correlation(f.values, f.dx, "x")


def correlation_y(f: ScalarField) -> CorrelationCurve:
    return _correlation(np.ascontiguousarray(f.values.T), f.dy, "y")


@dataclass(frozen=True, eq=False)
class SpectrumComparison:
    labels: list[str]
    k: np.ndarray
    energies: np.ndarray
    log_ratios: np.ndarray

    def rows(self):
        for i, k in enumerate(self.k):
            yield int(k), self.energies[:, i], self.log_ratios[:, i]


def compare_spectra(spectra: Sequence[tuple[str, EnergySpectrum]]) -> SpectrumComparison:
    """Align spectra bin by bin; log10 ratios are against the first entry.

    Bins equal to the reference give 0 (including both zero). Otherwise a
    zero compared bin gives -inf and a zero reference bin +inf.
    """
    if not spectra:
        raise InputDataError("nothing to compare")
    sizes = {s.bins.size for _, s in spectra}
    if len(sizes) != 1:
        raise InputDataError(f"spectra have mismatched bin counts: {sorted(sizes)}")
    labels = [label for label, _ in spectra]
    energies = np.vstack([s.bins for _, s in spectra])
    with np.errstate(divide="ignore", invalid="ignore"):
        log_ratios = np.log10(energies) - np.log10(energies[0])
    log_ratios[energies == energies[0]] = 0.0
    return SpectrumComparison(labels, spectra[0][1].k, energies, log_ratios)
