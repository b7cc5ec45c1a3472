"""2D discrete Fourier transforms and radial energy spectra.

Coefficients follow the convention

    c[n, m] = 1/(N M) sum_ij f_ij exp(-i k_n x_i) exp(-i k_m y_j),
    f(x, y) = sum_nm c[n, m] exp(i k_n x) exp(i k_m y),

with n = -N/2+1 .. N/2 and k_n = 2 pi n / L.  Arrays are kept in numpy FFT
order (index 0 is the mean mode, index N/2 is the +N/2 Nyquist mode) and are
shaped (M, N) like the physical fields.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import InputDataError, InvariantViolation
from .grid import SamplingMode, ScalarField, grid_spacing

TWO_PI = 2.0 * math.pi

# Relative imaginary residue tolerated when a real field is requested.
REAL_TOL = 1e-9


def mode_indices(count: int) -> np.ndarray:
    """Integer mode numbers in FFT order, with the Nyquist mode positive."""
    n = np.arange(count)
    n[n > count // 2] -= count
    return n


@dataclass(frozen=True, eq=False)
class SpectralField:
    coeffs: np.ndarray
    L_x: float = TWO_PI
    L_y: float = TWO_PI
    sampling: SamplingMode = "periodic"
    hermitian: bool = False
    scaled_lengths: tuple[float, float] | None = None

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128, copy=True)
        if c.ndim != 2:
            raise InputDataError("spectral coefficients must be a 2D array")
        if c.shape[0] % 2 or c.shape[1] % 2:
            raise InputDataError(f"spectral grid must have even dimensions, got {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def N(self) -> int:
        return self.coeffs.shape[1]

    @property
    def M(self) -> int:
        return self.coeffs.shape[0]

    @property
    def period_x(self) -> float:
        return self.N * grid_spacing(self.L_x, self.N, self.sampling)

    @property
    def period_y(self) -> float:
        return self.M * grid_spacing(self.L_y, self.M, self.sampling)

    @property
    def n(self) -> np.ndarray:
        return mode_indices(self.N)

    @property
    def m(self) -> np.ndarray:
        return mode_indices(self.M)

    @property
    def k_n(self) -> np.ndarray:
        return self.n * (TWO_PI / self.period_x)

    @property
    def k_m(self) -> np.ndarray:
        return self.m * (TWO_PI / self.period_y)

    @property
    def scale_s(self) -> float:
        return 1.0 if self.scaled_lengths is None else TWO_PI / self.scaled_lengths[0]

    @property
    def scale_r(self) -> float:
        return 1.0 if self.scaled_lengths is None else TWO_PI / self.scaled_lengths[1]

    @property
    def display_lengths(self) -> tuple[float, float]:
        """Domain lengths that physical fields derived from this spectrum carry."""
        return self.scaled_lengths or (self.L_x, self.L_y)

    def mode_radius(self) -> np.ndarray:
        """``sqrt(n^2 + m^2)`` per coefficient, shape (M, N)."""
        return np.hypot(self.n[None, :], self.m[:, None])

    def with_coeffs(self, coeffs, **changes) -> "SpectralField":
        return replace(self, coeffs=coeffs, **changes)

    def __repr__(self):
        return (
            f"SpectralField(N={self.N}, M={self.M}, L_x={self.L_x:g}, L_y={self.L_y:g}, "
            f"hermitian={self.hermitian}, s={self.scale_s:g}, r={self.scale_r:g})"
        )


@dataclass(frozen=True, eq=False)
class EnergySpectrum:
    """Energy per integer radial wavenumber bin 0..k_max."""

    bins: np.ndarray

    def __post_init__(self):
        b = np.array(self.bins, dtype=np.float64, copy=True)
        if b.ndim != 1 or b.size == 0:
            raise InputDataError("energy spectrum must be a non-empty 1D array")
        if np.any(b < 0) or not np.all(np.isfinite(b)):
            raise InputDataError("energy spectrum bins must be finite and non-negative")
        b.setflags(write=False)
        object.__setattr__(self, "bins", b)

    @property
    def k(self) -> np.ndarray:
        return np.arange(self.bins.size)

    @property
    def k_max(self) -> int:
        return self.bins.size - 1

    def at(self, k_mag) -> np.ndarray:
        """Energy of the nearest integer bin; zero beyond ``k_max``."""
        idx = np.floor(np.asarray(k_mag, dtype=np.float64) + 0.5).astype(np.intp)
        out = np.zeros(idx.shape)
        ok = idx <= self.k_max
        out[ok] = self.bins[idx[ok]]
        return out

    @classmethod
    def from_function(cls, func, k_max: int) -> "EnergySpectrum":
        k = np.arange(k_max + 1, dtype=np.float64)
        return cls(np.asarray(func(k), dtype=np.float64))


def spectrum_k_max(N: int, M: int) -> int:
    return math.ceil(math.hypot(N / 2, M / 2))


def _check_even(f: ScalarField):
    if f.N % 2 or f.M % 2:
        raise InputDataError(f"DFT needs even sample counts, got N={f.N}, M={f.M}")


def dft2(f: ScalarField, method: str = "fft") -> SpectralField:
    """Forward transform with 1/(NM) normalization.

    Endpoint-inclusive samples are treated as one period of length
    ``N * dx`` (slightly longer than the domain).

    ``method="direct"`` evaluates the double sum with explicit twiddle
    matrices built from the physical coordinates; it is the reference the
    FFT path is checked against.
    """
    _check_even(f)
    N, M = f.N, f.M
    if method == "fft":
        c = np.fft.fft2(f.values) / (N * M)
    elif method == "direct":
        px, py = N * f.dx, M * f.dy
        k_n = mode_indices(N) * (TWO_PI / px)
        k_m = mode_indices(M) * (TWO_PI / py)
        wx = np.exp(-1j * np.outer(k_n, f.x))
        wy = np.exp(-1j * np.outer(k_m, f.y))
        c = (wy @ f.values @ wx.T) / (N * M)
    else:
        raise ValueError(f"unknown DFT method {method!r}")
    return SpectralField(c, f.L_x, f.L_y, f.sampling, hermitian=True)


def _synthesis_matrix(k, coords, real):
    e = np.exp(1j * np.outer(coords, k))
    if real:
        # Nyquist term as a cosine: same values on the sample grid, and the
        # real interpolant between nodes.
        nyq = k.size // 2
        e[:, nyq] = np.cos(coords * k[nyq])
    return e


def evaluate(spec: SpectralField, x, y, real: bool = True) -> np.ndarray:
    """Sum the Fourier series on the tensor grid ``x`` (P,) by ``y`` (Q,).

    Coordinates are in the unscaled frame of the spectrum.  Returns a
    (Q, P) array, real when ``real`` is set (after checking the imaginary
    residue against :data:`REAL_TOL`), complex otherwise.
    """
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    y = np.atleast_1d(np.asarray(y, dtype=np.float64))
    ex = _synthesis_matrix(spec.k_n, x, real)
    ey = _synthesis_matrix(spec.k_m, y, real)
    out = ey @ spec.coeffs @ ex.T
    if not real:
        return out
    re_max = float(np.max(np.abs(out.real))) if out.size else 0.0
    im_max = float(np.max(np.abs(out.imag))) if out.size else 0.0
    if im_max > REAL_TOL * re_max and im_max > 0.0:
        raise InvariantViolation(
            f"spectrum is not Hermitian: imaginary residue {im_max:.3e} vs real part {re_max:.3e}"
        )
    return np.ascontiguousarray(out.real)


def plot_axes(length: float, count: int) -> np.ndarray:
    """``count`` points spanning ``[0, length]`` inclusive."""
    if count < 1:
        raise InputDataError("plot resolution must be at least 1")
    return np.linspace(0.0, length, count)


def idft2(spec: SpectralField, n_plot: int | None = None, m_plot: int | None = None) -> ScalarField:
    """Real physical field from a Hermitian spectrum.

    Without a plot resolution the series is evaluated on its own sample
    grid (the inverse of :func:`dft2`).  With ``n_plot``/``m_plot`` it is
    evaluated on an endpoint-inclusive grid over the domain.  Derived
    fields carry the scaled domain lengths when the spectrum was scaled.
    """
    lx, ly = spec.display_lengths
    if n_plot is None and m_plot is None:
        x = np.arange(spec.N) * (spec.period_x / spec.N)
        y = np.arange(spec.M) * (spec.period_y / spec.M)
        values = evaluate(spec, x, y)
        return ScalarField(values, lx, ly, spec.sampling)
    n_plot = spec.N if n_plot is None else n_plot
    m_plot = spec.M if m_plot is None else m_plot
    values = evaluate(spec, plot_axes(spec.L_x, n_plot), plot_axes(spec.L_y, m_plot))
    return ScalarField(values, lx, ly, "endpoint")


def ring_index(spec_or_shape) -> np.ndarray:
    """Nearest-integer ring of every coefficient: |k|-0.5 <= r < |k|+0.5."""
    if isinstance(spec_or_shape, SpectralField):
        r = spec_or_shape.mode_radius()
    else:
        N, M = spec_or_shape
        r = np.hypot(mode_indices(N)[None, :], mode_indices(M)[:, None])
    return np.floor(r + 0.5).astype(np.intp)


def ring_mode_counts(N: int, M: int) -> np.ndarray:
    return np.bincount(ring_index((N, M)).ravel(), minlength=spectrum_k_max(N, M) + 1)


def energy_spectrum(*specs: SpectralField) -> EnergySpectrum:
    """Plain ring sums of squared coefficient moduli.

    Several spectra of the same shape (e.g. both components of a vector
    field) are summed mode by mode first.
    """
    if not specs:
        raise ValueError("need at least one spectrum")
    shape = specs[0].coeffs.shape
    if any(s.coeffs.shape != shape for s in specs):
        raise InputDataError("spectra must share a grid to be combined")
    power = sum(np.abs(s.coeffs) ** 2 for s in specs)
    N, M = specs[0].N, specs[0].M
    bins = np.bincount(
        ring_index(specs[0]).ravel(), weights=power.ravel(), minlength=spectrum_k_max(N, M) + 1
    )
    return EnergySpectrum(bins)


def scale_wavenumbers(spec: SpectralField, L_x: float, L_y: float) -> SpectralField:
    """Relabel the domain as ``L_x`` by ``L_y`` (s = 2 pi / L_x, r = 2 pi / L_y).

    Coefficients are untouched; only derived coordinates change.  Scaling to
    the spectrum's own lengths undoes any previous scaling.
    """
    if not (L_x > 0 and L_y > 0):
        raise InputDataError("scaled domain lengths must be positive")
    target = None if (L_x, L_y) == (spec.L_x, spec.L_y) else (float(L_x), float(L_y))
    return replace(spec, scaled_lengths=target)
