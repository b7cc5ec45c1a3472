"""Random divergence-free spectral vector fields with a prescribed energy
spectrum (2D Rogallo construction) and the scalar roughness variants built
from them.

Every mode with |k| > 0 gets an independent amplitude

    alpha = sqrt(E(|k|) / (pi |k|)) * exp(i theta) * cos(phi),
    theta ~ U[-pi, pi),  phi ~ U[0, 2 pi),

and the vector coefficient (alpha k_m / |k|, -alpha k_n / |k|), which is
orthogonal to the wave vector.  Only half of the spectral plane is drawn;
the other half holds complex conjugates so both components are real in
physical space.  Wavenumbers are integer mode numbers (a 2 pi domain);
``spectral.scale_wavenumbers`` relabels the domain afterwards.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import InputDataError
from .grid import AmplitudeRange, SampleSpec, ScalarField, rescale_amplitude
from .spectral import (
    TWO_PI,
    EnergySpectrum,
    SpectralField,
    dft2,
    energy_spectrum,
    idft2,
    ring_index,
    scale_wavenumbers,
    spectrum_k_max,
)

VARIANTS = ("component-x", "component-y", "magnitude", "vorticity", "enstrophy")
DEFAULT_CUTOFF = 32

# alpha / |k| is rounded to this many significand bits so that products with
# integer wavenumbers below 2**(53 - 40) are exact; k . f is then exactly 0.
_ALPHA_BITS = 40


class AlphaGenerator:
    """Seeded source of Rogallo amplitudes for one energy spectrum."""

    def __init__(self, spectrum: EnergySpectrum, seed: int):
        self.spectrum = spectrum
        self.seed = seed
        self.rng = np.random.default_rng(seed)

    def angles(self, count: int) -> tuple[np.ndarray, np.ndarray]:
        """``count`` (theta, phi) pairs, drawn pairwise in order."""
        u = self.rng.random((count, 2))
        theta = -math.pi + TWO_PI * u[:, 0]
        phi = TWO_PI * u[:, 1]
        return theta, phi

    def amplitude(self, k_mag, theta, phi) -> np.ndarray:
        k_mag = np.asarray(k_mag, dtype=np.float64)
        energy = self.spectrum.at(k_mag)
        return np.sqrt(energy / (math.pi * k_mag)) * np.exp(1j * theta) * np.cos(phi)


def draw_alpha(gen: AlphaGenerator, k_mag: float) -> complex:
    if not k_mag > 0:
        raise InputDataError("alpha is singular at |k| = 0")
    theta, phi = gen.angles(1)
    return complex(gen.amplitude(k_mag, theta, phi)[0])


@dataclass(frozen=True, eq=False)
class RogalloField:
    comp_n: SpectralField
    comp_m: SpectralField
    seed: int | None = None


@dataclass(frozen=True)
class FilterSpec:
    cutoff: int = DEFAULT_CUTOFF

    def __post_init__(self):
        if int(self.cutoff) != self.cutoff or self.cutoff < 1:
            raise InputDataError(f"filter cutoff must be an integer >= 1, got {self.cutoff}")


def half_plane_modes(N: int, M: int) -> tuple[np.ndarray, np.ndarray]:
    """Independent modes in draw order: n = 1..N/2-1 over all non-Nyquist m
    (row-major, n outer), followed by n = 0, m = 1..M/2-1."""
    ms = np.arange(-M // 2 + 1, M // 2)
    ns = np.arange(1, N // 2)
    n_grid, m_grid = np.meshgrid(ns, ms, indexing="ij")
    n = np.concatenate([n_grid.ravel(), np.zeros(M // 2 - 1, dtype=int)])
    m = np.concatenate([m_grid.ravel(), np.arange(1, M // 2)])
    return n, m


def _trim(x: np.ndarray) -> np.ndarray:
    mant, expo = np.frexp(x)
    return np.ldexp(np.rint(mant * 2.0**_ALPHA_BITS), expo - _ALPHA_BITS)


def synthesize_vector(spectrum: EnergySpectrum, N: int, M: int, seed: int) -> RogalloField:
    """One seeded realization on an N x M spectral grid.

    The mean mode and the Nyquist lines (n = N/2, m = M/2) are left at zero:
    a Nyquist mode is its own mirror, so it cannot be both real and
    orthogonal to its wave vector.
    """
    SampleSpec(N, M)
    need = spectrum_k_max(N, M)
    if spectrum.k_max < need:
        raise InputDataError(
            f"spectrum covers |k| <= {spectrum.k_max}, grid {N}x{M} needs {need}"
        )
    gen = AlphaGenerator(spectrum, seed)
    n, m = half_plane_modes(N, M)
    k_mag = np.hypot(n, m)
    theta, phi = gen.angles(n.size)
    a = gen.amplitude(k_mag, theta, phi) / k_mag
    a = _trim(a.real) + 1j * _trim(a.imag)

    cn = np.zeros((M, N), dtype=np.complex128)
    cm = np.zeros((M, N), dtype=np.complex128)
    row, col = m % M, n % N
    mrow, mcol = (-m) % M, (-n) % N
    vn = a * m
    vm = -(a * n)
    cn[row, col] = vn
    cm[row, col] = vm
    cn[mrow, mcol] = np.conj(vn)
    cm[mrow, mcol] = np.conj(vm)
    return RogalloField(
        SpectralField(cn, hermitian=True),
        SpectralField(cm, hermitian=True),
        seed,
    )


def divergence(rf: RogalloField) -> np.ndarray:
    """``k_n f_n + k_m f_m`` per mode."""
    s = rf.comp_n
    return s.k_n[None, :] * rf.comp_n.coeffs + s.k_m[:, None] * rf.comp_m.coeffs


def combined_spectrum(rf: RogalloField) -> EnergySpectrum:
    return energy_spectrum(rf.comp_n, rf.comp_m)


def component_field(rf: RogalloField, axis: Literal["x", "y"]) -> SpectralField:
    if axis == "x":
        return rf.comp_n
    if axis == "y":
        return rf.comp_m
    raise InputDataError(f"axis must be 'x' or 'y', got {axis!r}")


def magnitude_field(rf: RogalloField, n_plot: int | None = None, m_plot: int | None = None) -> ScalarField:
    """Pointwise vector magnitude in physical space."""
    fx = idft2(rf.comp_n, n_plot, m_plot)
    fy = idft2(rf.comp_m, n_plot, m_plot)
    return fx.with_values(np.hypot(fx.values, fy.values))


def vorticity_field(rf: RogalloField) -> SpectralField:
    """Spectral curl ``i k_n f_m - i k_m f_n``."""
    s = rf.comp_n
    coeffs = 1j * s.k_n[None, :] * rf.comp_m.coeffs - 1j * s.k_m[:, None] * rf.comp_n.coeffs
    return s.with_coeffs(coeffs)


def top_hat_filter(spec: SpectralField, filt: FilterSpec = FilterSpec()) -> SpectralField:
    """Zero every coefficient whose ring ``|k|`` is at or beyond the cutoff.

    The ring is the same nearest-integer radius the energy spectrum bins
    on, so the filtered spectrum is exactly zero from the cutoff bin up.
    """
    keep = ring_index(spec) < filt.cutoff
    return spec.with_coeffs(np.where(keep, spec.coeffs, 0.0))


def enstrophy_field(vort: SpectralField, n_plot: int | None = None, m_plot: int | None = None) -> ScalarField:
    w = idft2(vort, n_plot, m_plot)
    return w.with_values(w.values**2)


def with_scaling(rf: RogalloField, L_x: float, L_y: float) -> RogalloField:
    return RogalloField(
        scale_wavenumbers(rf.comp_n, L_x, L_y), scale_wavenumbers(rf.comp_m, L_x, L_y), rf.seed
    )


@dataclass(frozen=True, eq=False)
class Variant:
    """A scalar roughness field derived from a Rogallo field."""

    name: str
    field: ScalarField
    spectrum: EnergySpectrum


def _sample_grid_spectrum(sampled: ScalarField, template: SpectralField) -> EnergySpectrum:
    # nonlinear variants: transform their values on the N x M sample grid
    spec = dft2(ScalarField(sampled.values, template.L_x, template.L_y, "periodic"))
    return energy_spectrum(spec)


def build_variant(
    rf: RogalloField,
    name: str,
    n_plot: int | None = None,
    m_plot: int | None = None,
    filt: FilterSpec = FilterSpec(),
    amplitude: AmplitudeRange | None = None,
) -> Variant:
    """Physical field (on the plot grid) and energy spectrum of one variant.

    The vorticity is top-hat filtered; the enstrophy is the square of the
    unfiltered vorticity.  The magnitude variant reports the combined vector
    spectrum.  With ``amplitude`` the physical field is affinely mapped onto
    that range.
    """
    if name == "component-x":
        spec = rf.comp_n
        field = idft2(spec, n_plot, m_plot)
        es = energy_spectrum(spec)
    elif name == "component-y":
        spec = rf.comp_m
        field = idft2(spec, n_plot, m_plot)
        es = energy_spectrum(spec)
    elif name == "magnitude":
        field = magnitude_field(rf, n_plot, m_plot)
        es = combined_spectrum(rf)
    elif name == "vorticity":
        spec = top_hat_filter(vorticity_field(rf), filt)
        field = idft2(spec, n_plot, m_plot)
        es = energy_spectrum(spec)
    elif name == "enstrophy":
        vort = vorticity_field(rf)
        field = enstrophy_field(vort, n_plot, m_plot)
        es = _sample_grid_spectrum(enstrophy_field(vort), vort)
    else:
        raise InputDataError(f"unknown variant {name!r}; choose from {', '.join(VARIANTS)}")
    if amplitude is not None:
        field = rescale_amplitude(field, amplitude)
    return Variant(name, field, es)
