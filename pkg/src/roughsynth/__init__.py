"""Synthetic surface-roughness fields from a single colormapped scan.

Pipeline: decode the scan's hue into heights (:mod:`.colormap`), resample
with bicubic interpolation (:mod:`.grid`), take the 2D DFT and its radial
energy spectrum (:mod:`.spectral`), draw random divergence-free vector
fields with that spectrum (:mod:`.rogallo`) and compare the results
(:mod:`.diagnostics`).
"""
from ._backend import BACKEND
from .colormap import (
    ExtractedField,
    HsvHueDecoder,
    RgbImage,
    extract_field,
    load_image,
    normalize_hue,
    render_function,
    render_hsv,
    rescale_to_amplitude,
    rgb_to_hue,
)
from .diagnostics import (
    CorrelationCurve,
    compare_spectra,
    correlation_x,
    correlation_y,
    extraction_error,
    fs_error,
)
from .grid import AmplitudeRange, SampleSpec, ScalarField, interpolate, resample, rescale_amplitude
from .rogallo import (
    VARIANTS,
    AlphaGenerator,
    FilterSpec,
    RogalloField,
    build_variant,
    component_field,
    draw_alpha,
    enstrophy_field,
    magnitude_field,
    synthesize_vector,
    top_hat_filter,
    vorticity_field,
)
from .spectral import (
    EnergySpectrum,
    SpectralField,
    dft2,
    energy_spectrum,
    evaluate,
    idft2,
    scale_wavenumbers,
)

__version__ = "0.1.0"
