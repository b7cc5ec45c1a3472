"""Decode HSV-colormapped scan images into height fields.

A pixel's colour is reduced to its hue, the hue is mapped onto [0, 1) and
then stretched affinely over the user-supplied amplitude range.  The inverse
(``render_hsv``) paints a known surface onto the hue circle, which is how
test images are produced.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

import numpy as np
from PIL import Image, UnidentifiedImageError

from . import _backend
from .errors import ImageReadError, InputDataError
from .grid import AmplitudeRange, ScalarField

TWO_PI = 2.0 * math.pi

# Distinct hues representable with 8-bit channels at full saturation/value.
HUE_LEVELS = 6 * 255


@dataclass(frozen=True, eq=False)
class RgbImage:
    """Row-major RGB pixels, shape (height, width, 3), uint8."""

    pixels: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.pixels)
        if p.ndim != 3 or p.shape[2] != 3:
            raise InputDataError(f"expected an (H, W, 3) pixel array, got shape {p.shape}")
        if p.shape[0] == 0 or p.shape[1] == 0:
            raise InputDataError("image has zero width or height")
        if p.dtype != np.uint8:
            if np.any(p < 0) or np.any(p > 255) or np.any(p != np.round(p)):
                raise InputDataError("channel values must be integers in [0, 255]")
            p = p.astype(np.uint8)
        p = np.ascontiguousarray(p)
        p.setflags(write=False)
        object.__setattr__(self, "pixels", p)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


@dataclass(frozen=True, eq=False)
class ExtractedField:
    values: ScalarField
    range: AmplitudeRange


def load_image(path) -> RgbImage:
    """Read a PNG or binary PPM/PGM file without any resampling.

    Greyscale images are expanded to three identical channels (every pixel
    is then achromatic and decodes to hue 0).
    """
    path = Path(path)
    if not path.is_file():
        raise ImageReadError(f"unreadable image {path}: no such file")
    try:
        with Image.open(path) as im:
            fmt = im.format
            if fmt not in ("PNG", "PPM"):
                raise ImageReadError(f"unsupported image format {fmt!r} in {path}")
            im.load()
            if im.mode not in ("RGB", "RGBA", "P", "L", "LA"):
                raise ImageReadError(f"unsupported pixel mode {im.mode!r} in {path}")
            arr = np.asarray(im.convert("RGB"), dtype=np.uint8)
    except UnidentifiedImageError as exc:
        raise ImageReadError(f"unreadable image {path}: unrecognised format") from exc
    except (OSError, SyntaxError, ValueError) as exc:
        if isinstance(exc, ImageReadError):
            raise
        raise ImageReadError(f"unreadable image {path}: {exc}") from exc
    return RgbImage(arr)


def save_image(img: RgbImage, path) -> None:
    """Write PNG, or binary PPM for a ``.ppm`` suffix."""
    path = Path(path)
    fmt = "PPM" if path.suffix.lower() in (".ppm", ".pnm") else "PNG"
    Image.fromarray(np.asarray(img.pixels), mode="RGB").save(path, format=fmt)


def rgb_to_hue(r, g, b):
    """Hue in [-1, 5] from 8-bit channels; achromatic pixels give 0.

    Ties for the maximum are resolved red, then green, then blue.
    Accepts scalars or broadcastable arrays.
    """
    r = np.asarray(r, dtype=np.float64) / 255.0
    g = np.asarray(g, dtype=np.float64) / 255.0
    b = np.asarray(b, dtype=np.float64) / 255.0
    mx = np.maximum(np.maximum(r, g), b)
    d = mx - np.minimum(np.minimum(r, g), b)
    safe = np.where(d == 0.0, 1.0, d)
    h = np.where(
        r == mx,
        (g - b) / safe,
        np.where(g == mx, 2.0 + (b - r) / safe, 4.0 + (r - g) / safe),
    )
    h = np.where(d == 0.0, 0.0, h)
    return float(h) if h.ndim == 0 else h


def normalize_hue(h):
    """``mod1(h / 6)``, guaranteed to land in [0, 1)."""
    h = np.fmod(np.asarray(h, dtype=np.float64) / 6.0, 1.0)
    h = np.where(h < 0.0, h + 1.0, h)
    # -tiny + 1.0 rounds up to 1.0
    h = np.where(h >= 1.0, 0.0, h)
    return float(h) if h.ndim == 0 else h


def rescale_to_amplitude(h_norm, rng: AmplitudeRange):
    h_norm = np.asarray(h_norm, dtype=np.float64)
    out = rng.span * h_norm + rng.f_min
    return float(out) if out.ndim == 0 else out


class ColormapDecoder(Protocol):
    """Maps an (H, W, 3) uint8 pixel array to normalized values in [0, 1)."""

    def decode(self, pixels: np.ndarray) -> np.ndarray: ...


class HsvHueDecoder:
    """Inverse of a full-saturation hue-circle colormap (red = 0)."""

    name = "hsv"

    def decode(self, pixels):
        return _backend.hue_decode(np.ascontiguousarray(pixels, dtype=np.uint8))


DECODERS: dict[str, ColormapDecoder] = {"hsv": HsvHueDecoder()}


def extract_field(
    img: RgbImage,
    rng: AmplitudeRange,
    L_x: float = TWO_PI,
    L_y: float = TWO_PI,
    decoder: ColormapDecoder | None = None,
) -> ExtractedField:
    """Per-pixel hue decode and rescale.

    Row index is y, column index is x; pixel (0, 0) is the origin and the
    last row/column lands on ``L_y`` / ``L_x`` (endpoint-inclusive grid).
    """
    decoder = decoder or DECODERS["hsv"]
    h_norm = decoder.decode(img.pixels)
    heights = rescale_to_amplitude(h_norm, rng)
    heights = np.clip(np.atleast_2d(heights), rng.f_min, rng.f_max)
    return ExtractedField(ScalarField(heights, L_x, L_y, "endpoint"), rng)


def hue_to_rgb(h_norm):
    """Full-saturation, full-value RGB (floats in [0, 1]) for hue in [0, 1)."""
    h6 = np.mod(np.asarray(h_norm, dtype=np.float64), 1.0) * 6.0
    sector = np.minimum(np.floor(h6).astype(int), 5)
    f = h6 - sector
    one = np.ones_like(f)
    zero = np.zeros_like(f)
    table = [
        (one, f, zero),
        (1.0 - f, one, zero),
        (zero, one, f),
        (zero, 1.0 - f, one),
        (f, zero, one),
        (one, zero, 1.0 - f),
    ]
    rgb = np.zeros(f.shape + (3,))
    for s, (r, g, b) in enumerate(table):
        sel = sector == s
        rgb[sel, 0] = r[sel]
        rgb[sel, 1] = g[sel]
        rgb[sel, 2] = b[sel]
    return rgb


def render_hsv(values, rng: AmplitudeRange) -> RgbImage:
    """Paint heights onto the hue circle, the forward of :func:`extract_field`.

    Values are clipped into the range and kept below the last hue before the
    circle wraps back to red, so ``f_max`` does not decode as ``f_min``.
    """
    v = np.atleast_2d(np.asarray(values, dtype=np.float64))
    h = np.clip((v - rng.f_min) / rng.span, 0.0, (HUE_LEVELS - 1) / HUE_LEVELS)
    rgb = np.rint(hue_to_rgb(h) * 255.0).astype(np.uint8)
    return RgbImage(rgb)


def render_function(func, width: int, height: int, rng: AmplitudeRange,
                    L_x: float = TWO_PI, L_y: float = TWO_PI) -> RgbImage:
    """Render ``func(x, y)`` on the same endpoint-inclusive pixel grid that
    :func:`extract_field` assigns back."""
    x = np.linspace(0.0, L_x, width)
    y = np.linspace(0.0, L_y, height)
    X, Y = np.meshgrid(x, y)
    return render_hsv(func(X, Y), rng)
