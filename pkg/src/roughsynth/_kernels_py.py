"""Numpy implementations of the kernels in ``_kernels.pyx``.

Same arithmetic order as the compiled version; used when the extension is
not built or when ``ROUGHSYNTH_PURE_PYTHON`` is set.
"""
import numpy as np


def hue_decode(rgb):
    rgb = np.asarray(rgb, dtype=np.uint8)
    r = rgb[..., 0] / 255.0
    g = rgb[..., 1] / 255.0
    b = rgb[..., 2] / 255.0
    mx = np.maximum(np.maximum(r, g), b)
    mn = np.minimum(np.minimum(r, g), b)
    d = mx - mn
    chromatic = d != 0.0
    safe = np.where(chromatic, d, 1.0)
    h = np.where(
        r == mx,
        (g - b) / safe,
        np.where(g == mx, 2.0 + (b - r) / safe, 4.0 + (r - g) / safe),
    )
    h = np.where(chromatic, h, 0.0)
    h = np.fmod(h / 6.0, 1.0)
    h = np.where(h < 0.0, h + 1.0, h)
    return np.where(h >= 1.0, 0.0, h)


def _weights(t):
    return (
        ((-t + 2.0) * t - 1.0) * t * 0.5,
        ((3.0 * t - 5.0) * t * t + 2.0) * 0.5,
        ((-3.0 * t + 4.0) * t + 1.0) * t * 0.5,
        (t - 1.0) * t * t * 0.5,
    )


def catmull_rom_points(values, px, py):
    values = np.asarray(values, dtype=np.float64)
    px = np.asarray(px, dtype=np.float64)
    py = np.asarray(py, dtype=np.float64)
    nrows, ncols = values.shape
    ix = np.minimum(np.floor(px).astype(np.intp), ncols - 2)
    iy = np.minimum(np.floor(py).astype(np.intp), nrows - 2)
    wx = _weights(px - ix)
    wy = _weights(py - iy)
    cols = [np.clip(ix - 1 + c, 0, ncols - 1) for c in range(4)]
    acc = np.zeros(px.shape, dtype=np.float64)
    for a in range(4):
        rows = np.clip(iy - 1 + a, 0, nrows - 1)
        row = wx[0] * values[rows, cols[0]]
        row = row + wx[1] * values[rows, cols[1]]
        row = row + wx[2] * values[rows, cols[2]]
        row = row + wx[3] * values[rows, cols[3]]
        acc = acc + wy[a] * row
    return acc
