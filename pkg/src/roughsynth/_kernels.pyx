# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled per-pixel / per-point kernels.

Arithmetic is kept in the same order as ``_kernels_py`` so both backends
agree to the last bit on the usual x86-64 builds (no FMA contraction).
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport floor, fmod

cnp.import_array()


def hue_decode(const unsigned char[:, :, ::1] rgb):
    """Normalized hue in [0, 1) for every pixel of an (H, W, 3) uint8 image."""
    cdef Py_ssize_t rows = rgb.shape[0], cols = rgb.shape[1]
    cdef Py_ssize_t i, j
    cdef double r, g, b, mx, mn, d, h
    out = np.empty((rows, cols), dtype=np.float64)
    cdef double[:, ::1] o = out
    with nogil:
        for i in range(rows):
            for j in range(cols):
                r = rgb[i, j, 0] / 255.0
                g = rgb[i, j, 1] / 255.0
                b = rgb[i, j, 2] / 255.0
                mx = r
                if g > mx:
                    mx = g
                if b > mx:
                    mx = b
                mn = r
                if g < mn:
                    mn = g
                if b < mn:
                    mn = b
                d = mx - mn
                if d == 0.0:
                    h = 0.0
                elif r == mx:
                    h = (g - b) / d
                elif g == mx:
                    h = 2.0 + (b - r) / d
                else:
                    h = 4.0 + (r - g) / d
                h = h / 6.0
                h = fmod(h, 1.0)
                if h < 0.0:
                    h = h + 1.0
                if h >= 1.0:
                    h = 0.0
                o[i, j] = h
    return out


cdef inline void _weights(double t, double* w) noexcept nogil:
    w[0] = ((-t + 2.0) * t - 1.0) * t * 0.5
    w[1] = ((3.0 * t - 5.0) * t * t + 2.0) * 0.5
    w[2] = ((-3.0 * t + 4.0) * t + 1.0) * t * 0.5
    w[3] = (t - 1.0) * t * t * 0.5


cdef inline Py_ssize_t _clamp(Py_ssize_t i, Py_ssize_t n) noexcept nogil:
    if i < 0:
        return 0
    if i > n - 1:
        return n - 1
    return i


def catmull_rom_points(const double[:, ::1] values, const double[::1] px,
                       const double[::1] py):
    """Catmull-Rom bicubic samples at fractional (column, row) indices.

    Stencil entries falling outside the grid replicate the edge row/column.
    Callers guarantee ``0 <= px <= ncols - 1`` and ``0 <= py <= nrows - 1``.
    """
    cdef Py_ssize_t nrows = values.shape[0], ncols = values.shape[1]
    cdef Py_ssize_t npts = px.shape[0]
    cdef Py_ssize_t p, a, c, ix, iy, iy_a
    cdef double tx, ty, row, acc
    cdef double wx[4]
    cdef double wy[4]
    cdef Py_ssize_t cols[4]
    out = np.empty(npts, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        for p in range(npts):
            ix = <Py_ssize_t>floor(px[p])
            if ix > ncols - 2:
                ix = ncols - 2
            iy = <Py_ssize_t>floor(py[p])
            if iy > nrows - 2:
                iy = nrows - 2
            tx = px[p] - ix
            ty = py[p] - iy
            _weights(tx, wx)
            _weights(ty, wy)
            for c in range(4):
                cols[c] = _clamp(ix - 1 + c, ncols)
            acc = 0.0
            for a in range(4):
                iy_a = _clamp(iy - 1 + a, nrows)
                row = wx[0] * values[iy_a, cols[0]]
                row = row + wx[1] * values[iy_a, cols[1]]
                row = row + wx[2] * values[iy_a, cols[2]]
                row = row + wx[3] * values[iy_a, cols[3]]
                acc = acc + wy[a] * row
            o[p] = acc
    return out
