"""Uniform-grid scalar fields, Catmull-Rom interpolation and resampling.

Arrays are stored image-style: ``values[j, i]`` is the height at
``(x_i, y_j)``, so a field with N samples in x and M in y has shape (M, N).
Sample ``(0, 0)`` sits at the domain origin.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Literal

import numpy as np

from . import _backend
from .errors import DomainError, InputDataError

SamplingMode = Literal["periodic", "endpoint"]

# Bicubic needs a full 4x4 stencil.
MIN_SAMPLES = 4


@dataclass(frozen=True)
class AmplitudeRange:
    f_min: float
    f_max: float

    def __post_init__(self):
        if not (np.isfinite(self.f_min) and np.isfinite(self.f_max)):
            raise InputDataError("amplitude range must be finite")
        if self.f_max <= self.f_min:
            raise InputDataError(
                f"invalid amplitude range: f_max ({self.f_max}) must exceed f_min ({self.f_min})"
            )

    @property
    def span(self) -> float:
        return self.f_max - self.f_min


def grid_spacing(length: float, count: int, sampling: SamplingMode) -> float:
    """Node spacing: ``L/N`` for periodic samples, ``L/(N-1)`` when the
    endpoint is included."""
    if sampling == "periodic":
        return length / count
    if sampling == "endpoint":
        return length / (count - 1) if count > 1 else length
    raise InputDataError(f"unknown sampling mode {sampling!r}")


def grid_coordinates(length: float, count: int, sampling: SamplingMode) -> np.ndarray:
    return np.arange(count) * grid_spacing(length, count, sampling)


@dataclass(frozen=True, eq=False)
class ScalarField:
    """Real heights on a uniform rectangular grid over ``[0, L_x] x [0, L_y]``."""

    values: np.ndarray
    L_x: float
    L_y: float
    sampling: SamplingMode = "endpoint"

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64, copy=True)
        if v.ndim != 2 or v.size == 0:
            raise InputDataError(f"field values must be a non-empty 2D array, got shape {v.shape}")
        if not (self.L_x > 0 and self.L_y > 0):
            raise InputDataError("domain lengths must be positive")
        if self.sampling not in ("periodic", "endpoint"):
            raise InputDataError(f"unknown sampling mode {self.sampling!r}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def N(self) -> int:
        return self.values.shape[1]

    @property
    def M(self) -> int:
        return self.values.shape[0]

    @property
    def dx(self) -> float:
        return grid_spacing(self.L_x, self.N, self.sampling)

    @property
    def dy(self) -> float:
        return grid_spacing(self.L_y, self.M, self.sampling)

    @property
    def x(self) -> np.ndarray:
        return grid_coordinates(self.L_x, self.N, self.sampling)

    @property
    def y(self) -> np.ndarray:
        return grid_coordinates(self.L_y, self.M, self.sampling)

    def with_values(self, values) -> "ScalarField":
        return replace(self, values=values)

    def __repr__(self):
        return (
            f"ScalarField(N={self.N}, M={self.M}, L_x={self.L_x:g}, L_y={self.L_y:g}, "
            f"sampling={self.sampling!r})"
        )


@dataclass(frozen=True)
class SampleSpec:
    N: int
    M: int
    periodic: bool = True

    def __post_init__(self):
        for name, n in (("N", self.N), ("M", self.M)):
            if int(n) != n:
                raise InputDataError(f"{name} must be an integer")
            if n < MIN_SAMPLES:
                raise InputDataError(f"{name}={n} is below the minimum of {MIN_SAMPLES} samples")
            if n % 2:
                raise InputDataError(f"{name}={n} must be even")

    @property
    def sampling(self) -> SamplingMode:
        return "periodic" if self.periodic else "endpoint"


def _check_stencil(f: ScalarField):
    if f.N < MIN_SAMPLES or f.M < MIN_SAMPLES:
        raise InputDataError(
            f"bicubic interpolation needs at least {MIN_SAMPLES}x{MIN_SAMPLES} nodes, "
            f"field has {f.N}x{f.M}"
        )


def _fractional_index(coord, spacing, count, length, axis):
    # Periodic fields have no node at x = L; clamping there is what the
    # replicated-edge stencil does anyway.
    tol = 1e-12 * length
    if np.any(coord < -tol) or np.any(coord > length + tol):
        raise DomainError(f"{axis} coordinate outside [0, {length:g}]")
    p = np.clip(np.asarray(coord, dtype=np.float64) / spacing, 0.0, count - 1.0)
    # snap values within rounding of a node so node queries are exact
    r = np.rint(p)
    return np.where(np.abs(p - r) < 1e-9, r, p)


def interpolate(f: ScalarField, x, y):
    """Catmull-Rom bicubic value(s) of ``f`` at ``(x, y)``.

    ``x`` and ``y`` broadcast against each other; scalars give a float.
    Grid nodes are reproduced exactly. Out-of-domain points raise
    :class:`DomainError`.
    """
    _check_stencil(f)
    x, y = np.broadcast_arrays(np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64))
    px = _fractional_index(x.ravel(), f.dx, f.N, f.L_x, "x")
    py = _fractional_index(y.ravel(), f.dy, f.M, f.L_y, "y")
    out = _backend.catmull_rom_points(
        np.ascontiguousarray(f.values), np.ascontiguousarray(px), np.ascontiguousarray(py)
    )
    if x.ndim == 0:
        return float(out[0])
    return out.reshape(x.shape)


def resample(f: ScalarField, spec: SampleSpec) -> ScalarField:
    """Sample the interpolant of ``f`` on an N x M grid over the same domain."""
    _check_stencil(f)
    xs = grid_coordinates(f.L_x, spec.N, spec.sampling)
    ys = grid_coordinates(f.L_y, spec.M, spec.sampling)
    X, Y = np.meshgrid(xs, ys)
    return ScalarField(interpolate(f, X, Y), f.L_x, f.L_y, spec.sampling)


def rescale_amplitude(f: ScalarField, rng: AmplitudeRange) -> ScalarField:
    """Affine map sending the field's (min, max) onto ``(rng.f_min, rng.f_max)``."""
    lo = float(f.values.min())
    hi = float(f.values.max())
    if not hi > lo:
        raise InputDataError("cannot rescale a constant field (zero dynamic range)")
    unit = (f.values - lo) / (hi - lo)
    # written so the endpoints land exactly on f_min / f_max
    return f.with_values(unit * rng.f_max + (1.0 - unit) * rng.f_min)
