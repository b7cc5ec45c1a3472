import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from conftest import test_surface
from roughsynth.diagnostics import (
    compare_spectra,
    correlation_x,
    correlation_y,
    extraction_error,
    fs_error,
    reference_norm,
)
from roughsynth.errors import InputDataError
from roughsynth.grid import ScalarField
from roughsynth.rogallo import build_variant, synthesize_vector
from roughsynth.spectral import EnergySpectrum

TWO_PI = 2 * math.pi


def surface(N=32, M=32):
    x = np.linspace(0, TWO_PI, N)
    y = np.linspace(0, TWO_PI, M)
    X, Y = np.meshgrid(x, y)
    return ScalarField(test_surface(X, Y), TWO_PI, TWO_PI)


def test_exact_samples_give_zero_errors():
    f = surface()
    assert extraction_error(f, test_surface) == 0.0
    assert fs_error(f, f, reference_norm(f, test_surface)) == 0.0


def test_error_scales():
    f = surface()
    g = f.with_values(f.values + 0.02)
    assert extraction_error(g, test_surface) == pytest.approx(0.01, rel=1e-3)
    with pytest.raises(InputDataError):
        extraction_error(f, lambda x, y: 0 * x)
    with pytest.raises(InputDataError):
        fs_error(surface(8, 8), f, 1.0)


def test_curve_starts_at_one_and_x_constant_field():
    rng = np.random.default_rng(0)
    f = ScalarField(rng.standard_normal((10, 12)), 1, 1)
    assert correlation_x(f).values[0] == 1.0
    assert correlation_y(f).values[0] == 1.0
    g = ScalarField(np.tile(rng.standard_normal((10, 1)), (1, 12)), 1, 1)
    np.testing.assert_allclose(correlation_x(g).values, 1.0, rtol=0, atol=1e-14)


def test_y_ridged_plateau():
    g = ScalarField(np.tile(np.sin(8 * np.linspace(0, TWO_PI, 40)), (30, 1)), TWO_PI, TWO_PI)
    np.testing.assert_allclose(correlation_y(g).values, 1.0, atol=1e-14)


def test_matches_loop_oracle():
    vals = np.random.default_rng(2).standard_normal((5, 7))
    f = ScalarField(vals, 1, 1)
    np.testing.assert_allclose(correlation_x(f).values, oracle.naive_circular_correlation(vals.tolist()), atol=1e-13)
    np.testing.assert_allclose(correlation_y(f).values, oracle.naive_circular_correlation(vals.T.tolist()), atol=1e-13)


def test_half_curve_and_separations():
    f = ScalarField(np.random.default_rng(3).standard_normal((8, 10)), 9.0, 7.0)
    c = correlation_x(f)
    assert c.separations[1] == pytest.approx(1.0)
    h = c.half()
    assert h.values.size == 6 and h.separations[-1] == pytest.approx(5.0)


def test_constant_field_rejected():
    with pytest.raises(InputDataError, match="constant"):
        correlation_x(ScalarField(np.full((4, 4), 2.0), 1, 1))


def test_white_noise_band_monte_carlo():
    # oracle: exceedance probability of the 5/sqrt(NM) band is below 1%
    N = M = 32
    assert oracle.white_noise_exceedance(200, N, M) <= 0.01
    rng = np.random.default_rng(99)
    band = 5 / math.sqrt(N * M)
    bad = 0
    for _ in range(200):
        c = correlation_x(ScalarField(rng.standard_normal((M, N)), 1, 1))
        bad += bool(np.any(np.abs(c.values[1:]) >= band))
    assert bad / 200 <= 0.01


def test_compare_self_and_filtered():
    es = EnergySpectrum.from_function(lambda k: k * np.exp(-k / 8), 46)
    t = compare_spectra([("ref", es), ("ref again", es)])
    assert np.all(t.log_ratios == 0)
    vort = build_variant(synthesize_vector(es, 64, 64, 1), "vorticity").spectrum
    t = compare_spectra([("ref", es), ("vorticity", vort)])
    assert np.all(np.isneginf(t.log_ratios[1, 32:]))
    with pytest.raises(InputDataError):
        compare_spectra([("a", es), ("b", EnergySpectrum(np.ones(5)))])


def test_combined_vs_reference_within_log_band():
    from roughsynth.rogallo import combined_spectrum

    es = EnergySpectrum.from_function(lambda k: k * np.exp(-k / 8), 46)
    mean = np.mean([combined_spectrum(synthesize_vector(es, 64, 64, s)).bins for s in range(50)], axis=0)
    t = compare_spectra([("ref", es), ("mean", EnergySpectrum(mean))])
    assert np.max(np.abs(t.log_ratios[1, 1:32])) < 0.15


@settings(max_examples=40, deadline=None)
@given(
    st.integers(4, 16), st.integers(4, 16), st.integers(0, 10**6),
    st.floats(0.1, 10), st.floats(-50, 50),
)
def test_affine_invariance(n, m, seed, a, b):
    vals = np.random.default_rng(seed).standard_normal((m, n))
    f = ScalarField(vals, 1, 1)
    g = f.with_values(a * vals + b)
    np.testing.assert_allclose(correlation_x(g).values, correlation_x(f).values, atol=1e-12)
    np.testing.assert_allclose(correlation_y(g).values, correlation_y(f).values, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 16), st.integers(2, 16), st.integers(0, 10**6))
def test_transpose_duality_and_symmetry(n, m, seed):
    vals = np.random.default_rng(seed).standard_normal((m, n))
    f = ScalarField(vals, 2.0, 3.0)
    ft = ScalarField(vals.T, 3.0, 2.0)
    cy = correlation_y(f)
    cx_t = correlation_x(ft)
    assert np.array_equal(cy.values, cx_t.values)
    assert np.array_equal(cy.separations, cx_t.separations)
    v = correlation_x(f).values
    assert np.array_equal(v[1:], v[1:][::-1])
