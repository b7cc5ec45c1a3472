import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from roughsynth import _backend, _kernels_py

compiled = pytest.importorskip("roughsynth._kernels", reason="compiled extension not built")


def test_compiled_backend_selected_by_default():
    if os.environ.get("ROUGHSYNTH_PURE_PYTHON", "") in ("", "0"):
        assert _backend.BACKEND == "compiled"


def test_env_forces_python_backend():
    code = "import roughsynth; print(roughsynth.BACKEND)"
    env = dict(os.environ, ROUGHSYNTH_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 30), st.integers(1, 30), st.integers(0, 10**6))
def test_hue_decode_agrees(h, w, seed):
    px = np.random.default_rng(seed).integers(0, 256, (h, w, 3), dtype=np.uint8)
    assert np.array_equal(compiled.hue_decode(px), _kernels_py.hue_decode(px))


def test_hue_decode_ties_and_greys():
    px = np.array([[[255, 255, 0], [0, 255, 255], [255, 0, 255], [7, 7, 7], [0, 0, 0]]], dtype=np.uint8)
    assert np.array_equal(compiled.hue_decode(px), _kernels_py.hue_decode(px))


@settings(max_examples=50, deadline=None)
@given(st.integers(4, 25), st.integers(4, 25), st.integers(0, 10**6))
def test_catmull_rom_agrees(n, m, seed):
    rng = np.random.default_rng(seed)
    vals = rng.standard_normal((m, n))
    px = np.r_[rng.uniform(0, n - 1, 200), 0.0, n - 1.0, 3.0]
    py = np.r_[rng.uniform(0, m - 1, 200), m - 1.0, 0.0, 2.0]
    a = compiled.catmull_rom_points(vals, px, py)
    b = _kernels_py.catmull_rom_points(vals, px, py)
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-13)
