"""Kernel backend selection.

The compiled extension is used when importable; setting the environment
variable ``ROUGHSYNTH_PURE_PYTHON=1`` forces the numpy fallback.
"""
import os

from . import _kernels_py

if os.environ.get("ROUGHSYNTH_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

hue_decode = _impl.hue_decode
catmull_rom_points = _impl.catmull_rom_points

__all__ = ["BACKEND", "hue_decode", "catmull_rom_points"]
