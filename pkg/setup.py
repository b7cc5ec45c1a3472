"""Build the optional compiled kernels.

The package works without them (numpy fallback); set ROUGHSYNTH_NO_EXT=1 to
skip compilation entirely.
"""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("ROUGHSYNTH_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "roughsynth._kernels",
                    ["src/roughsynth/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
