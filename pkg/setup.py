"""Build script: compiles the optional kernel extension.

The package is fully functional without the extension (a pure-Python
fallback is selected at import time), so a failed compile only costs
speed.  Build with the pre-installed toolchain:

    pip install -e . --no-build-isolation
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "conefilt.kernels._ckernels",
                ["src/conefilt/kernels/_ckernels.pyx"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
