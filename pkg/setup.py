"""Builds the optional compiled kernel extension.

The package is fully functional without it (a numpy fallback is selected at
import time), so any failure to cythonize or compile is non-fatal.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/motifkit/_kernels/_fast.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"motifkit: skipping compiled kernels ({exc})")

setup(ext_modules=ext_modules)
