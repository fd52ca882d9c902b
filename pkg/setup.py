"""Build shim: compiles the assignment-scan kernel when Cython is available.

The package works without the extension; gamesmith._kernels falls back to
the pure-Python scan at import time.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/gamesmith/_kernels/_scan_cy.pyx"],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
