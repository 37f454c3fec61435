"""Builds the optional compiled kernel extension.

The package is fully functional without it (a pure-Python fallback is
selected at import time); set GADGETMINER_NO_EXT=1 to skip compilation.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("GADGETMINER_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("gadgetminer._kernels", ["src/gadgetminer/_kernels.pyx"])],
            language_level="3",
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
