"""Build script for the optional compiled kernel extension.

The package is fully functional without the extension (a numpy fallback
is selected at import time); set GHZLBC_PURE_PYTHON=1 to skip building it.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("GHZLBC_PURE_PYTHON"):
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext = Extension(
            "ghzlbc._kernels_cy",
            sources=["src/ghzlbc/_kernels_cy.pyx"],
            include_dirs=[numpy.get_include()],
            define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        )
        ext_modules = cythonize([ext], language_level=3)

setup(ext_modules=ext_modules)
