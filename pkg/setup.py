"""Build script.

The compiled kernel core (``cryosqueeze._core_cy``) is optional: it needs
Cython, a C compiler and scipy (for the BLAS/LAPACK cimports).  When any of
those is missing the package installs with the pure-NumPy kernels only and
``cryosqueeze.kernels`` falls back at import time.
"""
from setuptools import setup

ext_modules = []
try:
    import numpy as np
    import scipy  # noqa: F401  (cython_blas/cython_lapack are cimported by the .pyx)
    from Cython.Build import cythonize

    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "cryosqueeze._core_cy",
                ["src/cryosqueeze/_core_cy.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
