"""Build script: compiles the optional Cython Neumann kernel.

The package works without the extension (a NumPy fallback is selected at
import time), so a failed compile is downgraded to a warning.
"""

import warnings

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "riptsim._kernels._neumann",
                ["src/riptsim/_kernels/_neumann.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level="3",
    )
except ImportError as exc:
    warnings.warn(f"Cython unavailable ({exc}); building without compiled kernel")

setup(ext_modules=ext_modules)
