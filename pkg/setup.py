import os

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover - build without Cython installs the pure fallback only
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("KUMMER_LCP_NO_EXT"):
    ext_modules = cythonize(
        [
            Extension(
                "kummer_lcp._kernels",
                ["src/kummer_lcp/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
