"""Build the optional Cython kernels.

The package works without them; ``toeplitz_spurious.kernels`` falls back to
pure-Python implementations when the extension is missing.
"""
from setuptools import setup

try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension
except ImportError:  # no Cython/numpy at build time: pure-Python install
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "toeplitz_spurious._kernels",
                ["src/toeplitz_spurious/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                optional=True,
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
