"""Builds the optional compiled grid-kernel extension.

The package is fully functional without it: causaltrust._kernels falls back to
the NumPy implementation when the extension is missing or fails to build.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                name="causaltrust._kernels._gridkernels",
                sources=["src/causaltrust/_kernels/_gridkernels.pyx"],
            )
        ],
        language_level="3",
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
