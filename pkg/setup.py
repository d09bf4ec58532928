"""Builds the optional compiled shortest-path kernel.

The package works without it (a pure-Python kernel is selected at import
time), so a missing Cython toolchain only costs speed, not functionality.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "dynagrid._speedups",
                ["src/dynagrid/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
