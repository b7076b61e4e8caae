"""Build script: compiles the optional enumeration kernels.

The package works without the extension (a pure-Python fallback is selected
at import time); the extension only accelerates the hot enumeration loops.
A failed compile therefore degrades the build instead of breaking it.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "avert._kernels",
                ["src/avert/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - environment without Cython
    print(f"avert: building without compiled kernels ({exc})")

setup(ext_modules=ext_modules)
