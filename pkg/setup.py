"""Build glue for the optional compiled kernel.

The package is fully functional without the extension (a pure-Python
twin is selected at import time), so a failed compile only degrades
performance.
"""

from setuptools import Extension, setup


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    try:
        return cythonize(
            [Extension("dlreason._speedups", ["src/dlreason/_speedups.pyx"])],
            language_level=3,
        )
    except Exception as exc:  # degrade to the pure backend
        print(f"warning: compiled kernel skipped ({exc})")
        return []


setup(ext_modules=extensions())
