"""Build script.

The package is pure Python except for one optional Cython extension,
parahoric._ckernel, which accelerates the T-basis convolution kernel.
If Cython or a C compiler is unavailable the build silently falls back
to the pure-Python kernel selected at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/parahoric/_ckernel.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover
    print("cython unavailable (%s); building without compiled kernel" % exc)

setup(ext_modules=ext_modules)
