"""Build script: compiles the search kernel when Cython is available.

The package is fully functional without the extension; `fgmetric.core`
falls back to the pure-Python kernel at import time.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("fgmetric.core._speedups", ["src/fgmetric/core/_speedups.pyx"])],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"fgmetric: building without compiled kernel ({exc})")

setup(ext_modules=ext_modules)
