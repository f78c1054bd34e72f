"""Build script: compiles the optional Cython kernel extension.

The package is fully functional without the extension (a pure-Python
implementation of the same kernels is selected at import time), so a
missing compiler only costs speed, never correctness.
"""

import sys

from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    extensions = cythonize(
        [Extension("orbitstat.kernels._series", ["src/orbitstat/kernels/_series.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    print(f"warning: Cython unavailable ({exc}); building pure-Python only", file=sys.stderr)
    extensions = []


def run_setup(ext_modules):
    setup(ext_modules=ext_modules)


try:
    run_setup(extensions)
except (SystemExit, Exception):  # pragma: no cover - compiler missing/broken
    if not extensions:
        raise
    print("warning: extension build failed; installing pure-Python fallback", file=sys.stderr)
    run_setup([])
