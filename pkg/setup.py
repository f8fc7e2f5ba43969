"""Build script: compiles the optional enumeration kernel.

The package is pure Python except for ``labelweight_hss._speedups``, a small
Cython extension holding the codeword-enumeration inner loop.  If the
extension cannot be built (no compiler, no Cython) the install still
succeeds and the package falls back to the pure-Python kernel at import.
"""

import sys
from distutils.errors import CCompilerError, DistutilsExecError, DistutilsPlatformError

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

BUILD_ERRORS = (CCompilerError, DistutilsExecError, DistutilsPlatformError, OSError)


class optional_build_ext(build_ext):
    def run(self):
        try:
            build_ext.run(self)
        except BUILD_ERRORS as exc:
            sys.stderr.write(f"WARNING: compiled kernel skipped ({exc}); using pure-Python fallback\n")

    def build_extension(self, ext):
        try:
            build_ext.build_extension(self, ext)
        except BUILD_ERRORS as exc:
            sys.stderr.write(f"WARNING: compiled kernel skipped ({exc}); using pure-Python fallback\n")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [Extension("labelweight_hss._speedups", ["src/labelweight_hss/_speedups.pyx"])],
        compiler_directives={"language_level": "3"},
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
