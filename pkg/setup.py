"""Build script: compiles the optional Cython kernel extension.

The package is fully functional without the extension (a pure-Python
fallback is selected at import time), so any failure here downgrades to
a source-only install instead of aborting.
"""

import sys

from setuptools import setup
from setuptools.errors import CCompilerError, ExecError, PlatformError

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "lincov._kernels",
                sources=["src/lincov/_kernels.pyx"],
                # -ffp-contract=off: no FMA contraction, so the compiled
                # kernels stay bit-identical to the pure-Python fallback
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        language_level="3",
    )
except ImportError:
    print("lincov: Cython not available, building without compiled kernels",
          file=sys.stderr)


class optional_build_ext:  # noqa: N801 - setuptools naming convention
    pass


try:
    from setuptools.command.build_ext import build_ext as _build_ext

    class optional_build_ext(_build_ext):  # noqa: F811
        """Degrade to the pure-Python fallback if compilation fails."""

        def run(self):
            try:
                _build_ext.run(self)
            except (CCompilerError, ExecError, PlatformError) as exc:
                print(f"lincov: compiled kernels skipped ({exc})", file=sys.stderr)

        def build_extension(self, ext):
            try:
                _build_ext.build_extension(self, ext)
            except (CCompilerError, ExecError, PlatformError) as exc:
                print(f"lincov: compiled kernels skipped ({exc})", file=sys.stderr)

except ImportError:
    pass


setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
