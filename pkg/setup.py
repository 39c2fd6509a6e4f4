"""Builds the optional compiled kernels; the package works without them."""

import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Skip the extension (with a warning) if it cannot be compiled."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, Cython missing, ...
            self._skip(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._skip(exc)

    def _skip(self, exc):
        if os.environ.get("LINKSGOULD_REQUIRE_EXT"):
            raise exc
        print(f"warning: compiled kernels not built ({exc}); using pure Python", file=sys.stderr)


def extensions():
    if os.environ.get("LINKSGOULD_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython not available; using pure Python kernels", file=sys.stderr)
        return []
    ext = Extension(
        "linksgould._ckernels",
        ["src/linksgould/_ckernels.pyx"],
        language="c++",
        extra_compile_args=["-O3", "-std=c++17"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"}, quiet=True)


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
