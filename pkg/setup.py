"""Build script: compiles the optional contiguity kernel when Cython and a C
compiler are available; the package falls back to the pure-Python kernel
otherwise, so a failed extension build is never fatal."""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, etc.
            print(f"warning: skipping compiled kernel ({exc}); using pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not build {ext.name} ({exc}); using pure-Python fallback")


ext_modules = []
if os.environ.get("SIMPLICIAL_TC_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/simplicial_tc/_kernels/_fast.pyx"],
            language_level="3",
        )
    except Exception as exc:
        print(f"warning: Cython unavailable ({exc}); building pure-Python only")

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
