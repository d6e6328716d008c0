"""Builds the optional compiled kernel; the package works without it."""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    # a missing compiler only costs speed, so never fail the install
    def run(self):
        try:
            super().run()
        except Exception as e:
            print(f"warning: compiled kernel not built ({e}); using the pure-Python one")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as e:
            print(f"warning: {ext.name} not built ({e}); using the pure-Python one")


try:
    from Cython.Build import cythonize
except ImportError:
    extensions = []
else:
    extensions = cythonize(
        [Extension("ljc._ckernel", ["src/ljc/_ckernel.pyx"])],
        compiler_directives={"language_level": 3},
        quiet=True,
    )

setup(ext_modules=extensions, cmdclass={"build_ext": OptionalBuildExt})
