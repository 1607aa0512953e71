"""Builds the optional similarity kernel; the package works without it.

If Cython or a C compiler is missing the install falls through to the pure
numpy backend selected at import time in charforge.similarity.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: skipping extension build ({exc}); "
                  "charforge will use the numpy similarity backend")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not build {ext.name} ({exc}); "
                  "charforge will use the numpy similarity backend")


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [Extension(
            "charforge._simcore",
            ["src/charforge/_simcore.pyx"],
            extra_compile_args=["-O3", "-march=native", "-ffast-math"],
        )],
        compiler_directives={"language_level": "3"},
    )


setup(ext_modules=_extensions(), cmdclass={"build_ext": OptionalBuildExt})
