import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the Cython kernel if possible; the package falls back to the
    pure-numpy lane at import time when the extension is unavailable."""

    def run(self):
        try:
            super().run()
        except Exception as exc:   # missing compiler, etc.
            warnings.warn(f"skipping compiled kernels: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"skipping {ext.name}: {exc}")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        warnings.warn("Cython not available; building without compiled kernels")
        return []
    return cythonize(
        [Extension(
            "chirpedqpm.kernels._core",
            ["src/chirpedqpm/kernels/_core.pyx"],
            extra_compile_args=["-O3"],
        )],
        language_level=3,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
