"""Build hook for the optional compiled kernels.

If Cython or a C compiler is missing, the package installs without the
extension and :mod:`elastocap.kernels` falls back to the pure-Python backend.
"""

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - depends on the toolchain
            print(f"warning: compiled kernels not built ({exc}); using pure Python")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover
            print(f"warning: failed to build {ext.name} ({exc}); using pure Python")


def _extensions():
    try:
        from Cython.Build import cythonize
        import numpy  # noqa: F401
    except ImportError:
        return []
    from setuptools import Extension
    ext = Extension("elastocap._ckernels", ["src/elastocap/_ckernels.pyx"],
                    extra_compile_args=["-O3"])
    return cythonize([ext], language_level=3, quiet=True)


setup(ext_modules=_extensions(), cmdclass={"build_ext": OptionalBuildExt})
