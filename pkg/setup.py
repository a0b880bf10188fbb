"""Build script.  The compiled kernel is optional: if Cython or a C compiler
is unavailable the package installs pure and fermat.kernels falls back to the
numpy implementation at import time."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "fermat._ckernels",
                ["src/fermat/_ckernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"fermat: building without compiled kernels ({exc})")

setup(ext_modules=ext_modules)
