import os

from setuptools import setup

# The compiled kernels are optional: the package falls back to numpy-based
# implementations when the extension is absent (see frobcong.kernels).
# Set FROBCONG_NO_EXT=1 to skip compilation entirely.

ext_modules = []
if not os.environ.get("FROBCONG_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "frobcong._kernels",
                    ["src/frobcong/_kernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except Exception as exc:  # pragma: no cover - build-environment dependent
        print(f"frobcong: building without compiled kernels ({exc})")
        ext_modules = []

setup(ext_modules=ext_modules)
