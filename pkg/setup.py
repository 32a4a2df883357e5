import os
import sys

from setuptools import Extension, setup


def _extensions():
    if os.environ.get("NERONZETA_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("Cython not available; installing pure-Python kernels only", file=sys.stderr)
        return []
    ext = Extension(
        "neronzeta.kernels._ckernels",
        ["src/neronzeta/kernels/_ckernels.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=_extensions())
