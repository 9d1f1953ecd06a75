import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "emrate._kernels",
                ["src/emrate/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    # Pure-python kernels are selected at import time when the extension
    # is unavailable; the package remains fully functional.
    ext_modules = []

setup(ext_modules=ext_modules)
