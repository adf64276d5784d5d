"""Optional Cython build of the hot kernels; the package works without it."""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("HOAM_NO_EXT", "") not in ("1", "true", "yes"):
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("hoam.special_functions._kernels",
                       ["src/hoam/special_functions/_kernels.pyx"],
                       include_dirs=[numpy.get_include()],
                       extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
            quiet=True,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
