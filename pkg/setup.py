"""Build script for the compiled kernel extension.

The package works without the extension (a pure-numpy fallback is selected
at import time); building it just makes the hot loops much faster.
Build in place with:  python setup.py build_ext --inplace
"""

from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "jsrbounds._kernels_cy",
        sources=["src/jsrbounds/_kernels_cy.pyx"],
        extra_compile_args=["-O3"],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
)
