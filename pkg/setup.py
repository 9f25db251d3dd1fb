import numpy
from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/mostowgeo/_jacobi.pyx",
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # Pure-python backend is selected at import time when the
    # extension is unavailable.
    ext_modules = []

setup(
    ext_modules=ext_modules,
    include_dirs=[numpy.get_include()],
)
