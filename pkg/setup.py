"""Build script for the optional compiled Jacobi kernel.

Without Cython or a C compiler the package still installs; the pure-Python
kernel in ``entrobust._jacobi_py`` is selected at import time.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("entrobust._jacobi", ["src/entrobust/_jacobi.pyx"], extra_compile_args=["-O3", "-fcx-limited-range"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
