import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# The extension is optional: if Cython or a C compiler is missing the
# install still succeeds and finopt falls back to the pure-Python kernels.
# No -ffast-math here; the compiled kernel must round exactly like the
# fallback so the two backends stay bit-for-bit interchangeable.
ext = Extension(
    "finopt._kernels",
    sources=["src/finopt/_kernels.pyx"],
    include_dirs=[np.get_include()],
    extra_compile_args=["-O2", "-ffp-contract=off"],
    optional=True,
)

setup(
    ext_modules=cythonize([ext], compiler_directives={"language_level": "3"})
    if cythonize is not None
    else [],
)
