import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext = Extension(
        "frontier_explorer._native",
        ["src/frontier_explorer/_native.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3"],
    )
    # The package works without the extension (pure-Python fallback kicks in
    # at import), so a failed compile must not fail the install.
    ext.optional = True
    ext_modules = cythonize([ext], language_level="3")
else:
    ext_modules = []

setup(ext_modules=ext_modules)
