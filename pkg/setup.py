"""Build hook: compile the 2-d discrepancy sweep when Cython is available.

The package works without the extension (a numpy fallback with the same
contract is selected at import time), so a missing compiler or Cython just
degrades gracefully to a pure-Python install.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/rbqmc/_kernels/_disc2d.pyx"],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
