"""Build the optional Cython kernels.

The package works without them: ``qspecies.kernels`` falls back to the
pure-Python implementation when the extension is missing.  Set
``QSPECIES_NO_EXT=1`` to skip compilation entirely.
"""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("QSPECIES_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools.extension import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("qspecies._kernels", ["src/qspecies/_kernels.pyx"])],
            compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
        )

setup(ext_modules=ext_modules)
