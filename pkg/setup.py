"""Build script for the optional compiled enumeration core.

The package is fully functional without the extension; engine.py falls back to
the pure-Python implementation when the import fails.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("absopt._engine", ["src/absopt/_engine.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
