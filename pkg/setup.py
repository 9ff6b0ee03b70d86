"""Build hook for the optional compiled propagation kernel.

The package is fully functional without the extension; a pure NumPy
fallback is selected at import time when the build is skipped or fails.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [Extension("fwmpb._kernels", ["src/fwmpb/_kernels.pyx"])],
        language_level=3,
    )
else:
    ext_modules = []

setup(ext_modules=ext_modules)
