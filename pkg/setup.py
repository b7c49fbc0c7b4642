import os

from setuptools import Extension, setup

# The compiled kernel backend is optional: when Cython is missing (or the
# build is explicitly disabled) the package falls back to the pure-Python
# kernels at import time.
ext_modules = []
if os.environ.get("QVERIFY_NO_EXT", "") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("qverify._kernels", ["src/qverify/_kernels.pyx"])],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
