import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("CARTWHEEL_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "cartwheel_discharge._kernels._speed",
                    ["src/cartwheel_discharge/_kernels/_speed.pyx"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython at build time: the package still works on the
        # pure-Python kernels selected at import.
        ext_modules = []

setup(ext_modules=ext_modules)
