import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("PLMONSTER_NO_EXT"):
    try:
        from Cython.Build import cythonize

        speed = Extension(
            "plmonster._core._speed",
            ["src/plmonster/_core/_speed.pyx"],
        )
        # a failed compile must never block installation; the pure backend
        # is a full implementation of the same contract
        speed.optional = True
        ext_modules = cythonize([speed], language_level="3")
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
