from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "stratkit._kernels._fastcore",
                ["src/stratkit/_kernels/_fastcore.pyx"],
            )
        ],
        language_level=3,
    )
except ImportError:
    # The package works without the compiled kernels; the pure-Python
    # fallback in stratkit._kernels is selected at import time.
    ext_modules = []

setup(ext_modules=ext_modules)
