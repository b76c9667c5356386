from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "embtrees._speedups",
                ["src/embtrees/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # The package degrades to the pure-Python kernels at import time.
    ext_modules = []

setup(ext_modules=ext_modules)
