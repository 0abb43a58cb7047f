from setuptools import setup

# The compiled kernel is optional: without Cython (or a C compiler) the
# package falls back to the pure-Python twin at import time.
ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/daggerorders/_kernel/_hnf_c.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
