from setuptools import Extension, setup

# The compiled kernel is optional: without Cython the package installs with
# the pure-Python backend only.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("unstable_ext._kernels", ["src/unstable_ext/_kernels.pyx"])],
        language_level="3",
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
