from setuptools import Extension, setup

# The compiled kernels are optional: mapbounds.kernels falls back to the
# pure Python implementation when the extension is absent.
try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("mapbounds._kernels", ["src/mapbounds/_kernels.pyx"])],
        language_level="3",
    )

setup(ext_modules=ext_modules)
