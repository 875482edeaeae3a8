# Builds the optional compiled phase-accumulation kernel. If Cython (or a
# compiler) is unavailable the install still succeeds and the package falls
# back to the pure-numpy kernel at import time.
from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "chaodeph._kernels_c",
                ["src/chaodeph/_kernels_c.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level="3",
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
