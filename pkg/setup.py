import os

import numpy as np
from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SHADOWFIT_SKIP_EXT") != "1":
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "shadowfit._kernels._fast",
                ["src/shadowfit/_kernels/_fast.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
