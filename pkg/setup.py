import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("FIBERSCOPE_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:  # pure-Python install
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "fiberscope._kernels._core",
                    ["src/fiberscope/_kernels/_core.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                    language="c++",
                )
            ],
            language_level=3,
        )

setup(ext_modules=ext_modules)
