from setuptools import Extension, setup
from Cython.Build import cythonize

setup(
    ext_modules=cythonize(
        [
            Extension(
                "nuquad._kernel",
                ["src/nuquad/_kernel.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
)
