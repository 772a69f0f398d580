from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "qlandscape._su2_cy",
                ["src/qlandscape/_su2_cy.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    # The package degrades to the numpy backend when Cython is unavailable.
    ext_modules = []

setup(ext_modules=ext_modules)
