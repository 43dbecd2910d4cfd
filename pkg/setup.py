from setuptools import Extension, setup

# The compiled kernel is optional: the package falls back to the pure-Python
# implementation in chanspec._zopt_py when the extension is unavailable.
try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "chanspec._zopt",
                ["src/chanspec/_zopt.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
