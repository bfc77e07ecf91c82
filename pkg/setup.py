from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # the pure-Python kernel is selected at import time
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "ssiwasawa.smith._snf_c",
                ["src/ssiwasawa/smith/_snf_c.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
