from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "outer_billiards._ckernel",
        ["src/outer_billiards/_ckernel.pyx"],
        # keep libm sin/cos calls unfused so results match the Python fallback bit for bit
        extra_compile_args=["-O3", "-ffp-contract=off", "-fno-builtin-sin", "-fno-builtin-cos"],
        optional=True,
    )
]

setup(ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"}))
