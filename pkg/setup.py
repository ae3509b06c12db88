import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("FLOWCOPILOT_SKIP_NATIVE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "flowcopilot.kernels._native",
                    ["src/flowcopilot/kernels/_native.pyx"],
                    # fp-contract off: reductions must round exactly like
                    # the pure backend so results stay bit-identical.
                    extra_compile_args=["-O3", "-ffp-contract=off"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # Pure-Python kernels are selected at import when the extension
        # is missing, so a Cython-less build is still fully functional.
        ext_modules = []

setup(ext_modules=ext_modules)
