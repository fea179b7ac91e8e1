from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("birdyn._kernels", ["src/birdyn/_kernels.pyx"], extra_compile_args=["-O3"])],
        language_level=3,
    )
except Exception as exc:  # build without the extension; the pure-Python kernels take over
    print(f"warning: compiled kernels not built ({exc})")

setup(ext_modules=ext_modules)
