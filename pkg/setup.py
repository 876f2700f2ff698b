from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # the pure-Python kernels take over when the extension is absent
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("sandpile_trees._kernels", ["src/sandpile_trees/_kernels.pyx"],
                   extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
