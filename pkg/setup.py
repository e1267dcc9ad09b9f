import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # the pure-Python row reduction is used instead
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("bifiltered.exactlin._rref_cy", ["src/bifiltered/exactlin/_rref_cy.pyx"],
                   include_dirs=[np.get_include()])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
