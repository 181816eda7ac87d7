"""Build script: compiles the optional C kernel.

The compiled extension is a pure speedup; if Cython or a C compiler is
missing the package installs anyway and falls back to the Python kernel.
Set DESSINS_NO_EXT=1 to skip the extension build entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("DESSINS_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("dessins._ckernel", ["src/dessins/_ckernel.pyx"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
