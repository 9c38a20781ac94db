"""Build hook for the optional compiled pair-counting kernel.

Set CHAINGRADE_NO_EXT=1 to skip the extension; the package falls back to
the pure-Python kernel at import time.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("CHAINGRADE_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "chaingrade.stats._paircount",
                    ["src/chaingrade/stats/_paircount.pyx"],
                )
            ]
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
