"""Build hooks for the optional compiled scan core.

The package is pure Python plus one Cython extension holding the grid-scan
inner loops.  If Cython or a C compiler is unavailable the extension is
skipped and the numpy fallback in ``essnorm._scan_py`` is used at runtime.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/essnorm/_scan.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - depends on build host
    print(f"warning: compiled scan core skipped ({exc}); pure-Python fallback will be used")
    ext_modules = []

setup(ext_modules=ext_modules)
