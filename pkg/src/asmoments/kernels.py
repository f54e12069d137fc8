"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the numpy
fallback.  Setting ``ASMOMENTS_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _kernels_py

_compiled = None
if not os.environ.get("ASMOMENTS_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # pragma: no cover - depends on build
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
_impl = _compiled if _compiled is not None else _kernels_py


def available_backends():
    return ["python"] + (["cython"] if _compiled is not None else [])


def get_backend(name):
    """Return the kernel module for ``name`` ('python' or 'cython')."""
    if name == "python":
        return _kernels_py
    if name == "cython":
        if _compiled is None:
            raise ImportError("compiled kernels are not built")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


def walk_powers(modulus, gen_digits, p, count):
    return _impl.walk_powers(modulus, gen_digits, p, count)


def residue_histogram(A, T, w, p):
    return _impl.residue_histogram(A, T, w, p)
