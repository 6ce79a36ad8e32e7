"""Kernel selection: compiled extension if importable, else pure Python.

Set ``LGPIDEAL_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("LGPIDEAL_PURE_PYTHON"):
    _compiled = None
else:
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
MAX_COMPILED_MODULUS = 2**31


def _modp_module(p):
    if _compiled is not None and p < MAX_COMPILED_MODULUS:
        return _compiled
    return _kernels_py


def rref_modp(rows, ncols, p):
    return _modp_module(p).rref_modp(rows, ncols, p)


def modp_echelon(ncols, p):
    return _modp_module(p).ModpEchelon(ncols, p)


def int_echelon(ncols):
    mod = _compiled if _compiled is not None else _kernels_py
    return mod.IntEchelon(ncols)
