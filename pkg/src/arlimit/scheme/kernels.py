"""Selects the WENO5 split-flux kernel at import time.

The compiled extension is used when it was built; otherwise, or when the
environment variable ``ARLIMIT_PURE_PYTHON=1`` is set, the numpy version is
used.  Both expose ``weno5_split_flux(u, f, alpha)`` and ``weno5_left``.
"""

import os

from . import _weno_py

BACKEND = "python"
weno5_split_flux = _weno_py.weno5_split_flux

if os.environ.get("ARLIMIT_PURE_PYTHON") != "1":
    try:
        from . import _weno_ext
    except ImportError:
        _weno_ext = None
    else:
        BACKEND = "cython"
        weno5_split_flux = _weno_ext.weno5_split_flux
else:
    _weno_ext = None


def available_backends():
    out = {"python": _weno_py.weno5_split_flux}
    if _weno_ext is not None:
        out["cython"] = _weno_ext.weno5_split_flux
    return out
