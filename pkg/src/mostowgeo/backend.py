"""Selects the Jacobi kernel at import: compiled extension if available,
numpy fallback otherwise.  ``MOSTOW_GEO_BACKEND=python|compiled`` forces
the choice.
"""

import os

from . import _jacobi_py

_forced = os.environ.get("MOSTOW_GEO_BACKEND", "").strip().lower()

if _forced == "python":
    jacobi_sweeps = _jacobi_py.jacobi_sweeps
    BACKEND = "python"
elif _forced == "compiled":
    from ._jacobi import jacobi_sweeps

    BACKEND = "compiled"
else:
    try:
        from ._jacobi import jacobi_sweeps

        BACKEND = "compiled"
    except ImportError:
        jacobi_sweeps = _jacobi_py.jacobi_sweeps
        BACKEND = "python"


def backend_name():
    return BACKEND
