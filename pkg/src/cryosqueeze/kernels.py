"""Backend selection for the numerical hot kernels.

Two implementations exist for each kernel: pure NumPy (``_core_py``, always
available) and a compiled Cython extension (``_core_cy``, optional).  By
default the choice is made per kernel from what actually wins:

* ``trapezoid_lti`` is a sequential scalar loop, where the compiled version
  is two orders of magnitude faster; it is used whenever built.
* ``expm`` is BLAS-bound; the pure version rides NumPy's (typically
  multithreaded) BLAS and is preferred, since the extension's BLAS route is
  slower on common installs.  ``benchmarks/bench_kernels.py`` shows the
  measurements behind this default.

Set ``CRYOSQUEEZE_KERNELS=python`` or ``=compiled`` to force one backend
for everything (the compiled choice falls back to pure when not built).
"""
from __future__ import annotations

import os

from . import _core_py

try:
    from . import _core_cy  # type: ignore[attr-defined]
except ImportError:
    _core_cy = None

_mode = os.environ.get("CRYOSQUEEZE_KERNELS", "auto")
if _core_cy is None or _mode == "python":
    BACKEND = "python"
    expm = _core_py.expm
    trapezoid_lti = _core_py.trapezoid_lti
elif _mode == "compiled":
    BACKEND = "compiled"
    expm = _core_cy.expm
    trapezoid_lti = _core_cy.trapezoid_lti
else:
    BACKEND = "python-expm+compiled-stepper"
    expm = _core_py.expm
    trapezoid_lti = _core_cy.trapezoid_lti


def available_backends() -> dict:
    """Name -> module for every kernel backend importable in this install."""
    backends = {"python": _core_py}
    if _core_cy is not None:
        backends["compiled"] = _core_cy
    return backends
