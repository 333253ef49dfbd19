"""Committee-scan kernels: compiled extension with pure-Python fallback.

The compiled module is preferred when importable; set ``MULTIFAC_PURE=1`` to
force the fallback (used by the parity tests and the benchmark).
"""

from __future__ import annotations

import os

from ._fallback import (  # noqa: F401  (codes shared by both backends)
    AGG_CENTRUM,
    AGG_MAX,
    AGG_SUM,
    COST_MAX,
    COST_QSOC,
    COST_SUM,
)
from ._fallback import column_sums as _py_column_sums
from ._fallback import scan_optimum as _py_scan

if os.environ.get("MULTIFAC_PURE"):
    scan_optimum = _py_scan
    column_sums = _py_column_sums
    BACKEND = "python"
else:
    try:
        from ._scan import column_sums, scan_optimum  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:  # extension not built
        scan_optimum = _py_scan
        column_sums = _py_column_sums
        BACKEND = "python"


def backend_name() -> str:
    return BACKEND


def python_scan_optimum(*args, **kwargs):
    """Always the pure-Python implementation, regardless of backend."""
    return _py_scan(*args, **kwargs)


def python_column_sums(*args, **kwargs):
    return _py_column_sums(*args, **kwargs)
