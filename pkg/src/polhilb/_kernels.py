"""Select the compiled scan kernel when it is built, else the Python one."""
from __future__ import annotations

from . import _scan_py

try:
    from . import _scan as _compiled
except ImportError:  # extension not built
    _compiled = None

INT64_LIMIT = 2**62
BACKEND = "cython" if _compiled is not None else "python"


def fits_int64(t: int, a: int, b: int, k_hi: int) -> bool:
    """Every intermediate of the scan stays well inside int64."""
    largest = max(4 * t * t * b * b * (k_hi + 1), b * (4 * t * (k_hi + 1) + 12), (2 * a * a + 1) * 24, t * (k_hi + 1) + 2)
    return largest + (2 * a * a + 1) * 24 < INT64_LIMIT


def scan_window(t: int, a: int, b: int, k_lo: int, k_hi: int, backend: str | None = None):
    backend = backend or BACKEND
    if backend == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernel is not available")
        if fits_int64(t, a, b, k_hi):
            return _compiled.scan_window(t, a, b, k_lo, k_hi)
        backend = "python"
    if backend != "python":
        raise ValueError(f"unknown backend {backend!r}")
    return _scan_py.scan_window(t, a, b, k_lo, k_hi)
