"""Kernel selection: compiled extension when importable, numpy fallback otherwise.

Set FERMAT_KERNEL=pure or FERMAT_KERNEL=cython to force a backend (the
benchmark and the cross-checking tests do).
"""

from __future__ import annotations

import os

from . import _kernels_py

_requested = os.environ.get("FERMAT_KERNEL", "auto").lower()
_impl = None
IMPLEMENTATION = "pure"

if _requested in ("auto", "cython"):
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]

        IMPLEMENTATION = "cython"
    except ImportError:
        if _requested == "cython":
            raise
        _impl = None

if _impl is None:
    _impl = _kernels_py
    IMPLEMENTATION = "pure"


def count_curve_points_prime(ell: int, p: int, delta: int) -> tuple[int, int]:
    return _impl.count_curve_points_prime(ell, p, delta)


def count_curve_points_quad(ell: int, p: int, delta: int, m0: int, m1: int) -> tuple[int, int]:
    return _impl.count_curve_points_quad(ell, p, delta, m0, m1)


def search_points(delta: int, hmax: int, bound: int) -> list[tuple[int, int, int]]:
    try:
        return _impl.search_points(delta, hmax, bound)
    except OverflowError:
        # compiled kernel refuses ranges past int64; the pure path handles them
        return _kernels_py.search_points(delta, hmax, bound)


def backends() -> dict[str, object]:
    """All importable backends, keyed by name (for benchmarks and tests)."""
    out: dict[str, object] = {"pure": _kernels_py}
    try:
        from . import _ckernels  # type: ignore[attr-defined]

        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
