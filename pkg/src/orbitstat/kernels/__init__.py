"""Series-kernel backend selection.

Imports the compiled extension when present, falling back to the pure
Python implementation. Set ORBITSTAT_PURE=1 to force the fallback (used
by the benchmark and the equivalence tests).
"""

import os

from orbitstat.kernels import pure as _pure

if os.environ.get("ORBITSTAT_PURE"):
    _impl = _pure
else:
    try:
        from orbitstat.kernels import _series as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _pure

BACKEND = _impl.BACKEND
exp_logderiv_series = _impl.exp_logderiv_series
inverse_factor_multiply = _impl.inverse_factor_multiply
euler_product_series = _impl.euler_product_series

__all__ = [
    "BACKEND",
    "exp_logderiv_series",
    "inverse_factor_multiply",
    "euler_product_series",
    "pure",
]

from orbitstat.kernels import pure  # noqa: E402  (re-export for direct comparison)
