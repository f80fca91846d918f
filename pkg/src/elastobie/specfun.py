"""Real-argument Bessel functions J0, J1, Y0, Y1 and Hankel functions of the
first kind H0^(1), H1^(1) at double precision.

These are the only special functions the solver needs: H0^(1) builds the
Helmholtz fundamental solution (i/4) H0^(1)(kappa |x-y|), H1^(1) its gradient,
and J1 the smooth factor multiplying the logarithmic singularity in the split
boundary kernels.

Evaluation is delegated to the Cephes routines exposed by scipy.special, which
hold relative error near machine precision over the needed range; the test
suite cross-checks against an independent arbitrary-precision oracle (power
series for small argument, Hankel asymptotic expansion for large argument).
All functions accept scalars or arrays and validate their domain:

* ``bessel_j``: x >= 0 (x = 0 allowed, series limit values),
* ``bessel_y`` and ``hankel1``: x > 0 (Y has a logarithmic singularity at 0).
"""

from __future__ import annotations

from typing import Union

import numpy as np
from scipy import special as _special

ArrayLike = Union[float, np.ndarray]

_J = {0: _special.j0, 1: _special.j1}
_Y = {0: _special.y0, 1: _special.y1}


def _check_order(order: int) -> None:
    if order not in (0, 1):
        raise ValueError(f"order must be 0 or 1, got {order!r}")


def _as_checked_array(x: ArrayLike, positive: bool) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    if not np.all(np.isfinite(arr)):
        raise ValueError("argument must be finite")
    if positive:
        if np.any(arr <= 0.0):
            raise ValueError("argument must be > 0")
    elif np.any(arr < 0.0):
        raise ValueError("argument must be >= 0")
    return arr, scalar


def bessel_j(order: int, x: ArrayLike) -> ArrayLike:
    """Bessel function of the first kind, order 0 or 1, for x >= 0."""
    _check_order(order)
    arr, scalar = _as_checked_array(x, positive=False)
    out = _J[order](arr)
    return float(out) if scalar else out


def bessel_y(order: int, x: ArrayLike) -> ArrayLike:
    """Bessel function of the second kind, order 0 or 1, for x > 0."""
    _check_order(order)
    arr, scalar = _as_checked_array(x, positive=True)
    out = _Y[order](arr)
    return float(out) if scalar else out


def hankel1(order: int, x: ArrayLike) -> Union[complex, np.ndarray]:
    """Hankel function of the first kind, H = J + iY, order 0 or 1, x > 0."""
    _check_order(order)
    arr, scalar = _as_checked_array(x, positive=True)
    out = _J[order](arr) + 1j * _Y[order](arr)
    return complex(out) if scalar else out
