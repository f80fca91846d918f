"""Quadrature rules for 2pi-periodic integrands on the grid varsigma_j = pi j / n.

Three interpolatory rules handle the singular kernels that appear in the
boundary integral operators, each derived by integrating the trigonometric
interpolant of the integrand exactly:

* ``log_weights``     int ln(4 sin^2((t - s)/2)) f(s) ds
* ``cauchy_weights``  (1/2pi) PV-int cot((s - t)/2) f(s) ds
* ``sinlog_weights``  int ln(4 sin^2((t - s)/2)) sin(t - s) f(s) ds

Smooth integrands use the plain trapezoidal rule, which is spectrally
accurate for periodic functions.  The ``*_weight_matrix`` helpers assemble
the weight rows for all node targets at once; by translation invariance the
result is a circulant indexed by (j - i) mod 2n.
"""

import numpy as np

__all__ = [
    "log_weights",
    "cauchy_weights",
    "sinlog_weights",
    "trapezoid",
    "log_weight_matrix",
    "cauchy_weight_matrix",
    "sinlog_weight_matrix",
]


def _check_n(n: int) -> int:
    n = int(n)
    if n < 2:
        raise ValueError("need n >= 2")
    return n


def _grid(n: int) -> np.ndarray:
    return np.pi * np.arange(2 * n) / n


def log_weights(n: int, t: float) -> np.ndarray:
    """Weights R_j(t), exact for trig polynomials of degree < n."""
    n = _check_n(n)
    theta = float(t) - _grid(n)
    m = np.arange(1, n)
    s = np.cos(theta[:, None] * m[None, :]) @ (1.0 / m)
    return -(2 * np.pi / n) * s - (np.pi / n**2) * np.cos(n * theta)


def cauchy_weights(n: int, t: float) -> np.ndarray:
    """Weights U_j(t) for the principal-value cotangent kernel.

    The 1/2pi normalization of the integral is folded into the weights.  At a
    node coincidence the weight is the limit value 0 (the 1 - cos factor
    vanishes to second order against the simple pole).
    """
    n = _check_n(n)
    theta = _grid(n) - float(t)
    sin_half = np.sin(theta / 2)
    coincident = sin_half**2 < 1e-30
    safe = np.where(coincident, 1.0, sin_half)
    cot = np.cos(theta / 2) / safe
    w = (0.5 / n) * (1.0 - np.cos(n * theta)) * cot
    return np.where(coincident, 0.0, w)


def sinlog_weights(n: int, t: float) -> np.ndarray:
    """Weights V_j(t) for the log kernel damped by sin(t - s)."""
    n = _check_n(n)
    theta = _grid(n) - float(t)
    m = np.arange(2, n)
    s = np.sin(theta[:, None] * m[None, :]) @ (1.0 / (m**2 - 1.0))
    return (
        -(np.pi / (2 * n)) * np.sin(theta)
        + (2 * np.pi / n) * s
        + (2 * np.pi / (n * (n**2 - 1.0))) * np.sin(n * theta)
    )


def trapezoid(samples) -> complex:
    """(pi/n) sum of 2n equidistant samples; batched along the last axis."""
    samples = np.asarray(samples)
    if samples.shape[-1] % 2 or samples.shape[-1] < 4:
        raise ValueError("expected 2n samples with n >= 2")
    n = samples.shape[-1] // 2
    return (np.pi / n) * samples.sum(axis=-1)


def _circulant(row0: np.ndarray) -> np.ndarray:
    m = row0.size
    idx = (np.arange(m)[None, :] - np.arange(m)[:, None]) % m
    return row0[idx]


def log_weight_matrix(n: int) -> np.ndarray:
    """Matrix with entries R_j(varsigma_i) = row0[(j - i) mod 2n]."""
    return _circulant(log_weights(n, 0.0))


def cauchy_weight_matrix(n: int) -> np.ndarray:
    """Matrix with entries U_j(varsigma_i).

    Computed from the integer-offset closed form: at node distance
    theta = pi d / n the factor 1 - cos(pi d) is exactly 0 for even d and
    exactly 2 for odd d, so the weight is 0 or (1/n) cot(pi d / (2n)).
    Evaluating the generic formula here would leave O(eps) residue from
    cos(pi d) against the cotangent pole.
    """
    n = _check_n(n)
    d = np.arange(2 * n)
    row0 = np.zeros(2 * n)
    odd = d % 2 == 1
    half = np.pi * d[odd] / (2 * n)
    row0[odd] = (1.0 / n) * np.cos(half) / np.sin(half)
    return _circulant(row0)


def sinlog_weight_matrix(n: int) -> np.ndarray:
    """Matrix with entries V_j(varsigma_i)."""
    return _circulant(sinlog_weights(n, 0.0))
