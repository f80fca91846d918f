"""Parametrized boundary curves, their derivative frames, the graded-mesh
substitution for corner domains, and collocation node generation.

A boundary curve is a 2pi-periodic parametrization z(t) with closed-form first
and second derivatives (the kernel diagonals need z'' exactly, so nothing here
is differentiated numerically).  The built-in shapes:

* ``circle``       radius r, z = r (cos t, sin t)
* ``apple``        z = 0.55 (1 + 0.9 cos t + 0.1 sin 2t) / (1 + 0.75 cos t) (cos t, sin t)
* ``peach``        z = 0.22 (cos^2 t sqrt(1 - sin t) + 2) (cos t, sin t), C^2 only
* ``drop``         z = (2 sin(t/2) - 1, -sin t), corner at t = 0
* ``heart``        z = (1.5 sin(3t/2), sin t), corner at t = 0
* ``custom``       starlike rho(t) (cos t, sin t) with rho a real Fourier series

Parameters are always reduced mod 2pi before evaluation.  This is what makes
the drop and heart formulas (which contain sin(t/2)) trace the intended closed
curve with a corner at t = 0, and it makes periodicity hold bitwise.

Corner domains compose z with the graded map t = w(s), which clusters nodes at
the corner; the exposed parametrization is then z~(s) = z(w(s)) with chain-rule
derivatives.  Collocation nodes are pi j / n, optionally shifted by pi/(2n) so
that no node hits the corner parameter.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * np.pi

# t -> (z, dz, ddz), each (..., 2)
CurveFunc = Callable[[np.ndarray], tuple[np.ndarray, np.ndarray, np.ndarray]]


@dataclass(frozen=True)
class CurvePoint:
    """Position and first two parameter derivatives of a boundary curve.

    Attributes
    ----------
    z, dz, ddz : ndarray, shape (..., 2)
        z(t), z'(t), z''(t).
    """

    z: np.ndarray
    dz: np.ndarray
    ddz: np.ndarray


@dataclass(frozen=True)
class Frame:
    """Unnormalized normal/tangent frame at a boundary parameter.

    n = (z2', -z1') is the outward normal scaled by |z'|, n_perp = (z1', z2')
    the tangent scaled by |z'|, speed = |z'|.
    """

    n: np.ndarray
    n_perp: np.ndarray
    speed: np.ndarray


@dataclass(frozen=True)
class BoundaryCurve:
    """Immutable parametrized boundary, optionally graded at a corner."""

    name: str
    base: CurveFunc = field(repr=False)
    grading_p: Optional[float] = None
    reversed_orientation: bool = False

    def eval(self, t) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        t = np.mod(np.asarray(t, dtype=float), TWO_PI)
        if self.grading_p is None:
            return self.base(t)
        w, dw, ddw = graded_map(self.grading_p, t)
        z, dz, ddz = self.base(w)
        dw = dw[..., None]
        ddw = ddw[..., None]
        return z, dz * dw, ddz * dw**2 + dz * ddw


# ----------------------------------------------------------------------------
# built-in shapes
# ----------------------------------------------------------------------------

def _polar(rho, drho, ddrho, t):
    """Assemble z = rho(t) e_r and derivatives from radial data."""
    c, s = np.cos(t), np.sin(t)
    e_r = np.stack([c, s], axis=-1)
    e_th = np.stack([-s, c], axis=-1)
    rho = rho[..., None]
    drho = drho[..., None]
    ddrho = ddrho[..., None]
    z = rho * e_r
    dz = drho * e_r + rho * e_th
    ddz = (ddrho - rho) * e_r + 2 * drho * e_th
    return z, dz, ddz


def _circle(radius: float) -> CurveFunc:
    def f(t):
        one = np.ones_like(t)
        return _polar(radius * one, 0.0 * one, 0.0 * one, t)

    return f


def _apple(t):
    c, s = np.cos(t), np.sin(t)
    num = 0.55 * (1.0 + 0.9 * c + 0.1 * np.sin(2 * t))
    dnum = 0.55 * (-0.9 * s + 0.2 * np.cos(2 * t))
    ddnum = 0.55 * (-0.9 * c - 0.4 * np.sin(2 * t))
    den = 1.0 + 0.75 * c
    dden = -0.75 * s
    ddden = -0.75 * c
    rho = num / den
    drho = (dnum - rho * dden) / den
    ddrho = (ddnum - 2 * drho * dden - rho * ddden) / den
    return _polar(rho, drho, ddrho, t)


def _peach(t):
    # rho = 0.22 (cos^2 t sqrt(1 - sin t) + 2); using cos^2 t = (1-sin t)(1+sin t)
    # removes the u^(-1/2) factor from the derivatives (u = 1 - sin t).
    c, s = np.cos(t), np.sin(t)
    u = np.maximum(1.0 - s, 0.0)
    su = np.sqrt(u)
    rho = 0.22 * ((1.0 + s) * u * su + 2.0)
    drho = -0.11 * c * su * (1.0 + 5.0 * s)
    ddrho = 0.22 * su * (6.25 * s * s + 2.0 * s - 2.25)
    return _polar(rho, drho, ddrho, t)


def _drop(t):
    z = np.stack([2.0 * np.sin(t / 2) - 1.0, -np.sin(t)], axis=-1)
    dz = np.stack([np.cos(t / 2), -np.cos(t)], axis=-1)
    ddz = np.stack([-0.5 * np.sin(t / 2), np.sin(t)], axis=-1)
    return z, dz, ddz


def _heart(t):
    z = np.stack([1.5 * np.sin(1.5 * t), np.sin(t)], axis=-1)
    dz = np.stack([2.25 * np.cos(1.5 * t), np.cos(t)], axis=-1)
    ddz = np.stack([-3.375 * np.sin(1.5 * t), -np.sin(t)], axis=-1)
    return z, dz, ddz


def _fourier(cos_coeffs: Sequence[float], sin_coeffs: Sequence[float]) -> CurveFunc:
    a = np.asarray(cos_coeffs, dtype=float)
    b = np.asarray(sin_coeffs, dtype=float)
    if a.size == 0:
        raise ValueError("custom shape needs at least the constant cosine coefficient")

    def f(t):
        rho = np.full_like(t, a[0])
        drho = np.zeros_like(t)
        ddrho = np.zeros_like(t)
        for m in range(1, a.size):
            rho = rho + a[m] * np.cos(m * t)
            drho = drho - a[m] * m * np.sin(m * t)
            ddrho = ddrho - a[m] * m * m * np.cos(m * t)
        for m in range(1, b.size + 1):
            rho = rho + b[m - 1] * np.sin(m * t)
            drho = drho + b[m - 1] * m * np.cos(m * t)
            ddrho = ddrho - b[m - 1] * m * m * np.sin(m * t)
        return _polar(rho, drho, ddrho, t)

    return f


_SHAPES: dict[str, CurveFunc] = {
    "apple": _apple,
    "peach": _peach,
    "drop": _drop,
    "heart": _heart,
}


def _reverse(base: CurveFunc) -> CurveFunc:
    """Reparametrize t -> 2pi - t, flipping the traversal direction (and hence
    the normal) while keeping the point set and the corner parameter t = 0."""

    def f(t):
        z, dz, ddz = base(np.mod(TWO_PI - t, TWO_PI))
        return z, -dz, ddz

    return f


def _signed_area(base: CurveFunc) -> float:
    t = np.linspace(0.0, TWO_PI, 2048, endpoint=False)
    z, dz, _ = base(t)
    return float(np.mean(z[:, 0] * dz[:, 1] - z[:, 1] * dz[:, 0]) * np.pi)


def make_curve(
    shape: str,
    *,
    radius: float = 1.0,
    cos_coeffs: Optional[Sequence[float]] = None,
    sin_coeffs: Optional[Sequence[float]] = None,
    grading_p: Optional[float] = None,
) -> BoundaryCurve:
    """Construct a named boundary curve.

    shape is one of apple, peach, drop, heart, circle, custom.  For ``circle``
    pass ``radius``; for ``custom`` pass radial Fourier coefficients
    rho(t) = cos_coeffs[0] + sum_m cos_coeffs[m] cos(mt) + sum_m sin_coeffs[m-1] sin(mt),
    which must stay positive.  ``grading_p`` >= 2 composes the curve with the
    corner-graded parameter map.

    The construction checks orientation (signed area) and reverses the
    parametrization if the formula traces the boundary clockwise, so that
    n = (z2', -z1') always points outward.
    """
    if shape == "circle":
        if radius <= 0:
            raise ValueError("circle radius must be positive")
        base = _circle(radius)
    elif shape == "custom":
        base = _fourier(cos_coeffs or [], sin_coeffs or [])
        t = np.linspace(0.0, TWO_PI, 720, endpoint=False)
        z, _, _ = base(t)
        rho = z[:, 0] * np.cos(t) + z[:, 1] * np.sin(t)
        if np.min(rho) <= 0.0:
            raise ValueError("custom radial function must be positive")
    elif shape in _SHAPES:
        base = _SHAPES[shape]
    else:
        raise ValueError(f"unknown shape {shape!r}")

    reversed_orientation = False
    if _signed_area(base) < 0.0:
        base = _reverse(base)
        reversed_orientation = True
        logger.info("curve %s: clockwise parametrization reversed", shape)

    if grading_p is not None and grading_p < 2.0:
        raise ValueError("grading exponent must be >= 2")

    return BoundaryCurve(
        name=shape,
        base=base,
        grading_p=grading_p,
        reversed_orientation=reversed_orientation,
    )


# ----------------------------------------------------------------------------
# evaluation
# ----------------------------------------------------------------------------

def curve_eval(curve: BoundaryCurve, t) -> CurvePoint:
    """Evaluate z, z', z'' at parameter(s) t (reduced mod 2pi)."""
    z, dz, ddz = curve.eval(t)
    return CurvePoint(z=z, dz=dz, ddz=ddz)


def frame(curve: BoundaryCurve, t) -> Frame:
    """Normal/tangent frame n = (z2', -z1'), n_perp = (z1', z2'), speed = |z'|."""
    _, dz, _ = curve.eval(t)
    speed = np.hypot(dz[..., 0], dz[..., 1])
    if np.any(speed < 1e-14):
        raise ValueError("degenerate parametrization: |z'| vanishes")
    n = np.stack([dz[..., 1], -dz[..., 0]], axis=-1)
    return Frame(n=n, n_perp=dz.copy(), speed=speed)


# ----------------------------------------------------------------------------
# graded mesh
# ----------------------------------------------------------------------------

def _v_poly(p: float, s: np.ndarray):
    q = (np.pi - s) / np.pi
    a = 1.0 / p - 0.5
    v = a * q**3 + (s - np.pi) / (np.pi * p) + 0.5
    dv = -3.0 * a * q**2 / np.pi + 1.0 / (np.pi * p)
    ddv = 6.0 * a * q / np.pi**2
    # v(0) rounds to ~ -1e-16 for non-integer p; clamp so v**p is defined
    return np.maximum(v, 0.0), dv, ddv


def graded_map(p: float, s) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Corner-graded substitution w(s) = 2pi v(s)^p / (v(s)^p + v(2pi-s)^p)
    with the cubic v; returns (w, w', w'').

    w fixes 0, pi, 2pi, is strictly increasing, and for p >= 2 its first p-1
    derivatives vanish at the corner parameter s = 0 (mod 2pi), which restores
    quadrature accuracy for integrands that are singular at the corner.
    """
    if p < 2.0:
        raise ValueError("grading exponent must be >= 2")
    s_arr = np.asarray(s, dtype=float)
    v1, dv1, ddv1 = _v_poly(p, s_arr)
    v2, dv2_raw, ddv2_raw = _v_poly(p, TWO_PI - s_arr)
    dv2 = -dv2_raw
    ddv2 = ddv2_raw

    A = v1**p
    B = v2**p
    dA = p * v1 ** (p - 1) * dv1
    dB = p * v2 ** (p - 1) * dv2
    ddA = p * (p - 1) * v1 ** (p - 2) * dv1**2 + p * v1 ** (p - 1) * ddv1
    ddB = p * (p - 1) * v2 ** (p - 2) * dv2**2 + p * v2 ** (p - 1) * ddv2

    denom = A + B
    w = TWO_PI * A / denom
    num = dA * B - A * dB
    dw = TWO_PI * num / denom**2
    ddw = TWO_PI * ((ddA * B - A * ddB) * denom - 2.0 * num * (dA + dB)) / denom**3
    return w, dw, ddw


def collocation_nodes(n: int, shifted: bool = False) -> np.ndarray:
    """2n equidistant collocation parameters pi j / n, j = 0..2n-1, optionally
    shifted by pi/(2n) so no node hits the corner parameter 0."""
    if n < 2:
        raise ValueError("need n >= 2")
    nodes = np.pi * np.arange(2 * n) / n
    if shifted:
        nodes = nodes + np.pi / (2 * n)
    return nodes
