"""Split kernels of the parametrized boundary integral operators.

For a wavenumber kappa and curve z the two boundary kernels are

    k(t, s) = (i kappa / 2) n(t) . [z(s) - z(t)] H1(kappa r) / r      (normal)
    h(t, s) = (i kappa / 2) n_perp(t) . [z(s) - z(t)] H1(kappa r) / r (tangential)

with r = |z(t) - z(s)|, n = (z2', -z1') the unnormalized outward normal and
n_perp = z' the tangent.  Both are split into singular factors with smooth
coefficients so that each factor can be integrated by the matching quadrature
rule:

    k = k1 ln(4 sin^2((t-s)/2)) + k2
    h = h1 cot((s-t)/2) + h2 ln(4 sin^2((t-s)/2)) + h3

The cotangent coefficient is further recentred about its diagonal value,
h1_tilde = cot((s-t)/2) (h1 - 1/(2pi)), which is a smooth function; its
diagonal is the curvature-type quantity e1(t) = -z'(t).z''(t) / (2pi |z'|^2).
h1 itself has a removable-only-in-products pole at |t - s| = pi (tan blows
up while h1 cot stays finite), so everything downstream consumes h1_tilde
and the product forms, never h1 cot as two factors.

All kernel functions broadcast t against s and handle coincident arguments
with the analytic diagonal values.  At a degenerate parameter (|z'| = 0,
the corner of a graded curve) the diagonal values are undefined; callers
keep collocation points away from the corner.
"""

from dataclasses import dataclass, field

import numpy as np

from .geometry import BoundaryCurve, curve_eval
from .specfun import bessel_j, hankel1

__all__ = ["ElasticMedium", "kernel_k", "kernel_h", "kernel_h2_tilde", "wavenumber"]

# sin^2((t-s)/2) below this is treated as argument coincidence
_COINCIDENT = 1e-30


@dataclass(frozen=True)
class ElasticMedium:
    """Homogeneous isotropic medium: Lame parameters and angular frequency.

    kappa_p = omega / sqrt(lam + 2 mu) and kappa_s = omega / sqrt(mu) are the
    compressional and shear wavenumbers; mu > 0 and lam + mu > 0 guarantee
    kappa_p < kappa_s.
    """

    lam: float
    mu: float
    omega: float
    kappa_p: float = field(init=False)
    kappa_s: float = field(init=False)

    def __post_init__(self):
        if not (self.mu > 0):
            raise ValueError("shear modulus mu must be positive")
        if not (self.lam + self.mu > 0):
            raise ValueError("lam + mu must be positive")
        if not (self.omega > 0):
            raise ValueError("frequency omega must be positive")
        object.__setattr__(self, "kappa_p", self.omega / np.sqrt(self.lam + 2 * self.mu))
        object.__setattr__(self, "kappa_s", self.omega / np.sqrt(self.mu))


def wavenumber(medium: ElasticMedium, sigma: str) -> float:
    if sigma == "p":
        return medium.kappa_p
    if sigma == "s":
        return medium.kappa_s
    raise ValueError("sigma must be 'p' or 's'")


class _Geom:
    """Curve data shared by the kernel components on a broadcast (t, s) grid."""

    def __init__(self, curve: BoundaryCurve, t, s):
        t = np.asarray(t, dtype=float)
        s = np.asarray(s, dtype=float)
        self.scalar = t.ndim == 0 and s.ndim == 0
        pt = curve_eval(curve, t)
        ps = curve_eval(curve, s)
        self.dz_t = pt.dz
        self.ddz_t = pt.ddz
        self.n_t = np.stack([pt.dz[..., 1], -pt.dz[..., 0]], axis=-1)
        self.delta = ps.z - pt.z  # z(s) - z(t)
        r2 = np.sum(self.delta**2, axis=-1)
        self.half = (t - s) / 2
        self.diag = np.broadcast_to(np.sin(self.half) ** 2 < _COINCIDENT, r2.shape)
        self.r = np.sqrt(np.where(self.diag, 1.0, r2))
        self.n_dot = np.sum(self.n_t * self.delta, axis=-1)
        self.nperp_dot = np.sum(self.dz_t * self.delta, axis=-1)
        self.speed2 = np.sum(self.dz_t**2, axis=-1)

    def out(self, *arrays):
        if self.scalar:
            return tuple(a[()] if isinstance(a, np.ndarray) else a for a in arrays)
        return arrays


def _bessel_factors(kappa: float, g: _Geom):
    # J1(kr)/r and H1(kr)/r with the masked diagonal protected (r set to 1)
    x = kappa * g.r
    return bessel_j(1, x) / g.r, hankel1(1, x) / g.r


def kernel_k(medium: ElasticMedium, curve: BoundaryCurve, sigma: str, t, s):
    """Split of the normal-derivative kernel: (k1, k2) with
    k = k1 ln(4 sin^2((t-s)/2)) + k2."""
    kappa = wavenumber(medium, sigma)
    g = _Geom(curve, t, s)
    j1r, h1r = _bessel_factors(kappa, g)
    k1 = np.where(g.diag, 0.0, -(kappa / (2 * np.pi)) * g.n_dot * j1r)
    full = 0.5j * kappa * g.n_dot * h1r
    log_term = np.log(np.where(g.diag, 1.0, 4 * np.sin(g.half) ** 2))
    n_dot_ddz = np.sum(g.n_t * g.ddz_t, axis=-1)
    diag_k2 = n_dot_ddz / (2 * np.pi * g.speed2)
    k2 = np.where(g.diag, diag_k2, full - k1 * log_term)
    return g.out(k1, k2)


def kernel_h(medium: ElasticMedium, curve: BoundaryCurve, sigma: str, t, s):
    """Split of the tangential-derivative kernel: (h1, h2, h3, h1_tilde) with
    h = h1 cot((s-t)/2) + h2 ln(4 sin^2((t-s)/2)) + h3.

    h3 and h1_tilde are assembled from the pole-free product
    h1 cot((s-t)/2) = (1/pi) n_perp(t).[z(s)-z(t)] / r^2, so they stay finite
    at |t - s| = pi where h1 alone diverges.
    """
    kappa = wavenumber(medium, sigma)
    g = _Geom(curve, t, s)
    j1r, h1r = _bessel_factors(kappa, g)
    r2 = g.r**2
    h1_cot = g.nperp_dot / (np.pi * r2)  # = h1 * cot((s-t)/2), smooth
    h1 = np.where(g.diag, 1 / (2 * np.pi), -h1_cot * np.tan(g.half))
    h2 = np.where(g.diag, 0.0, -(kappa / (2 * np.pi)) * g.nperp_dot * j1r)
    full = 0.5j * kappa * g.nperp_dot * h1r
    log_term = np.log(np.where(g.diag, 1.0, 4 * np.sin(g.half) ** 2))
    h3 = np.where(g.diag, 0.0, full - h1_cot - h2 * log_term)
    dz_dot_ddz = np.sum(g.dz_t * g.ddz_t, axis=-1)
    e1 = -dz_dot_ddz / (2 * np.pi * g.speed2)
    cot = np.cos(g.half) / np.where(g.diag, 1.0, np.sin(g.half))
    h1_tilde = np.where(g.diag, e1, h1_cot + cot / (2 * np.pi))
    return g.out(h1, h2, h3, h1_tilde)


def kernel_h2_tilde(medium: ElasticMedium, curve: BoundaryCurve, sigma: str, t, s):
    """Recentred log coefficient h2 - (kappa^2 / 4pi) |z'(t)|^2 sin(t - s)."""
    kappa = wavenumber(medium, sigma)
    g = _Geom(curve, t, s)
    (h2,) = kernel_h(medium, curve, sigma, t, s)[1:2]
    shift = (kappa**2 / (4 * np.pi)) * g.speed2 * np.sin(np.asarray(t, float) - np.asarray(s, float))
    return g.out(h2 - shift)[0]
