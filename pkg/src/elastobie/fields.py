"""Field evaluation away from the boundary from solved densities.

The scattered displacement is v = grad phi + curl psi with both scalar
potentials represented as single-layer integrals over the boundary,

    phi(x) = int (i/4) H0(kappa_p |x - z(s)|) phi1(s) ds,

evaluated by the trapezoidal rule on the solution's own node samples.  This
is spectrally accurate as long as x keeps a few node spacings of clearance
from the boundary; closer points (and interior points, where the layer
ansatz does not represent the scattered field) are rejected.

Far-field patterns drop the distance factors of the Hankel asymptotics:

    phi_inf(xhat) = gamma_p int e^{-i kappa_p xhat . z(s)} phi1(s) ds,
    gamma_sigma = e^{i pi/4} / sqrt(8 pi kappa_sigma),

and the displacement far fields are the radial/tangential projections
vp_inf = i kappa_p phi_inf xhat and vs_inf = -i kappa_s psi_inf xhat_perp.
"""

from dataclasses import dataclass

import numpy as np

from .geometry import BoundaryCurve, curve_eval
from .kernels import ElasticMedium
from .quadrature import trapezoid
from .specfun import hankel1
from .system import DensitySolution

__all__ = [
    "FarField",
    "NearBoundaryError",
    "eval_potentials",
    "eval_displacement",
    "exclusion_mask",
    "far_field",
]


class NearBoundaryError(ValueError):
    """Evaluation point is inside the obstacle or too close to its boundary
    for the plain trapezoid evaluation to be accurate."""


@dataclass(frozen=True)
class FarField:
    direction: np.ndarray
    phi_inf: complex
    psi_inf: complex
    vp_inf: np.ndarray
    vs_inf: np.ndarray


def _clearance(curve: BoundaryCurve, nodes: np.ndarray, x: np.ndarray):
    z_nodes = curve_eval(curve, nodes).z
    gaps = np.hypot(*(np.roll(z_nodes, -1, axis=0) - z_nodes).T)
    threshold = 3.0 * gaps.max()
    t_dense = 2 * np.pi * np.arange(4096) / 4096
    z_dense = curve_eval(curve, t_dense).z
    dist = np.min(
        np.hypot(x[..., None, 0] - z_dense[:, 0], x[..., None, 1] - z_dense[:, 1]), axis=-1
    )
    near = dist <= threshold
    rel = x[..., None, :] - z_dense
    ang = np.arctan2(rel[..., 1], rel[..., 0])
    dang = np.diff(np.concatenate([ang, ang[..., :1]], axis=-1), axis=-1)
    dang = (dang + np.pi) % (2 * np.pi) - np.pi
    inside = np.abs(dang.sum(axis=-1)) > np.pi
    return near, inside, threshold


def exclusion_mask(curve: BoundaryCurve, nodes: np.ndarray, x) -> np.ndarray:
    """True where x is inside the obstacle or too close to its boundary."""
    x = np.asarray(x, dtype=float)
    near, inside, _ = _clearance(curve, np.asarray(nodes, dtype=float), x)
    return near | inside


def _boundary_clearance(curve: BoundaryCurve, nodes: np.ndarray, x: np.ndarray):
    near, inside, threshold = _clearance(curve, nodes, x)
    if np.any(inside):
        raise NearBoundaryError("evaluation point lies inside the obstacle")
    if np.any(near):
        raise NearBoundaryError(
            f"evaluation point within {threshold:.3g} of the boundary; "
            "field values there are unreliable"
        )


def eval_potentials(
    solution: DensitySolution, medium: ElasticMedium, curve: BoundaryCurve, x
):
    """Scalar potentials (phi, psi) at exterior points x of shape (..., 2)."""
    x = np.asarray(x, dtype=float)
    _boundary_clearance(curve, solution.nodes, x)
    z = curve_eval(curve, solution.nodes).z
    r = np.hypot(x[..., None, 0] - z[:, 0], x[..., None, 1] - z[:, 1])
    phi = trapezoid(0.25j * hankel1(0, medium.kappa_p * r) * solution.phi1)
    psi = trapezoid(0.25j * hankel1(0, medium.kappa_s * r) * solution.phi2)
    return phi, psi


def eval_displacement(
    solution: DensitySolution, medium: ElasticMedium, curve: BoundaryCurve, x
):
    """Displacement v = grad phi + curl psi at exterior points, shape (..., 2)."""
    x = np.asarray(x, dtype=float)
    _boundary_clearance(curve, solution.nodes, x)
    z = curve_eval(curve, solution.nodes).z
    rel = x[..., None, :] - z
    r = np.hypot(rel[..., 0], rel[..., 1])
    # grad_x Phi(x, y; kappa) = -(i kappa / 4) H1(kappa r) (x - y)/r
    gp = trapezoid(
        (-0.25j * medium.kappa_p * hankel1(1, medium.kappa_p * r) / r * solution.phi1)[..., None, :]
        * np.moveaxis(rel, -1, -2)
    )
    gs = trapezoid(
        (-0.25j * medium.kappa_s * hankel1(1, medium.kappa_s * r) / r * solution.phi2)[..., None, :]
        * np.moveaxis(rel, -1, -2)
    )
    curl = np.stack([gs[..., 1], -gs[..., 0]], axis=-1)
    return gp + curl


def far_field(
    solution: DensitySolution, medium: ElasticMedium, curve: BoundaryCurve, xhat
) -> FarField:
    """Far-field pattern in the unit direction xhat."""
    xhat = np.asarray(xhat, dtype=float)
    if xhat.shape != (2,) or abs(np.hypot(*xhat) - 1.0) > 1e-12:
        raise ValueError("far-field direction must be a unit 2-vector")
    z = curve_eval(curve, solution.nodes).z
    gamma_p = np.exp(0.25j * np.pi) / np.sqrt(8 * np.pi * medium.kappa_p)
    gamma_s = np.exp(0.25j * np.pi) / np.sqrt(8 * np.pi * medium.kappa_s)
    phi_inf = gamma_p * trapezoid(np.exp(-1j * medium.kappa_p * (z @ xhat)) * solution.phi1)
    psi_inf = gamma_s * trapezoid(np.exp(-1j * medium.kappa_s * (z @ xhat)) * solution.phi2)
    xperp = np.array([-xhat[1], xhat[0]])
    return FarField(
        direction=xhat,
        phi_inf=complex(phi_inf),
        psi_inf=complex(psi_inf),
        vp_inf=1j * medium.kappa_p * phi_inf * xhat,
        vs_inf=-1j * medium.kappa_s * psi_inf * xperp,
    )
