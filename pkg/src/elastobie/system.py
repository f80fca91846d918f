"""Assembly and solution of the full-discrete boundary integral system.

The two coupled densities phi_1 (compressional) and phi_2 (shear) satisfy

    w1_i = -phi1_i + sum_j X^p_ij phi1_j + sum_j Y^s_ij phi2_j
    w2_i =  phi2_i + sum_j Y^p_ij phi1_j - sum_j X^s_ij phi2_j

with weights built from the split kernels and the singular quadrature rules:

    X_ij = R_j(t_i) k1(t_i, s_j) + (pi/n) k2(t_i, s_j)
    Y_ij = U_j(t_i) + R_j(t_i) h2(t_i, s_j) + (pi/n) [h3(t_i, s_j) + h1_tilde(t_i, s_j)]

The mean terms of the cotangent and log-sine operators cancel against the
recentring of h3 and are omitted.  The Y row uses the reduced form: at node
offsets the sinlog weights satisfy V_j(t_i) = R_j(t_i) sin(t_i - s_j), which
absorbs the h2_tilde recentring exactly (this holds for shifted collocation
too, since the offsets stay integer multiples of pi/n).

Corner domains use a graded parametrization together with shifted nodes;
the assembled system never evaluates the curve at the corner itself.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.linalg as sla
from scipy.linalg import lapack

from .geometry import BoundaryCurve, collocation_nodes, curve_eval, frame
from .kernels import ElasticMedium, kernel_h, kernel_k
from .quadrature import cauchy_weight_matrix, log_weight_matrix
from .specfun import hankel1

__all__ = [
    "IncidentField",
    "DiscreteSystem",
    "BoundaryData",
    "DensitySolution",
    "SingularSystemError",
    "assemble",
    "boundary_rhs",
    "solve",
    "incident_displacement",
]

logger = logging.getLogger(__name__)

INCIDENT_KINDS = ("plane-p", "plane-s", "point-source")


class SingularSystemError(RuntimeError):
    """The discrete system is numerically singular (frequency too close to an
    interior eigenvalue of the obstacle, where the method is not defined)."""

    def __init__(self, message: str, cond_estimate: float):
        super().__init__(message)
        self.cond_estimate = cond_estimate


@dataclass(frozen=True)
class IncidentField:
    """Excitation: a plane wave of the given type and direction angle, or a
    manufactured point source at ``source`` radiating both potentials."""

    kind: str
    theta: float = 0.0
    source: Optional[tuple] = None
    amplitude: float = 1.0

    def __post_init__(self):
        if self.kind not in INCIDENT_KINDS:
            raise ValueError(f"incident kind must be one of {INCIDENT_KINDS}")
        if self.kind == "point-source":
            if self.source is None or len(self.source) != 2:
                raise ValueError("point-source excitation needs source=(x, y)")
            object.__setattr__(self, "source", (float(self.source[0]), float(self.source[1])))
        if not np.isfinite(self.theta) or not np.isfinite(self.amplitude):
            raise ValueError("theta and amplitude must be finite")


@dataclass(frozen=True)
class DiscreteSystem:
    n: int
    shifted: bool
    nodes: np.ndarray
    matrix: np.ndarray
    medium: ElasticMedium
    curve: BoundaryCurve


@dataclass(frozen=True)
class BoundaryData:
    w1: np.ndarray
    w2: np.ndarray


@dataclass(frozen=True)
class DensitySolution:
    nodes: np.ndarray
    phi1: np.ndarray
    phi2: np.ndarray
    curve: BoundaryCurve
    medium: ElasticMedium
    cond_estimate: float


def assemble(
    medium: ElasticMedium, curve: BoundaryCurve, n: int, shifted: bool = False
) -> DiscreteSystem:
    """Build the 4n x 4n collocation matrix at the 2n nodes."""
    if n < 4:
        raise ValueError("need n >= 4")
    nodes = collocation_nodes(n, shifted)
    frame(curve, nodes)  # raises on a degenerate node (corner without shift)

    rmat = log_weight_matrix(n)
    umat = cauchy_weight_matrix(n)
    pin = np.pi / n
    t = nodes[:, None]
    s = nodes[None, :]

    def x_block(sigma):
        k1, k2 = kernel_k(medium, curve, sigma, t, s)
        return rmat * k1 + pin * k2

    def y_block(sigma):
        _, h2, h3, h1t = kernel_h(medium, curve, sigma, t, s)
        return umat + rmat * h2 + pin * (h3 + h1t)

    eye = np.eye(2 * n)
    a = np.empty((4 * n, 4 * n), dtype=complex)
    a[: 2 * n, : 2 * n] = x_block("p") - eye
    a[: 2 * n, 2 * n :] = y_block("s")
    a[2 * n :, : 2 * n] = y_block("p")
    a[2 * n :, 2 * n :] = eye - x_block("s")
    return DiscreteSystem(n=n, shifted=shifted, nodes=nodes, matrix=a, medium=medium, curve=curve)


def incident_displacement(incident: IncidentField, medium: ElasticMedium, x: np.ndarray) -> np.ndarray:
    """Plane-wave displacement at points x (..., 2).  P-waves oscillate along
    the propagation direction d, S-waves along the perpendicular d_perp."""
    if incident.kind == "point-source":
        raise ValueError("a point source has no incident displacement field")
    x = np.asarray(x, dtype=float)
    d = np.array([np.cos(incident.theta), np.sin(incident.theta)])
    if incident.kind == "plane-p":
        kappa, pol = medium.kappa_p, d
    else:
        kappa, pol = medium.kappa_s, np.array([-d[1], d[0]])
    phase = np.exp(1j * kappa * (x @ d))
    return incident.amplitude * phase[..., None] * pol


def _winding_number(curve: BoundaryCurve, point: np.ndarray, samples: int = 2048) -> float:
    t = 2 * np.pi * np.arange(samples) / samples
    rel = curve_eval(curve, t).z - point
    ang = np.arctan2(rel[:, 1], rel[:, 0])
    dang = np.diff(np.concatenate([ang, ang[:1]]))
    dang = (dang + np.pi) % (2 * np.pi) - np.pi
    return float(dang.sum() / (2 * np.pi))


def _require_interior(curve: BoundaryCurve, point: np.ndarray):
    t = 2 * np.pi * np.arange(2048) / 2048
    z = curve_eval(curve, t).z
    dist = np.min(np.hypot(z[:, 0] - point[0], z[:, 1] - point[1]))
    if dist <= 1e-6 or abs(_winding_number(curve, point) - 1.0) > 0.25:
        raise ValueError("point source must lie strictly inside the obstacle")


def boundary_rhs(
    incident: IncidentField,
    medium: ElasticMedium,
    curve: BoundaryCurve,
    nodes: np.ndarray,
) -> BoundaryData:
    """Sample w_l = 2 f_l |z'| at the nodes, where f1 = nu . grad phi + tau
    . grad psi and f2 = tau . grad phi - nu . grad psi are the potential
    traces matching a rigid-boundary reflection of the excitation."""
    nodes = np.asarray(nodes, dtype=float)
    f = frame(curve, nodes)
    z = curve_eval(curve, nodes).z
    nu = f.n / f.speed[:, None]
    tau = np.stack([-nu[:, 1], nu[:, 0]], axis=-1)

    if incident.kind == "point-source":
        center = np.asarray(incident.source, dtype=float)
        _require_interior(curve, center)
        grad_phi = _h0_gradient(medium.kappa_p, center, z)
        grad_psi = _h0_gradient(medium.kappa_s, center, z)
        f1 = np.sum(nu * grad_phi, axis=-1) + np.sum(tau * grad_psi, axis=-1)
        f2 = np.sum(tau * grad_phi, axis=-1) - np.sum(nu * grad_psi, axis=-1)
        f1 = incident.amplitude * f1
        f2 = incident.amplitude * f2
    else:
        u = incident_displacement(incident, medium, z)
        f1 = -np.sum(nu * u, axis=-1)
        f2 = -np.sum(tau * u, axis=-1)

    return BoundaryData(w1=2 * f1 * f.speed, w2=2 * f2 * f.speed)


def _h0_gradient(kappa: float, center: np.ndarray, x: np.ndarray) -> np.ndarray:
    # grad_x H0(kappa |x - c|) = -kappa H1(kappa r) (x - c)/r
    rel = x - center
    r = np.hypot(rel[..., 0], rel[..., 1])
    return (-kappa * hankel1(1, kappa * r) / r)[..., None] * rel


def solve(system: DiscreteSystem, rhs: BoundaryData) -> DensitySolution:
    """LU-solve the collocation system; raises SingularSystemError when the
    one-norm condition estimate or the residual indicates breakdown."""
    m = 2 * system.n
    w = np.concatenate([np.asarray(rhs.w1), np.asarray(rhs.w2)]).astype(complex)
    if w.shape != (2 * m,):
        raise ValueError("rhs length does not match the system")

    anorm = np.abs(system.matrix).sum(axis=0).max()
    lu, piv = sla.lu_factor(system.matrix)
    rcond, info = lapack.zgecon(lu, anorm, norm="1")
    if info != 0 or rcond == 0.0 or not np.isfinite(rcond):
        raise SingularSystemError("discrete system is singular", cond_estimate=np.inf)
    cond = 1.0 / rcond
    logger.info("n=%d cond estimate %.3e", system.n, cond)

    x = sla.lu_solve((lu, piv), w)
    residual = np.abs(system.matrix @ x - w).max()
    scale = np.abs(w).max()
    rel = residual / scale if scale > 0 else residual
    if not np.isfinite(rel) or rel > 1e-10:
        raise SingularSystemError(
            f"solver residual {rel:.2e} exceeds 1e-10 (condition estimate {cond:.2e})",
            cond_estimate=cond,
        )
    return DensitySolution(
        nodes=system.nodes,
        phi1=x[:m],
        phi2=x[m:],
        curve=system.curve,
        medium=system.medium,
        cond_estimate=cond,
    )
