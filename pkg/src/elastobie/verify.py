"""Manufactured-solution references and convergence-study orchestration.

A study solves the boundary system for a list of node counts and measures
discrete L2 errors of the scattered potentials on an observation circle.
Point-source boundary data admits an exact exterior reference (the source
field itself); plane-wave data is checked by self-convergence against a
fine reference run.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
import scipy.special as sp

from .fields import eval_potentials
from .geometry import BoundaryCurve, TWO_PI, curve_eval, make_curve
from .kernels import ElasticMedium
from .system import (
    IncidentField,
    SingularSystemError,
    assemble,
    boundary_rhs,
    solve,
)

logger = logging.getLogger(__name__)

__all__ = [
    "StudyConfig",
    "ErrorReport",
    "observation_points",
    "reference_fields",
    "l2_error",
    "run_study",
    "build_curve",
]


def observation_points(radius: float = 3.0, n_obs: int = 16) -> np.ndarray:
    """Return the 2*n_obs equispaced points on the circle of given radius."""
    if radius <= 0 or n_obs < 1:
        raise ValueError("need positive radius and at least one point pair")
    ang = np.pi * np.arange(2 * n_obs) / n_obs
    return radius * np.stack([np.cos(ang), np.sin(ang)], axis=-1)


def reference_fields(
    medium: ElasticMedium, xbar, x
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Point-source potentials H0(kappa |x - xbar|) and their gradients.

    Returns (phi, psi, grad_phi, grad_psi) evaluated at x; x may carry
    leading batch axes.  Gradients use d/dr H0 = -H1.
    """
    xbar = np.asarray(xbar, dtype=float)
    x = np.asarray(x, dtype=float)
    rel = x - xbar
    r = np.hypot(rel[..., 0], rel[..., 1])
    if np.any(r < 1e-12):
        raise ValueError("evaluation point coincides with the source")
    phi = sp.hankel1(0, medium.kappa_p * r)
    psi = sp.hankel1(0, medium.kappa_s * r)
    grad_phi = (-medium.kappa_p * sp.hankel1(1, medium.kappa_p * r) / r)[..., None] * rel
    grad_psi = (-medium.kappa_s * sp.hankel1(1, medium.kappa_s * r) / r)[..., None] * rel
    return phi, psi, grad_phi, grad_psi


def l2_error(values_numeric, values_reference, radius: float = 3.0) -> float:
    """Arc-length-weighted discrete L2 distance on the observation circle.

    sqrt( (2 pi R / m) sum |numeric - reference|^2 ) over the m samples.
    """
    num = np.asarray(values_numeric)
    ref = np.asarray(values_reference)
    if num.shape != ref.shape:
        raise ValueError("numeric and reference values must align")
    m = num.size
    if m == 0:
        raise ValueError("need at least one sample")
    return float(np.sqrt(TWO_PI * radius / m * np.sum(np.abs(num - ref) ** 2)))


@dataclass(frozen=True)
class StudyConfig:
    """One convergence experiment: obstacle, medium, data, and node counts."""

    shape: str = "apple"
    lam: float = 3.88
    mu: float = 2.56
    omega: float = np.pi
    incident: IncidentField = IncidentField(kind="point-source", source=(0.1, 0.2))
    n_list: Tuple[int, ...] = (8, 16, 32, 64)
    grading_p: Optional[float] = None
    shifted: bool = False
    obs_radius: float = 3.0
    obs_count: int = 16
    ref_n: Optional[int] = None
    radius: float = 1.0
    cos_coeffs: Optional[Tuple[float, ...]] = None
    sin_coeffs: Optional[Tuple[float, ...]] = None

    def __post_init__(self) -> None:
        ns = tuple(int(n) for n in self.n_list)
        object.__setattr__(self, "n_list", ns)
        if not ns:
            raise ValueError("n_list must not be empty")
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise ValueError("n_list must be strictly increasing")
        if self.obs_count < 1:
            raise ValueError("need at least one observation point pair")
        if self.ref_n is not None and self.ref_n <= ns[-1]:
            raise ValueError("reference n must exceed every study n")


def build_curve(config: StudyConfig) -> BoundaryCurve:
    return make_curve(
        config.shape,
        radius=config.radius,
        cos_coeffs=config.cos_coeffs,
        sin_coeffs=config.sin_coeffs,
        grading_p=config.grading_p,
    )


@dataclass(frozen=True)
class ErrorReport:
    n: int
    err_phi: float
    err_psi: float
    cond_estimate: float
    wall_time: float

    def __post_init__(self) -> None:
        if self.err_phi < 0 or self.err_psi < 0:
            raise ValueError("errors must be nonnegative")


def _check_geometry(config: StudyConfig, curve: BoundaryCurve) -> None:
    t = TWO_PI * np.arange(2048) / 2048
    z = curve_eval(curve, t).z
    if np.max(np.hypot(z[:, 0], z[:, 1])) >= config.obs_radius:
        raise ValueError("observation circle must strictly enclose the obstacle")


def _solve_once(
    medium: ElasticMedium,
    curve: BoundaryCurve,
    incident: IncidentField,
    n: int,
    shifted: bool,
):
    system = assemble(medium, curve, n, shifted=shifted)
    rhs = boundary_rhs(incident, medium, curve, system.nodes)
    return solve(system, rhs)


def run_study(config: StudyConfig) -> list[ErrorReport]:
    """Run the experiment and report per-n errors on the observation circle.

    A singular system at some n yields an infinite-error row; the remaining
    node counts still run.
    """
    curve = build_curve(config)
    _check_geometry(config, curve)
    medium = ElasticMedium(lam=config.lam, mu=config.mu, omega=config.omega)
    obs = observation_points(config.obs_radius, config.obs_count)

    if config.incident.kind == "point-source":
        ref_phi, ref_psi, _, _ = reference_fields(medium, config.incident.source, obs)
        ref_phi = config.incident.amplitude * ref_phi
        ref_psi = config.incident.amplitude * ref_psi
    else:
        if config.ref_n is None:
            raise ValueError("plane-wave studies need ref_n for self-convergence")
        ref_sol = _solve_once(medium, curve, config.incident, config.ref_n, config.shifted)
        ref_phi, ref_psi = eval_potentials(ref_sol, medium, curve, obs)

    reports = []
    for n in config.n_list:
        start = time.perf_counter()
        try:
            sol = _solve_once(medium, curve, config.incident, n, config.shifted)
            phi, psi = eval_potentials(sol, medium, curve, obs)
            err_phi = l2_error(phi, ref_phi, config.obs_radius)
            err_psi = l2_error(psi, ref_psi, config.obs_radius)
            cond = sol.cond_estimate
        except SingularSystemError as exc:
            logger.warning("n=%d: %s", n, exc)
            err_phi = err_psi = float("inf")
            cond = exc.cond_estimate if np.isfinite(exc.cond_estimate) else float("inf")
        reports.append(
            ErrorReport(
                n=n,
                err_phi=err_phi,
                err_psi=err_psi,
                cond_estimate=cond,
                wall_time=time.perf_counter() - start,
            )
        )
    return reports
