"""Acceptance gate: one test per criterion, each printing a PASS line.

Run with `pytest -v tests/test_acceptance.py` (add -s to see the lines).
"""

import time

import numpy as np
import pytest

from elastobie import cli
from elastobie.fields import eval_displacement, far_field
from elastobie.geometry import collocation_nodes, make_curve
from elastobie.kernels import ElasticMedium, kernel_h, kernel_k
from elastobie.quadrature import (
    cauchy_weight_matrix,
    log_weight_matrix,
    log_weights,
    sinlog_weight_matrix,
    trapezoid,
)
from elastobie.specfun import bessel_j, bessel_y
from elastobie.system import IncidentField, assemble, boundary_rhs, solve
from elastobie.verify import StudyConfig, reference_fields, run_study


def _report(name: str, detail: str) -> None:
    print(f"PASS {name}: {detail}")


def _phi_psi(reports):
    return {r.n: (r.err_phi, r.err_psi) for r in reports}


def test_criterion_1_smooth_spectral_convergence():
    start = time.perf_counter()
    errs = _phi_psi(run_study(StudyConfig(shape="apple", n_list=(16, 32, 64, 128))))
    elapsed = time.perf_counter() - start
    for err in errs[16]:
        assert 2e-6 <= err <= 2e-2
    for err in errs[32]:
        assert err <= 1e-5
    for err in errs[64]:
        assert err <= 1e-9
    for err in errs[128]:
        assert err <= 1e-12
    assert elapsed < 10.0
    _report(
        "criterion 1 (smooth-obstacle spectral convergence)",
        f"apple err_phi(16..128) = {errs[16][0]:.4e}, {errs[32][0]:.4e}, "
        f"{errs[64][0]:.4e}, {errs[128][0]:.4e} in {elapsed:.1f}s",
    )


def test_criterion_2_algebraic_rate_on_c2_boundary():
    start = time.perf_counter()
    reports = run_study(StudyConfig(shape="peach", n_list=(64, 128, 256, 512, 1024)))
    elapsed = time.perf_counter() - start
    ratios = []
    for a, b in zip(reports, reports[1:]):
        for ratio in (a.err_phi / b.err_phi, a.err_psi / b.err_psi):
            assert 4.0 <= ratio <= 16.0
        ratios.append(a.err_phi / b.err_phi)
    assert elapsed < 60.0
    _report(
        "criterion 2 (cubic rate on C2 boundary)",
        "peach phi ratios " + ", ".join(f"{r:.2f}" for r in ratios) + f" in {elapsed:.1f}s",
    )


@pytest.mark.slow
def test_criterion_3_high_frequency():
    errs = _phi_psi(
        run_study(StudyConfig(shape="apple", omega=100 * np.pi, n_list=(256, 512)))
    )
    assert errs[256][0] <= 1e-4
    assert errs[512][0] <= 1e-9
    _report(
        "criterion 3 (high frequency, omega = 100 pi)",
        f"apple err_phi(256) = {errs[256][0]:.4e}, err_phi(512) = {errs[512][0]:.4e}",
    )


def test_criterion_4_corner_domains_with_graded_mesh():
    drop = _phi_psi(
        run_study(
            StudyConfig(shape="drop", n_list=(32, 64, 128, 256, 512),
                        grading_p=2.0, shifted=True)
        )
    )
    assert drop[32][0] <= 1e-5
    assert drop[512][0] <= 1e-10
    heart = _phi_psi(
        run_study(
            StudyConfig(
                shape="heart",
                incident=IncidentField(kind="point-source", source=(-0.5, 0.2)),
                n_list=(64, 128, 256),
                grading_p=2.0,
                shifted=True,
            )
        )
    )
    assert heart[256][0] <= 1e-8
    _report(
        "criterion 4 (graded-mesh corners)",
        f"drop err(32) = {drop[32][0]:.4e}, err(512) = {drop[512][0]:.4e}; "
        f"heart err(256) = {heart[256][0]:.4e}",
    )


def test_criterion_5_property_suite():
    start = time.perf_counter()
    n = 32
    grid = np.pi * np.arange(2 * n) / n

    # log-rule exactness on the Fourier basis
    rmat = log_weight_matrix(n)
    for m in range(-(n - 1), n):
        f = np.exp(1j * m * grid)
        expect = 0.0 if m == 0 else -2 * np.pi / abs(m) * f
        assert np.max(np.abs(rmat @ f - expect)) <= 1e-12

    # discrete Hilbert-type operator eigenvalues
    umat = cauchy_weight_matrix(n)
    vmat = sinlog_weight_matrix(n)
    mean_term = lambda f: (0.5j / np.pi) * trapezoid(f)
    for m in range(-(n - 1), n):
        f = np.exp(1j * m * grid)
        zeta = 1j * np.sign(m) if m else 1j
        assert np.max(np.abs(umat @ f + mean_term(f) - zeta * f)) <= 1e-12
        if abs(m) >= 2:
            xi = 0.25j * (1.0 / abs(m - 1) - 1.0 / abs(m + 1))
        elif abs(m) == 1:
            xi = -0.125j * m
        else:
            xi = 1j
        h2f = (0.25 / np.pi) * (vmat @ f) + mean_term(f)
        assert np.max(np.abs(h2f - xi * f)) <= 1e-12

    # sine-log rule reduces to the log rule at the node offsets
    reduction = vmat - rmat * np.sin(grid[:, None] - grid[None, :])
    assert np.max(np.abs(reduction)) <= 1e-14

    # kernel diagonal limits and off-diagonal reconstruction
    medium = ElasticMedium(lam=3.88, mu=2.56, omega=np.pi)
    curve = make_curve("apple")
    t = np.array([0.0, 1.3, 2.5])
    k1d, k2d = kernel_k(medium, curve, "p", t, t)
    assert np.max(np.abs(k1d)) == 0.0
    h1d, h2d, h3d, h1td = kernel_h(medium, curve, "s", t, t)
    assert np.max(np.abs(h1d - 1 / (2 * np.pi))) <= 1e-15
    assert np.max(np.abs(h2d)) == 0.0 and np.max(np.abs(h3d)) == 0.0
    s = t + np.array([0.8, 2.0, -1.1])
    log_term = np.log(4 * np.sin((t - s) / 2) ** 2)
    k1, k2 = kernel_k(medium, curve, "p", t, s)
    h1, h2, h3, _ = kernel_h(medium, curve, "s", t, s)
    k_full = k1 * log_term + k2
    h_full = h1 * (1 / np.tan((s - t) / 2)) + h2 * log_term + h3
    from elastobie.geometry import curve_eval

    for i in range(3):
        pt, ps = curve_eval(curve, t[i]), curve_eval(curve, s[i])
        d = ps.z - pt.z
        r = np.hypot(*d)
        from elastobie.specfun import hankel1

        nu = np.array([pt.dz[1], -pt.dz[0]])
        nperp = pt.dz
        kappa = medium.kappa_p
        direct_k = 0.5j * kappa * (nu @ d) * hankel1(1, kappa * r) / r
        assert abs(k_full[i] - direct_k) <= 1e-12 * max(1.0, abs(direct_k))
        kappa = medium.kappa_s
        direct_h = 0.5j * kappa * (nperp @ d) * hankel1(1, kappa * r) / r
        assert abs(h_full[i] - direct_h) <= 1e-12 * max(1.0, abs(direct_h))

    # Bessel Wronskian J_{m+1} Y_m - J_m Y_{m+1} = 2 / (pi x)
    x = np.array([0.3, 1.0, 2.7, 9.4, 31.0])
    for m in (0,):
        wron = bessel_j(m + 1, x) * bessel_y(m, x) - bessel_j(m, x) * bessel_y(m + 1, x)
        assert np.max(np.abs(wron * np.pi * x / 2 - 1.0)) <= 1e-13

    # manufactured gradients against central differences
    med = ElasticMedium(lam=0.5, mu=0.25, omega=1.0)
    xp = np.array([1.1, -0.6])
    h = 1e-6
    _, _, gp, gs = reference_fields(med, (0.1, 0.2), xp)
    for axis, e in enumerate((np.array([h, 0]), np.array([0, h]))):
        pp, sp_, _, _ = reference_fields(med, (0.1, 0.2), xp + e)
        pm, sm, _, _ = reference_fields(med, (0.1, 0.2), xp - e)
        assert abs(gp[axis] - (pp - pm) / (2 * h)) <= 1e-6
        assert abs(gs[axis] - (sp_ - sm) / (2 * h)) <= 1e-6

    # far-field / near-field asymptotic slope
    sys64 = assemble(medium, curve, 64)
    sol = solve(sys64, boundary_rhs(IncidentField(kind="plane-p", theta=np.pi / 6),
                                    medium, curve, sys64.nodes))
    xhat = np.array([np.cos(0.7), np.sin(0.7)])
    ff = far_field(sol, medium, curve, xhat)
    radii = np.array([100.0, 200.0, 400.0])
    residuals = []
    for rr in radii:
        v = eval_displacement(sol, medium, curve, rr * xhat)
        asym = (
            np.exp(1j * medium.kappa_p * rr) / np.sqrt(rr) * ff.vp_inf
            + np.exp(1j * medium.kappa_s * rr) / np.sqrt(rr) * ff.vs_inf
        )
        residuals.append(np.linalg.norm(v - asym))
    slope = np.polyfit(np.log(radii), np.log(residuals), 1)[0]
    assert abs(slope - (-1.5)) <= 0.3

    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    _report("criterion 5 (property suite)",
            f"quadrature/operator/kernel/Wronskian/slope checks in {elapsed:.1f}s")


def test_criterion_6_cli_determinism(tmp_path):
    cases = [
        (["study", "--shape", "apple", "--n", "8", "--n", "16"], "study.csv"),
        (["farfield", "--n", "8", "--obs-count", "4"], "farfield.csv"),
        (["solve", "--n", "8", "--obs-count", "4"], "field.csv"),
    ]
    for args, name in cases:
        a, b = tmp_path / f"a_{name}", tmp_path / f"b_{name}"
        assert cli.main(args + ["--out", str(a)]) == 0
        assert cli.main(args + ["--out", str(b)]) == 0
        assert (a / name).read_bytes() == (b / name).read_bytes()
    _report("criterion 6 (CLI determinism)",
            "study, farfield, and solve reruns byte-identical")
