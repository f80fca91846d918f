"""Command-line interface producing CSV tables for external plotting.

Three subcommands share one option set: ``study`` runs a convergence study
(study.csv), ``farfield`` tabulates the far-field pattern on a direction
grid (farfield.csv), and ``solve`` samples the scattered potentials and
displacement on a point grid (field.csv).  Options may come from a flat
key=value config file; command-line flags win over the file.

All outputs are deterministic byte-for-byte; the study timing column is
zero unless --timing is given, since wall times are not reproducible.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .fields import eval_displacement, eval_potentials, exclusion_mask, far_field
from .geometry import make_curve
from .kernels import ElasticMedium
from .system import IncidentField, SingularSystemError, assemble, boundary_rhs, solve
from .verify import StudyConfig, observation_points, run_study

__all__ = ["main"]

_CHOICES_SHAPE = ["apple", "peach", "drop", "heart", "circle", "custom"]
_CHOICES_INCIDENT = ["plane-p", "plane-s", "point-source"]

_DEFAULTS = {
    "shape": "apple",
    "omega": float(np.pi),
    "lam": 3.88,
    "mu": 2.56,
    "incident": "point-source",
    "theta": float(np.pi / 6),
    "source_x": 0.1,
    "source_y": 0.2,
    "amplitude": 1.0,
    "n": None,
    "grading_p": None,
    "shifted": False,
    "obs_radius": 3.0,
    "obs_count": 16,
    "ref_n": None,
    "radius": 1.0,
    "custom_cos": None,
    "custom_sin": None,
    "out": ".",
    "timing": False,
    "grid": "circle",
    "rect": None,
    "nx": 20,
    "ny": 20,
}

_BOOL_WORDS = {
    "1": True, "true": True, "yes": True, "on": True,
    "0": False, "false": False, "no": False, "off": False,
}


class UsageError(ValueError):
    pass


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE", help="key=value settings file")
    common.add_argument("--shape", choices=_CHOICES_SHAPE)
    common.add_argument("--omega", type=float, help="angular frequency")
    common.add_argument("--lambda", dest="lam", type=float, help="first Lame parameter")
    common.add_argument("--mu", type=float, help="second Lame parameter")
    common.add_argument("--incident", choices=_CHOICES_INCIDENT)
    common.add_argument("--theta", type=float, help="plane-wave direction angle")
    common.add_argument("--source-x", type=float)
    common.add_argument("--source-y", type=float)
    common.add_argument("--amplitude", type=float)
    common.add_argument(
        "--n", action="append", type=int,
        help="collocation half-count; repeatable for studies, last wins elsewhere",
    )
    common.add_argument("--grading-p", type=float, help="corner grading exponent")
    common.add_argument("--shifted", action="store_true", default=None,
                        help="collocate between the grid points")
    common.add_argument("--obs-radius", type=float)
    common.add_argument("--obs-count", type=int,
                        help="half-count of observation points / directions")
    common.add_argument("--ref-n", type=int, help="reference n for self-convergence")
    common.add_argument("--radius", type=float, help="circle shape radius")
    common.add_argument("--custom-cos", type=str, help="comma-separated coefficients")
    common.add_argument("--custom-sin", type=str, help="comma-separated coefficients")
    common.add_argument("--out", metavar="DIR", help="output directory")

    parser = argparse.ArgumentParser(
        prog="elastobie",
        description="boundary-integral solver for elastic scattering by a rigid obstacle",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    study = sub.add_parser("study", parents=[common], help="convergence study -> study.csv")
    study.add_argument("--timing", action="store_true", default=None,
                       help="record wall times (breaks byte determinism)")

    sub.add_parser("farfield", parents=[common], help="far-field pattern -> farfield.csv")

    solve_p = sub.add_parser("solve", parents=[common], help="field samples -> field.csv")
    solve_p.add_argument("--grid", choices=["circle", "rect"])
    solve_p.add_argument("--rect", type=float, nargs=4,
                         metavar=("XMIN", "XMAX", "YMIN", "YMAX"))
    solve_p.add_argument("--nx", type=int)
    solve_p.add_argument("--ny", type=int)
    return parser


def _parse_config_file(path: str) -> dict:
    settings = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"config line has no '=': {raw!r}")
        settings[key.strip()] = value.strip()
    return settings


def _coerce(key: str, text: str):
    if key in ("shape", "incident", "grid", "out"):
        return text
    if key in ("shifted", "timing"):
        word = text.lower()
        if word not in _BOOL_WORDS:
            raise UsageError(f"config key {key!r} expects a boolean, got {text!r}")
        return _BOOL_WORDS[word]
    if key == "n":
        return [int(v) for v in text.split(",") if v.strip()]
    if key in ("obs-count", "nx", "ny", "ref-n"):
        return int(text)
    if key in ("custom-cos", "custom-sin", "rect"):
        return [float(v) for v in text.split(",") if v.strip()]
    return float(text)


def _settings(args: argparse.Namespace) -> dict:
    merged = dict(_DEFAULTS)
    if getattr(args, "config", None):
        for key, text in _parse_config_file(args.config).items():
            attr = key.replace("-", "_")
            if attr not in merged:
                raise UsageError(f"unknown config key {key!r}")
            try:
                merged[attr] = _coerce(key, text)
            except ValueError as exc:
                raise UsageError(f"bad config value for {key!r}: {text!r}") from exc
    for attr, value in vars(args).items():
        if attr in ("command", "config") or attr not in merged:
            continue
        if value is not None:
            merged[attr] = value
    for attr in ("custom_cos", "custom_sin"):
        if isinstance(merged[attr], str):
            merged[attr] = _coerce(attr.replace("_", "-"), merged[attr])
    if merged["shape"] != "custom" and (merged["custom_cos"] or merged["custom_sin"]):
        raise UsageError("custom coefficients require --shape custom")
    return merged


def _fmt(value: float) -> str:
    return repr(float(value))


def _write_csv(settings: dict, name: str, rows: list) -> Path:
    out_dir = Path(settings["out"])
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / name
    path.write_text("\n".join(rows) + "\n")
    return path


def _incident(settings: dict) -> IncidentField:
    if settings["incident"] == "point-source":
        return IncidentField(
            kind="point-source",
            source=(settings["source_x"], settings["source_y"]),
            amplitude=settings["amplitude"],
        )
    return IncidentField(
        kind=settings["incident"],
        theta=settings["theta"],
        amplitude=settings["amplitude"],
    )


def _curve(settings: dict):
    cos_c = settings["custom_cos"]
    sin_c = settings["custom_sin"]
    return make_curve(
        settings["shape"],
        radius=settings["radius"],
        cos_coeffs=tuple(cos_c) if cos_c else None,
        sin_coeffs=tuple(sin_c) if sin_c else None,
        grading_p=settings["grading_p"],
    )


def _require_n(settings: dict) -> list:
    if not settings["n"]:
        raise UsageError("at least one --n value is required")
    return settings["n"]


def _solve_single(settings: dict, medium, curve):
    n = _require_n(settings)[-1]
    system = assemble(medium, curve, n, shifted=settings["shifted"])
    rhs = boundary_rhs(_incident(settings), medium, curve, system.nodes)
    return solve(system, rhs)


def cmd_study(settings: dict) -> int:
    config = StudyConfig(
        shape=settings["shape"],
        lam=settings["lam"],
        mu=settings["mu"],
        omega=settings["omega"],
        incident=_incident(settings),
        n_list=tuple(_require_n(settings)),
        grading_p=settings["grading_p"],
        shifted=settings["shifted"],
        obs_radius=settings["obs_radius"],
        obs_count=settings["obs_count"],
        ref_n=settings["ref_n"],
        radius=settings["radius"],
        cos_coeffs=tuple(settings["custom_cos"]) if settings["custom_cos"] else None,
        sin_coeffs=tuple(settings["custom_sin"]) if settings["custom_sin"] else None,
    )
    rows = ["n,err_phi,err_psi,cond_estimate,wall_ms"]
    for report in run_study(config):
        wall_ms = 1000.0 * report.wall_time if settings["timing"] else 0.0
        rows.append(
            f"{report.n},{_fmt(report.err_phi)},{_fmt(report.err_psi)},"
            f"{_fmt(report.cond_estimate)},{_fmt(wall_ms)}"
        )
    path = _write_csv(settings, "study.csv", rows)
    print(f"wrote {path}")
    return 0


def cmd_farfield(settings: dict) -> int:
    if settings["obs_count"] < 1:
        raise UsageError("direction count must be positive")
    medium = ElasticMedium(lam=settings["lam"], mu=settings["mu"], omega=settings["omega"])
    curve = _curve(settings)
    solution = _solve_single(settings, medium, curve)
    angles = np.pi * np.arange(2 * settings["obs_count"]) / settings["obs_count"]
    rows = ["theta,phi_inf_re,phi_inf_im,psi_inf_re,psi_inf_im"]
    for theta in angles:
        ff = far_field(solution, medium, curve, np.array([np.cos(theta), np.sin(theta)]))
        rows.append(
            f"{_fmt(theta)},{_fmt(ff.phi_inf.real)},{_fmt(ff.phi_inf.imag)},"
            f"{_fmt(ff.psi_inf.real)},{_fmt(ff.psi_inf.imag)}"
        )
    path = _write_csv(settings, "farfield.csv", rows)
    print(f"wrote {path}")
    return 0


def _solve_grid(settings: dict) -> np.ndarray:
    if settings["grid"] == "circle":
        if settings["obs_count"] < 1:
            raise UsageError("grid count must be positive")
        return observation_points(settings["obs_radius"], settings["obs_count"])
    if settings["rect"] is None:
        raise UsageError("rect grid needs --rect XMIN XMAX YMIN YMAX")
    xmin, xmax, ymin, ymax = settings["rect"]
    if not (xmax > xmin and ymax > ymin) or settings["nx"] < 1 or settings["ny"] < 1:
        raise UsageError("rectangle must be nonempty with positive sample counts")
    xs = np.linspace(xmin, xmax, settings["nx"])
    ys = np.linspace(ymin, ymax, settings["ny"])
    return np.stack(np.meshgrid(xs, ys, indexing="ij"), axis=-1).reshape(-1, 2)


def cmd_solve(settings: dict) -> int:
    medium = ElasticMedium(lam=settings["lam"], mu=settings["mu"], omega=settings["omega"])
    curve = _curve(settings)
    solution = _solve_single(settings, medium, curve)
    points = _solve_grid(settings)

    excluded = exclusion_mask(curve, solution.nodes, points)
    phi = np.zeros(len(points), dtype=complex)
    psi = np.zeros(len(points), dtype=complex)
    v = np.zeros((len(points), 2), dtype=complex)
    keep = ~excluded
    if np.any(keep):
        phi[keep], psi[keep] = eval_potentials(solution, medium, curve, points[keep])
        v[keep] = eval_displacement(solution, medium, curve, points[keep])
    else:
        print("warning: every grid point lies in the exclusion zone", file=sys.stderr)

    rows = ["x,y,phi_re,phi_im,psi_re,psi_im,v1_re,v1_im,v2_re,v2_im,excluded"]
    for i, (x, y) in enumerate(points):
        rows.append(
            f"{_fmt(x)},{_fmt(y)},"
            f"{_fmt(phi[i].real)},{_fmt(phi[i].imag)},"
            f"{_fmt(psi[i].real)},{_fmt(psi[i].imag)},"
            f"{_fmt(v[i, 0].real)},{_fmt(v[i, 0].imag)},"
            f"{_fmt(v[i, 1].real)},{_fmt(v[i, 1].imag)},"
            f"{int(excluded[i])}"
        )
    path = _write_csv(settings, "field.csv", rows)
    print(f"wrote {path}")
    return 0


_COMMANDS = {"study": cmd_study, "farfield": cmd_farfield, "solve": cmd_solve}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        settings = _settings(args)
        return _COMMANDS[args.command](settings)
    except SingularSystemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
