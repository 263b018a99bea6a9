"""Command-line interface.

Subcommands: purity, phase-shift, duration, geodesic, complexity, sweep,
verify.  Configuration comes from a JSON file (--config) with individual
flag overrides taking precedence.  Output is CSV or JSON on stdout or --out.
Numbers are printed as shortest round-trip decimals, so identical inputs
produce byte-identical output.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Sequence

from . import complexity as _complexity
from . import oracle as _oracle
from . import scattering as _scattering
from .errors import (
    ConfigError,
    GeodesicIntegrationError,
    IgscatterError,
    ModelParameterError,
    PhaseShiftBranchError,
    QuadratureError,
    SeriesDomainError,
)
from .geodesics import GeodesicState, duration_numeric, integrate_geodesic

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

PURITY_COLUMNS = (
    "k0",
    "sigma0",
    "R0",
    "V",
    "d",
    "r_IG",
    "theta_exact",
    "theta_lowE",
    "P_general",
    "P_lowE",
    "regime_low_energy",
    "regime_weak_correlation",
)

PHASE_COLUMNS = (
    "k0",
    "d",
    "V",
    "r_IG",
    "k_in",
    "k_out",
    "theta_exact",
    "theta_lowE",
    "theta_potential",
    "regime_low_energy",
    "regime_weak_correlation",
)

DURATION_COLUMNS = ("k0", "sigma0", "r", "epsilon", "eta_delta", "r_upper_bound", "duration")

SWEEP_PARAMS = ("V", "k0", "sigma0", "R0", "d", "r")

_OVERRIDE_FLAGS = ("mu_reduced", "V", "d", "k0", "sigma0", "R0", "a_s")


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit(args, header: Sequence[str], rows: Sequence[dict]) -> None:
    if args.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        lines = [",".join(header)]
        for row in rows:
            lines.append(",".join(_fmt(row[name]) for name in header))
        text = "\n".join(lines) + "\n"
    _write(args, text)


def _write(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_config(args) -> _scattering.ScatteringConfig:
    data = {}
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
    for name in _OVERRIDE_FLAGS:
        value = getattr(args, name, None)
        if value is not None:
            data[name] = value
    return _scattering.ScatteringConfig.from_dict(data)


def _purity_row(cfg: _scattering.ScatteringConfig) -> dict:
    report = _scattering.phase_shift_report(cfg)
    return {
        "k0": cfg.k0,
        "sigma0": cfg.sigma0,
        "R0": cfg.R0,
        "V": cfg.V,
        "d": cfg.d,
        "r_IG": _scattering.r_ig_from_potential(cfg),
        "theta_exact": report.theta_exact,
        "theta_lowE": report.theta_low_energy,
        "P_general": _scattering.purity_general(cfg, report.theta_exact),
        "P_lowE": _scattering.purity_low_energy(cfg),
        "regime_low_energy": report.regime_low_energy,
        "regime_weak_correlation": report.regime_weak_correlation,
    }


def _cmd_purity(args) -> int:
    cfg = _load_config(args)
    _emit(args, PURITY_COLUMNS, [_purity_row(cfg)])
    return EXIT_OK


def _cmd_phase_shift(args) -> int:
    cfg = _load_config(args)
    wv = _scattering.wave_vectors(cfg)
    report = _scattering.phase_shift_report(cfg)
    row = {
        "k0": cfg.k0,
        "d": cfg.d,
        "V": cfg.V,
        "r_IG": _scattering.r_ig_from_potential(cfg),
        "k_in": wv.k_in if wv.k_in is not None else "evanescent",
        "k_out": wv.k_out,
        "theta_exact": report.theta_exact,
        "theta_lowE": report.theta_low_energy,
        "theta_potential": report.theta_potential,
        "regime_low_energy": report.regime_low_energy,
        "regime_weak_correlation": report.regime_weak_correlation,
    }
    _emit(args, PHASE_COLUMNS, [row])
    return EXIT_OK


def _effective_r(args, cfg) -> float:
    if args.r is not None:
        return args.r
    return _scattering.r_ig_from_potential(cfg)


def _cmd_duration(args) -> int:
    cfg = _load_config(args)
    r = _effective_r(args, cfg)
    row = {
        "k0": cfg.k0,
        "sigma0": cfg.sigma0,
        "r": r,
        "epsilon": args.epsilon,
        "eta_delta": _scattering.eta_delta(cfg.k0, cfg.sigma0),
        "r_upper_bound": _scattering.r_upper_bound(cfg.k0, cfg.sigma0),
        "duration": _scattering.entanglement_duration(cfg.k0, cfg.sigma0, r),
    }
    header = list(DURATION_COLUMNS)
    if args.numeric:
        row["duration_numeric"] = duration_numeric(cfg.k0, cfg.sigma0, r, args.epsilon)
        header.append("duration_numeric")
    _emit(args, header, [row])
    return EXIT_OK


def _cmd_geodesic(args) -> int:
    state = GeodesicState(
        (args.mu1, args.mu2, args.sigma), (args.dmu1, args.dmu2, args.dsigma)
    )
    path = integrate_geodesic(state, args.r, args.tau_max, args.tol)
    if args.format == "json":
        rows = [
            {
                "tau": float(path.tau[i]),
                "mu_k1": float(path.theta[i, 0]),
                "mu_k2": float(path.theta[i, 1]),
                "sigma": float(path.theta[i, 2]),
                "dmu_k1": float(path.velocity[i, 0]),
                "dmu_k2": float(path.velocity[i, 1]),
                "dsigma": float(path.velocity[i, 2]),
                "speed2": float(path.speed2[i]),
            }
            for i in range(len(path))
        ]
        _write(args, json.dumps({"speed_drift": path.speed_drift, "samples": rows}, indent=2) + "\n")
        return EXIT_OK
    import io

    buf = io.StringIO()
    path.write_csv(buf)
    _write(args, buf.getvalue())
    return EXIT_OK


def _cmd_complexity(args) -> int:
    cfg = _load_config(args)
    if args.r is not None:
        # re-express the requested correlation as a potential height
        cfg = cfg.replace(V=args.r * cfg.k0 * cfg.k0 / (2.0 * cfg.mu_reduced))
    report = _complexity.complexity_ratio(cfg, tol=args.tol)
    if args.format == "csv":
        header = ("c_uncorr", "c_corr", "ratio", "predicted_ratio", "r_recovered")
        _emit(args, header, [report.to_dict()])
    else:
        _write(args, report.to_json() + "\n")
    return EXIT_OK


@dataclass(frozen=True)
class SweepSpec:
    """One-parameter sweep: which field to vary and the value grid."""

    param_name: str
    start: float
    stop: float
    steps: int
    scale: str = "linear"

    def __post_init__(self):
        if self.param_name not in SWEEP_PARAMS:
            raise ConfigError(f"sweep parameter must be one of {SWEEP_PARAMS}")
        if self.steps < 2:
            raise ConfigError("sweep needs steps >= 2")
        if not self.start < self.stop:
            raise ConfigError("sweep requires from < to")
        if self.scale == "log" and self.start <= 0.0:
            raise ConfigError("log-scale sweep requires from > 0")
        if self.scale not in ("linear", "log"):
            raise ConfigError(f"unknown sweep scale {self.scale!r}")

    def values(self) -> list[float]:
        if self.scale == "log":
            lo, hi = math.log(self.start), math.log(self.stop)
            return [
                math.exp(lo + (hi - lo) * i / (self.steps - 1)) for i in range(self.steps)
            ]
        return [
            self.start + (self.stop - self.start) * i / (self.steps - 1)
            for i in range(self.steps)
        ]


def _cmd_sweep(args) -> int:
    cfg = _load_config(args)
    sweep = SweepSpec(
        args.param, args.start, args.stop, args.steps, "log" if args.log else "linear"
    )
    rows = []
    for value in sweep.values():
        if sweep.param_name == "r":
            point = cfg.replace(V=value * cfg.k0 * cfg.k0 / (2.0 * cfg.mu_reduced))
        else:
            point = cfg.replace(**{sweep.param_name: value})
        rows.append(_purity_row(point))
    _emit(args, PURITY_COLUMNS, rows)
    return EXIT_OK


def _cmd_verify(args) -> int:
    reports = _oracle.run_all() + _oracle.consistency_suite()
    reports = sorted(reports, key=lambda rep: rep.check_name)
    _write(args, _oracle.reports_to_json(reports) + "\n")
    failed = [rep.check_name for rep in reports if not rep.passed]
    if failed:
        print("failed checks: " + ", ".join(failed), file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON configuration file")
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.add_argument("--format", choices=("csv", "json"), default=None)


def _add_overrides(parser: argparse.ArgumentParser) -> None:
    for name in _OVERRIDE_FLAGS:
        parser.add_argument(f"--{name.replace('_', '-')}", dest=name, type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="igscatter",
        description="Collision-induced entanglement observables and "
        "statistical-manifold complexity",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("purity", help="purity of the post-collision pair")
    _add_common(p)
    _add_overrides(p)
    p.set_defaults(func=_cmd_purity, default_format="csv")

    p = sub.add_parser("phase-shift", help="phase shift along all three routes")
    _add_common(p)
    _add_overrides(p)
    p.set_defaults(func=_cmd_phase_shift, default_format="csv")

    p = sub.add_parser("duration", help="entanglement duration")
    _add_common(p)
    _add_overrides(p)
    p.add_argument("--r", type=float, default=None, help="correlation (default: from V)")
    p.add_argument("--epsilon", type=float, default=1e-3)
    p.add_argument("--numeric", action="store_true", help="also run the geodesic experiment")
    p.set_defaults(func=_cmd_duration, default_format="csv")

    p = sub.add_parser("geodesic", help="integrate a geodesic and dump the path")
    _add_common(p)
    p.add_argument("--mu1", type=float, default=0.0)
    p.add_argument("--mu2", type=float, default=0.0)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--dmu1", type=float, default=0.0)
    p.add_argument("--dmu2", type=float, default=0.0)
    p.add_argument("--dsigma", type=float, default=0.0)
    p.add_argument("--r", type=float, default=0.0)
    p.add_argument("--tau-max", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=_cmd_geodesic, default_format="csv")

    p = sub.add_parser("complexity", help="matched-pair complexity report")
    _add_common(p)
    _add_overrides(p)
    p.add_argument("--r", type=float, default=None, help="correlation (default: from V)")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=_cmd_complexity, default_format="json")

    p = sub.add_parser("sweep", help="sweep one parameter and tabulate purity rows")
    _add_common(p)
    _add_overrides(p)
    p.add_argument("--param", choices=SWEEP_PARAMS, required=True)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--log", action="store_true")
    p.set_defaults(func=_cmd_sweep, default_format="csv")

    p = sub.add_parser("verify", help="run the oracle and consistency suites")
    _add_common(p)
    p.set_defaults(func=_cmd_verify, default_format="json")

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = args.default_format
    try:
        return args.func(args)
    except (ConfigError, ModelParameterError, SeriesDomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (
        GeodesicIntegrationError,
        PhaseShiftBranchError,
        QuadratureError,
        ArithmeticError,
    ) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except IgscatterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
