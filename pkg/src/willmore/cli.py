"""Command-line surface: constants, reference tables, minimization
runs, and parameter sweeps, all stamped with a run manifest.

Four subcommands.  `constants` prints every headline constant to ten
significant digits.  `tables` recomputes a numeric table and emits one
CSV row per reference row with a paper_value/computed/abs_diff triple
per cell.  `minimize` fronts the constrained minimizers and writes a
JSON report plus a CSV profile sample.  `probe` runs the cone-height
nonexistence sweep or the branch-coalescence sweep as CSV.

Output discipline: every file or stream starts with the manifest
(command, parameters, version, timestamp, seed).  Two invocations with
identical parameters and seed reproduce the body below the manifest
byte for byte; only the timestamp line differs.  CSV bodies carry a
header row and a unit row ("-" marks dimensionless columns) and print
numbers with 12 significant digits.  Exit codes: 0 success,
1 validation failure, 2 infeasible start, 3 non-convergence.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .bounds import dirichlet_universal_bound, max_g_alpha, navier_bound
from .elastica import RealCurve, hat_obstacle, _vectorized
from .energy import willmore_1d, willmore_revolution
from .errors import (
    DomainError,
    GluingResidualError,
    InfeasibleStartError,
    MaxIterationsError,
    NonConvergenceError,
    NoSignChangeError,
    PositivityError,
    SideViolationError,
    UnimodalityError,
)
from .minimize import (
    MinimizeConfig,
    MinimizeReport,
    _probe_config,
    _swing_start,
    free_minimize_revolution,
    minimize_1d,
    minimize_revolution,
    probe_nonexistence,
)
from .obstacles import (
    ObstacleSpec,
    alpha0,
    catenoid_circle_profiles,
    cone_obstacle,
    enlarged_profile_obstacle,
    pushed_down_profile,
    shifted_hat_obstacle,
    small_alpha_profile,
)
from .specialfn import QuadratureRule, c0

_VALIDATION_ERRORS = (DomainError, GluingResidualError, SideViolationError,
                      UnimodalityError, NoSignChangeError, ValueError)
_NONCONVERGENCE_ERRORS = (NonConvergenceError, PositivityError,
                          MaxIterationsError)


# ---------------------------------------------------------------------------
# formatting and plumbing

def _fmt(value) -> str:
    """One CSV cell: 12 significant digits, lowercase booleans, empty
    for missing, commas squeezed out of free text."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.12g}"
    return str(value).replace(",", ";")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else repr(v)
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return _jsonable(dataclasses.asdict(obj))
    return obj


@dataclasses.dataclass(frozen=True)
class RunManifest:
    """Provenance header repeated in every output: rerunning with the
    same parameters and seed reproduces the body bit for bit."""

    command: str
    parameters: dict
    version: str
    timestamp: str
    seed: int

    def comment_lines(self) -> list[str]:
        params = " ".join(f"{k}={_fmt(v) if v is not None else 'none'}"
                          for k, v in sorted(self.parameters.items()))
        return [f"# command: {self.command}",
                f"# parameters: {params}",
                f"# version: {self.version}",
                f"# timestamp: {self.timestamp}",
                f"# seed: {self.seed}"]

    def as_dict(self) -> dict:
        return {"command": self.command,
                "parameters": _jsonable(self.parameters),
                "version": self.version,
                "timestamp": self.timestamp,
                "seed": self.seed}


def _manifest(args: argparse.Namespace) -> RunManifest:
    skip = {"func", "command", "subcommand"}
    params = {k: v for k, v in vars(args).items() if k not in skip}
    return RunManifest(
        command=" ".join(p for p in (args.command,
                                     getattr(args, "subcommand", None),
                                     getattr(args, "problem", None)) if p),
        parameters=params, version=__version__,
        timestamp=datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ"),
        seed=getattr(args, "seed", 1))


def _resolve_out(out: str | None) -> str | None:
    """Relative --out paths land in $WILLMORE_OUT_DIR when it is set."""
    if out in (None, "-"):
        return out
    base = os.environ.get("WILLMORE_OUT_DIR")
    if base and not os.path.isabs(out):
        return os.path.join(base, out)
    return out


def _write(text: str, out: str | None) -> None:
    out = _resolve_out(out)
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _csv_text(manifest: RunManifest, header: list[str], units: list[str],
              rows: list[list]) -> str:
    lines = manifest.comment_lines()
    lines.append(",".join(header))
    lines.append(",".join(units))
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _json_text(manifest: RunManifest, result: dict) -> str:
    doc = {"schema": 1, "manifest": manifest.as_dict(),
           "result": _jsonable(result)}
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# constants

def _constants() -> dict:
    ub = dirichlet_universal_bound()
    a0 = alpha0()
    return {
        "c0": c0(),
        "c0_half": 0.5 * c0(),
        "two_over_c0": 2.0 / c0(),
        "four_c0_squared": 4.0 * c0() ** 2,
        "y0": ub.y0,
        "dirichlet_bound": ub.bound,
        "navier_bound": navier_bound(),
        "b0": a0.b0,
        "cosh_b0_over_b0": a0.ratio,
        "alpha0": a0.alpha0,
        "hat_c0_half_midpoint": float(hat_obstacle(0.5 * c0()).u(0.5)),
    }


def cmd_constants(args: argparse.Namespace) -> int:
    manifest = _manifest(args)
    values = _constants()
    if args.json:
        _write(_json_text(manifest, values), args.out)
    else:
        lines = manifest.comment_lines()
        lines.extend(f"{name} = {value:.10g}"
                     for name, value in values.items())
        _write("\n".join(lines) + "\n", args.out)
    return 0


# ---------------------------------------------------------------------------
# tables

# reference rows as printed in the source tables; branch pairs are
# listed adjacent with increasing b
_CATENOID_TABLE = [
    (5.0, 0.2020339962, 0.4983130059, 4.949662031),
    (2.0, 0.5349618217, 0.4887119667, 1.869292274),
    (1.0, 1.467396505, 0.4356234114, 0.6814790662),
    (0.99, 1.502200407, 0.4333724672, 0.6656901405),
    (0.99, 304.6450597, 0.0116426170, 0.003282508507),
    (0.9, 1.986626006, 0.4025298387, 0.5033660070),
    (0.9, 14.46598282, 0.1352543279, 0.06912769166),
    (0.84, 3.077899286, 0.3422108342, 0.3248969206),
    (0.84, 5.266858981, 0.2610059859, 0.1898664847),
]
# (alpha, x_b) inputs with reference b, x0, x_min, r
_SMALL_ALPHA_TABLE = [
    (0.7, 0.5, 0.4898979486, 0.1928412335, 0.09881364931, 0.3692969430),
    (0.5, 0.79, 2.428363283, 0.6056404249, 0.3419392371, 0.6050456522),
    (0.1, 0.995, 10.02506266, 0.9900083375, 0.8159959886, 0.8673937881),
]
_G_THRESHOLD_TABLE = [
    (10.0, 8.170, 0.896),
    (25.0, 26.231, 1.023),
    (50.0, 58.583, 1.082),
    (100.0, 125.756, 1.121),
]

_TYPO_NOTE = ("suspected paper typo: the printed b equals gamma; the "
              "defining formula b = sqrt(1+beta^2)/gamma gives the "
              "computed value")


def _triple(paper: float, computed: float) -> list[float]:
    return [paper, computed, abs(paper - computed)]


def _table_catenoid() -> tuple[list[str], list[list]]:
    header = ["alpha", "b_paper", "b_computed", "b_abs_diff",
              "x_b_paper", "x_b_computed", "x_b_abs_diff",
              "waist_paper", "waist_computed", "waist_abs_diff", "note"]
    branches: dict[float, list] = {}
    rows = []
    for alpha, b_ref, xb_ref, waist_ref in _CATENOID_TABLE:
        if alpha not in branches:
            found = catenoid_circle_profiles(alpha)
            branches[alpha] = sorted(found,
                                     key=lambda p: p.parameters["b"])
        profile = branches[alpha].pop(0)
        p = profile.parameters
        rows.append([alpha] + _triple(b_ref, p["b"])
                    + _triple(xb_ref, p["x_b"])
                    + _triple(waist_ref, p["waist"]) + [""])
    return header, rows


def _table_small_alpha() -> tuple[list[str], list[list]]:
    header = ["alpha", "x_b", "b_paper", "b_computed", "b_abs_diff",
              "x0_paper", "x0_computed", "x0_abs_diff",
              "x_min_paper", "x_min_computed", "x_min_abs_diff",
              "r_paper", "r_computed", "r_abs_diff", "note"]
    rows = []
    for alpha, x_b, b_ref, x0_ref, xmin_ref, r_ref in _SMALL_ALPHA_TABLE:
        p = small_alpha_profile(alpha, x_b).parameters
        note = _TYPO_NOTE if abs(b_ref - p["b"]) > 1e-3 else ""
        rows.append([alpha, x_b] + _triple(b_ref, p["b"])
                    + _triple(x0_ref, p["x0"])
                    + _triple(xmin_ref, p["x_min"])
                    + _triple(r_ref, p["r"]) + [note])
    return header, rows


def _table_g_threshold() -> tuple[list[str], list[list]]:
    header = ["alpha", "max_g_paper", "max_g_computed", "max_g_abs_diff",
              "c_thre_paper", "c_thre_computed", "c_thre_abs_diff", "note"]
    rows = []
    for alpha, max_ref, thre_ref in _G_THRESHOLD_TABLE:
        rep = max_g_alpha(alpha)
        rows.append([alpha] + _triple(max_ref, rep.max_value)
                    + _triple(thre_ref, rep.c_threshold) + [""])
    return header, rows


_TABLES = {
    "catenoid-circle": _table_catenoid,
    "small-alpha": _table_small_alpha,
    "g-alpha-threshold": _table_g_threshold,
}


def cmd_tables(args: argparse.Namespace) -> int:
    header, rows = _TABLES[args.which]()
    # every numeric column is dimensionless in the normalized setup
    units = ["text" if name == "note" else "-" for name in header]
    _write(_csv_text(_manifest(args), header, units, rows), args.out)
    return 0


# ---------------------------------------------------------------------------
# minimize

_CONFIG_FLAGS = ("elements", "penalty_initial", "penalty_stages",
                 "max_inner", "starts")


def _build_config(args: argparse.Namespace, base: MinimizeConfig
                  ) -> MinimizeConfig:
    updates = {"seed": args.seed}
    if args.elements is not None:
        updates["elements"] = args.elements
    if args.penalty_initial is not None:
        updates["penalty_initial"] = args.penalty_initial
    if args.penalty_stages is not None:
        updates["penalty_stages"] = args.penalty_stages
    if args.max_inner is not None:
        updates["max_inner_iterations"] = args.max_inner
    if args.starts is not None:
        updates["starts"] = args.starts
    return dataclasses.replace(base, **updates)


def _constant_below_obstacle(level: float, alpha: float) -> ObstacleSpec:
    if not level > alpha:
        raise DomainError(
            f"a constant below-obstacle must exceed alpha; got {level}")
    curve = RealCurve(
        -1.0, 1.0,
        _vectorized(lambda x: np.full_like(x, level)),
        _vectorized(lambda x: np.zeros_like(x)),
        _vectorized(lambda x: np.zeros_like(x)))
    return ObstacleSpec(side="below", curve=curve, clearance=2.0,
                        alpha=alpha)


def _run_minimize(args: argparse.Namespace
                  ) -> tuple[MinimizeReport, ObstacleSpec | None]:
    if args.problem == "1d":
        if args.obstacle not in ("hat", "cone"):
            raise DomainError("1d minimization needs --obstacle hat or cone")
        if args.obstacle == "hat":
            if args.c is None:
                raise DomainError("hat obstacle needs --c")
            obstacle = shifted_hat_obstacle(args.c, args.eps)
            witness = hat_obstacle(args.c)
            config = _build_config(args, MinimizeConfig())
        else:
            if args.height is None:
                raise DomainError("cone obstacle needs --height")
            obstacle = cone_obstacle(args.height)
            witness = _swing_start(args.height)
            config = _build_config(args, _probe_config())
        report = minimize_1d(obstacle, symmetric=not args.non_symmetric,
                             config=config, witness=witness)
        return report, obstacle
    if args.alpha is None:
        raise DomainError(f"the {args.problem} problem needs --alpha")
    if args.problem == "free":
        config = _build_config(args, MinimizeConfig())
        return free_minimize_revolution(args.alpha, config), None
    config = _build_config(args, MinimizeConfig())
    if args.obstacle is None:
        args.obstacle = "catenoid-circle"
    if args.obstacle in ("hat", "cone"):
        raise DomainError(f"--obstacle {args.obstacle} is a 1d obstacle; "
                          "revolution needs catenoid-circle, small-alpha, "
                          "pushed-down, or constant")
    if args.obstacle == "catenoid-circle":
        found = catenoid_circle_profiles(args.alpha)
        if not found:
            raise DomainError(
                "no catenoid-circle branch at this alpha; the bridged "
                "construction needs alpha above the coalescence "
                "threshold (small-alpha covers the rest)")
        profile = min(found, key=lambda p: p.parameters["b"])
        obstacle = enlarged_profile_obstacle(profile, args.delta)
        witness = profile.curve
    elif args.obstacle == "small-alpha":
        if args.x_b is None:
            raise DomainError("small-alpha obstacle needs --x-b")
        profile = small_alpha_profile(args.alpha, args.x_b)
        obstacle = enlarged_profile_obstacle(profile, args.delta)
        witness = profile.curve
    elif args.obstacle == "pushed-down":
        if args.c is None:
            raise DomainError("pushed-down obstacle needs --c")
        profile = pushed_down_profile(args.alpha, args.c)
        obstacle = enlarged_profile_obstacle(profile, args.delta)
        witness = profile.curve
    else:
        if args.level is None:
            raise DomainError("constant obstacle needs --level")
        obstacle = _constant_below_obstacle(args.level, args.alpha)
        witness = None
    report = minimize_revolution(args.alpha, obstacle, config,
                                 witness=witness)
    return report, obstacle


def _profile_rows(report: MinimizeReport, obstacle: ObstacleSpec | None,
                  points: int) -> list[list]:
    x, u, du, d2u = report.profile.sample(points)
    aux = d2u * (1.0 + du * du) ** -1.25
    if obstacle is None:
        psi = np.full_like(x, np.nan)
        contact = np.zeros_like(x, dtype=bool)
    else:
        psi = np.asarray(obstacle.curve.u(x), dtype=float)
        scale = max(1.0, float(np.max(np.abs(psi))))
        tol = max(100.0 * report.config.constraint_tolerance, 1e-8) * scale
        gap = psi - u if obstacle.side == "above" else u - psi
        contact = gap >= -tol
    return [[x[i], u[i], du[i], d2u[i], aux[i],
             None if math.isnan(psi[i]) else psi[i], int(contact[i])]
            for i in range(len(x))]


def _report_result(report: MinimizeReport) -> dict:
    return {
        "problem": report.problem,
        "energy": report.energy,
        "converged": report.converged,
        "max_violation": report.max_violation,
        "active_set": [list(iv) for iv in report.active_set],
        "symmetric": report.symmetric,
        "alpha": report.alpha,
        "seed": report.seed_used,
        "message": report.message,
        "stages": [dataclasses.asdict(s) for s in report.stages],
        "polish": (dataclasses.asdict(report.polish)
                   if report.polish is not None else None),
        "config": dataclasses.asdict(report.config),
        "diagnostics": report.diagnostics,
    }


def cmd_minimize(args: argparse.Namespace) -> int:
    manifest = _manifest(args)
    report, obstacle = _run_minimize(args)
    result = _report_result(report)
    if args.quad_panels is not None:
        rule = QuadratureRule(panels=args.quad_panels)
        curve = report.profile.as_curve()
        if report.problem == "graph-dirichlet":
            recheck = willmore_1d(curve, rule)
        else:
            recheck = willmore_revolution(curve, rule).total
        result["quadrature_recheck"] = {"panels": args.quad_panels,
                                        "energy": recheck}
    header = ["x", "u", "du", "d2u", "V", "psi", "contact"]
    units = ["-", "-", "-", "-", "-", "-", "bool"]
    csv = _csv_text(manifest, header, units,
                    _profile_rows(report, obstacle, args.profile_points))
    if args.out in (None, "-"):
        sys.stdout.write(_json_text(manifest, result))
        sys.stdout.write("\n" + csv)
    else:
        json_path = (args.out if args.out.endswith(".json")
                     else args.out + ".json")
        _write(_json_text(manifest, result), json_path)
        _write(csv, json_path[:-5] + ".profile.csv")
    return 0


# ---------------------------------------------------------------------------
# probes

def _sweep_heights(h_min: float, h_max: float, step: float) -> tuple:
    if step <= 0.0:
        raise DomainError("sweep step must be positive")
    if h_max < h_min - 1e-12:
        raise DomainError("empty sweep range: h-max is below h-min")
    heights = []
    k = 0
    while True:
        h = h_min + k * step
        if h > h_max + 1e-9:
            break
        heights.append(round(h, 12))
        k += 1
    if not heights:
        raise DomainError("empty sweep range")
    return tuple(heights)


def cmd_probe_nonexistence(args: argparse.Namespace) -> int:
    heights = _sweep_heights(args.h_min, args.h_max, args.step)
    config = None
    if any(v is not None for v in (args.elements, args.max_inner)) \
            or args.seed != 1:
        config = _build_config(args, _probe_config())
    rows = probe_nonexistence(heights, config)
    header = ["height", "elements", "escalated", "converged", "energy",
              "max_slope", "slope_bound", "above_bound_regime",
              "boundary_case", "energy_exceeds_threshold", "flag"]
    units = ["-", "count", "bool", "bool", "-", "-", "-", "bool", "bool",
             "bool", "text"]
    data = [[r.height, r.elements, r.escalated, r.converged, r.energy,
             r.max_slope, r.slope_bound, r.above_bound_regime,
             r.boundary_case, r.energy_exceeds_threshold, r.flag]
            for r in rows]
    _write(_csv_text(_manifest(args), header, units, data), args.out)
    return 0


def cmd_probe_branches(args: argparse.Namespace) -> int:
    threshold = alpha0().alpha0
    if args.count < 1:
        raise DomainError("empty sweep range: count must be at least 1")
    if args.alpha_max < args.alpha_min:
        raise DomainError("empty sweep range: alpha-max is below alpha-min")
    if not args.alpha_min > threshold:
        raise DomainError(
            f"branch sweep needs alpha-min above the coalescence "
            f"threshold {threshold:.10g}")
    if not args.alpha_max < 1.0:
        raise DomainError("branch sweep needs alpha-max below 1")
    alphas = np.linspace(args.alpha_min, args.alpha_max, args.count)
    data = []
    for alpha in alphas:
        found = sorted(catenoid_circle_profiles(float(alpha)),
                       key=lambda p: p.parameters["b"])
        if len(found) < 2:
            raise DomainError(
                f"expected two catenoid-circle branches at alpha = "
                f"{alpha:.10g}; found {len(found)}")
        low, high = found[0], found[-1]
        data.append([float(alpha), low.parameters["b"],
                     high.parameters["b"],
                     high.parameters["b"] - low.parameters["b"],
                     low.parameters["x_b"], high.parameters["x_b"],
                     low.closed_form_energy, high.closed_form_energy])
    header = ["alpha", "b_low", "b_high", "b_gap", "x_b_low", "x_b_high",
              "energy_low", "energy_high"]
    _write(_csv_text(_manifest(args), header, ["-"] * len(header), data),
           args.out)
    return 0


# ---------------------------------------------------------------------------
# parser

class _Parser(argparse.ArgumentParser):
    """Argparse that exits with the documented validation code."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", default=None, metavar="PATH",
                        help="output file (default: standard output)")
    parser.add_argument("--seed", type=int, default=1,
                        help="deterministic run seed (default 1)")


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--elements", type=int, default=None,
                        help="Hermite elements (default per problem)")
    parser.add_argument("--penalty-initial", type=float, default=None,
                        help="first penalty weight")
    parser.add_argument("--penalty-stages", type=int, default=None,
                        help="number of penalty stages")
    parser.add_argument("--max-inner", type=int, default=None,
                        help="inner iteration cap per stage")
    parser.add_argument("--starts", type=int, default=None,
                        help="number of perturbed starts")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="willmore",
                     description="Willmore obstacle-problem workbench: "
                                 "constants, tables, minimizers, sweeps.")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("constants",
                       help="print all headline constants")
    p.add_argument("--json", action="store_true",
                   help="emit JSON instead of name = value text")
    _add_common(p)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("tables",
                       help="recompute a reference table as CSV")
    p.add_argument("which", choices=sorted(_TABLES),
                   help="which table to reproduce")
    _add_common(p)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("minimize",
                       help="run a constrained minimization",
                       description="Writes a JSON report and a CSV "
                                   "profile. With --out PATH the report "
                                   "goes to PATH(.json) and the profile "
                                   "to PATH.profile.csv; on standard "
                                   "output the JSON document comes "
                                   "first, then a blank line, then the "
                                   "CSV.")
    p.add_argument("problem", choices=["1d", "revolution", "free"])
    p.add_argument("--obstacle",
                   choices=["hat", "cone", "catenoid-circle",
                            "small-alpha", "pushed-down", "constant"],
                   default=None,
                   help="obstacle kind (hat/cone for 1d; the rest for "
                        "revolution)")
    p.add_argument("--c", type=float, default=None,
                   help="hat or pushed-down parameter c")
    p.add_argument("--eps", type=float, default=1e-3,
                   help="downward shift of the hat obstacle")
    p.add_argument("--height", type=float, default=None,
                   help="cone peak height")
    p.add_argument("--alpha", type=float, default=None,
                   help="boundary height for revolution problems")
    p.add_argument("--x-b", type=float, default=None,
                   help="contact abscissa for the small-alpha gluing")
    p.add_argument("--level", type=float, default=None,
                   help="height of the constant obstacle")
    p.add_argument("--delta", type=float, default=1e-3,
                   help="end enlargement of profile obstacles")
    p.add_argument("--non-symmetric", action="store_true",
                   help="drop the mirror-symmetry constraint (1d only)")
    p.add_argument("--profile-points", type=int, default=1001,
                   help="CSV profile resolution (default 1001)")
    p.add_argument("--quad-panels", type=int, default=None,
                   help="recheck the energy on this many panels")
    _add_config_flags(p)
    _add_common(p)
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("probe",
                       help="run a parameter sweep")
    psub = p.add_subparsers(dest="subcommand", required=True,
                            parser_class=_Parser)

    q = psub.add_parser("nonexistence",
                       help="cone-height sweep across the universal "
                             "bound")
    q.add_argument("--h-min", type=float, default=0.5)
    q.add_argument("--h-max", type=float, default=1.5)
    q.add_argument("--step", type=float, default=0.1)
    q.add_argument("--elements", type=int, default=None)
    q.add_argument("--max-inner", type=int, default=None)
    q.set_defaults(penalty_initial=None, penalty_stages=None, starts=None)
    _add_common(q)
    q.set_defaults(func=cmd_probe_nonexistence)

    q = psub.add_parser("branch-coalescence",
                       help="catenoid branch gap shrinking toward the "
                             "coalescence threshold")
    q.add_argument("--alpha-min", type=float, default=0.835)
    q.add_argument("--alpha-max", type=float, default=0.99)
    q.add_argument("--count", type=int, default=8)
    _add_common(q)
    q.set_defaults(func=cmd_probe_branches)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _VALIDATION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InfeasibleStartError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _NONCONVERGENCE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
