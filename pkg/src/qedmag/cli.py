"""Command-line front end: grid scans, the validation suite, figure data and moment inversion."""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass

from . import moment, optics, validation
from .lagrangian import FieldPoint
from .optics import PhotonKinematics
from .specfun import CONSTANTS, DomainError

UNITS = {
    "b": "B/B_cr",
    "h_reduced": "<H>/|k| per photon",
    "n_par": "refractive index, parallel mode",
    "n_perp": "refractive index, perpendicular mode",
    "n_perp_weak": "perpendicular index, weak-field series",
    "n_perp_strong": "perpendicular index, strong-field series",
    "delta_n": "n_perp - n_par",
    "faraday": "rotation angle in radians over path_length (units of 1/m)",
    "v_perp": "perpendicular group velocity, units of c",
    "mu_exact": "reduced moment (includes alpha/4pi, excludes (|k|/m) sin^2)",
    "mu_weak": "reduced moment, weak-field form",
    "mu_strong": "reduced moment, strong-field form",
    "mu_bohr": "photon moment in Bohr magnetons",
    "out_of_domain": "quantities evaluated outside their validity window",
    "error": "per-quantity evaluation failures",
}
DEFAULT_COLUMNS = (
    "b", "n_par", "n_perp", "delta_n", "faraday", "mu_exact", "mu_weak", "mu_strong", "h_reduced", "v_perp",
)
FIGURE1_COLUMNS = ("b", "h_reduced")

DEFAULTS = {
    "b_min": 0.1,
    "b_max": 30.0,
    "points": 100,
    "log": False,
    "theta": math.pi / 2,
    "k_over_m": 0.1,
    "length": 0.0,
    "columns": ",".join(DEFAULT_COLUMNS),
    "format": "csv",
    "alpha": CONSTANTS.alpha,
    "series_order": 8,
}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class ScanRequest:
    b_min: float
    b_max: float
    points: int
    log: bool
    kin: PhotonKinematics
    columns: tuple[str, ...]
    fmt: str
    alpha: float
    series_order: int

    def __post_init__(self) -> None:
        if not (0 <= self.b_min < self.b_max and math.isfinite(self.b_max)):
            raise UsageError(f"need 0 <= b-min < b-max, got {self.b_min!r}, {self.b_max!r}")
        if self.points < 2:
            raise UsageError("points must be at least 2")
        if self.log and self.b_min <= 0:
            raise UsageError("log spacing needs b-min > 0")
        unknown = [c for c in self.columns if c not in UNITS]
        if unknown:
            raise UsageError(f"unknown column(s) {', '.join(unknown)}; choose from {', '.join(UNITS)}")
        if self.fmt not in ("csv", "json"):
            raise UsageError(f"unknown format {self.fmt!r}")
        if self.series_order < 1:
            raise UsageError("series-order must be at least 1")

    def grid(self) -> list[float]:
        n = self.points
        if self.log:
            r = math.log(self.b_max / self.b_min)
            pts = [self.b_min * math.exp(r * i / (n - 1)) for i in range(n)]
        else:
            pts = [self.b_min + (self.b_max - self.b_min) * i / (n - 1) for i in range(n)]
        pts[0], pts[-1] = self.b_min, self.b_max
        return pts


def _quantities(req: ScanRequest):
    kin, a, j = req.kin, req.alpha, req.series_order
    return {
        "h_reduced": lambda fp: (moment.hamiltonian_expectation(fp, kin, a).h_reduced, True),
        "n_par": lambda fp: _ref(optics.n_parallel_exact(fp, kin, a)),
        "n_perp": lambda fp: _ref(optics.n_perp_exact(fp, kin, a)),
        "n_perp_weak": lambda fp: _ref(optics.n_perp_weak_series(fp, kin, j, a)),
        "n_perp_strong": lambda fp: _ref(optics.n_perp_strong_series(fp, kin, max(j, 3), a)),
        "delta_n": lambda fp: (optics.delta_n(fp, kin, a), True),
        "faraday": lambda fp: (optics.faraday_rotation(fp, kin, a), True),
        "v_perp": lambda fp: (optics.v_perp(fp, kin, a), True),
        "mu_exact": lambda fp: _mom(moment.mu_exact(fp, kin, a)),
        "mu_weak": lambda fp: _mom(moment.mu_weak(fp, kin, a)),
        "mu_strong": lambda fp: _mom(moment.mu_strong(fp, kin, a)),
        "mu_bohr": lambda fp: (moment.mu_exact(fp, kin, a).mu_bohr, True),
    }


def _ref(r):
    return r.n, r.in_validity_domain


def _mom(r):
    return r.mu_reduced, r.in_validity_domain


def scan_rows(req: ScanRequest) -> list[dict]:
    """One dict per grid point, in grid order.  Failed quantities are None and listed under ``error``."""
    funcs = _quantities(req)
    rows = []
    for b in req.grid():
        fp = FieldPoint(b)
        row: dict = {}
        outside, errors = [], []
        for col in req.columns:
            if col == "b":
                row[col] = b
            elif col in funcs:
                try:
                    value, valid = funcs[col](fp)
                except (DomainError, ArithmeticError, ValueError) as exc:
                    row[col] = None
                    errors.append(f"{col}: {exc}")
                else:
                    row[col] = value
                    if not valid:
                        outside.append(col)
        if "out_of_domain" in req.columns or outside:
            row["out_of_domain"] = "|".join(outside)
        if "error" in req.columns or errors:
            row["error"] = "; ".join(errors)
        rows.append(row)
    return rows


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def write_rows(rows: list[dict], columns: tuple[str, ...], fmt: str, out) -> None:
    names = list(columns)
    for extra in ("out_of_domain", "error"):
        if extra not in names and any(r.get(extra) for r in rows):
            names.append(extra)
    if fmt == "json":
        json.dump([{k: r.get(k, "") for k in names} for r in rows], out, indent=1)
        out.write("\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(names)
    for r in rows:
        w.writerow([_fmt(r.get(k, "")) for k in names])


def _legend(columns, req: ScanRequest, err) -> None:
    err.write(
        f"# units: reduced (hbar = c = m = 1); alpha={req.alpha!r}, theta={req.kin.theta!r}, "
        f"k_over_m={req.kin.k_over_m!r}, path_length={req.kin.path_length!r}\n"
    )
    for c in columns:
        err.write(f"#   {c}: {UNITS[c]}\n")


# ---------------------------------------------------------------------------
# argument handling


def read_config(path: str) -> dict:
    """Flat key=value file; '#' starts a comment; keys may use - or _."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def _coerce(key: str, value):
    if isinstance(value, str):
        if key == "log":
            return value.lower() in ("1", "true", "yes", "on")
        if key in ("points", "series_order"):
            return int(value)
        if key in ("columns", "format"):
            return value
        return float(value)
    return value


def _settings(args, keys) -> dict:
    """Flags override the config file, which overrides DEFAULTS."""
    cfg = read_config(args.config) if getattr(args, "config", None) else {}
    out = {}
    for key in keys:
        flag = getattr(args, key, None)
        if flag is not None:
            out[key] = flag
        elif key in cfg:
            try:
                out[key] = _coerce(key, cfg[key])
            except ValueError as exc:
                raise UsageError(f"config value for {key}: {exc}") from exc
        else:
            out[key] = DEFAULTS.get(key)
    return out


def _tolerances(args) -> dict:
    cfg = read_config(args.config) if getattr(args, "config", None) else {}
    tol = {}
    for key in validation.CHECK_KEYS:
        flag = getattr(args, f"tol_{key}", None)
        if flag is not None:
            tol[key] = flag
        elif f"tol_{key}" in cfg:
            tol[key] = float(cfg[f"tol_{key}"])
    return tol


def _kinematics(s: dict) -> PhotonKinematics:
    try:
        return PhotonKinematics(k_over_m=s["k_over_m"], theta=s["theta"], path_length=s["length"])
    except (ValueError, DomainError) as exc:
        raise UsageError(str(exc)) from exc


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--theta", type=float, help="angle between B and k in radians (default pi/2)")
    p.add_argument("--k-over-m", dest="k_over_m", type=float, help="|k|/m (default 0.1)")
    p.add_argument("--length", type=float, help="path length in units of 1/m (default 0)")
    p.add_argument("--alpha", type=float, help="fine-structure constant (default CODATA 2018)")
    p.add_argument("--format", choices=("csv", "json"), help="output encoding (default csv)")
    p.add_argument("--config", metavar="PATH", help="key=value file; flags take precedence")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qedmag",
        description="Magnetized-vacuum refraction and photon magnetic moment at one loop.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    scan = sub.add_parser("scan", help="tabulate quantities on a field grid")
    scan.add_argument("--b-min", dest="b_min", type=float)
    scan.add_argument("--b-max", dest="b_max", type=float)
    scan.add_argument("--points", type=int)
    scan.add_argument("--log", action="store_true", default=None, help="logarithmic spacing")
    scan.add_argument("--columns", help=f"comma-separated subset of: {', '.join(UNITS)}")
    scan.add_argument("--series-order", dest="series_order", type=int, help="terms J in the index series")
    _add_common(scan)

    fig = sub.add_parser("figure1", help="photon energy curve on [0, 30], 300 points")
    _add_common(fig)

    val = sub.add_parser("validate", help="run the acceptance suite")
    val.add_argument("--alpha", type=float)
    val.add_argument("--format", choices=("text", "json"), default="text")
    val.add_argument("--config", metavar="PATH")
    for key in validation.CHECK_KEYS:
        val.add_argument(f"--tol-{key.replace('_', '-')}", dest=f"tol_{key}", type=float, metavar="TOL")

    inv = sub.add_parser("invert", help="field strength from a photon moment given in Bohr magnetons")
    inv.add_argument("mu_bohr", type=float, help="photon moment in Bohr magnetons")
    inv.add_argument("--branch", type=int, choices=(0, -1), help="Lambert W branch; both when omitted")
    _add_common(inv)
    return parser


# ---------------------------------------------------------------------------
# commands


def cmd_scan(args, out, err, preset: bool = False) -> int:
    keys = ["b_min", "b_max", "points", "log", "theta", "k_over_m", "length", "columns", "format", "alpha", "series_order"]
    s = _settings(args, keys)
    if preset:
        s.update(b_min=0.0, b_max=30.0, points=300, log=False, columns=",".join(FIGURE1_COLUMNS))
    req = ScanRequest(
        b_min=s["b_min"], b_max=s["b_max"], points=s["points"], log=bool(s["log"]),
        kin=_kinematics(s), columns=tuple(c.strip() for c in s["columns"].split(",") if c.strip()),
        fmt=s["format"], alpha=s["alpha"], series_order=s["series_order"],
    )
    _legend(req.columns, req, err)
    write_rows(scan_rows(req), req.columns, req.fmt, out)
    return 0


def cmd_validate(args, out, err) -> int:
    s = _settings(args, ["alpha"])
    report = validation.run_validation(_tolerances(args), alpha=s["alpha"])
    if args.format == "json":
        json.dump(report.to_dict(), out, indent=1)
        out.write("\n")
    else:
        out.write("\n".join(report.lines()) + "\n")
        failed = [c.key for c in report.checks if c.status == "FAIL"]
        out.write("all checks passed\n" if report.ok else f"failed: {', '.join(failed)}\n")
    return 0 if report.ok else 1


def cmd_invert(args, out, err) -> int:
    s = _settings(args, ["theta", "k_over_m", "length", "format", "alpha"])
    kin = _kinematics(s)
    alpha = s["alpha"]
    try:
        mu = moment.mu_bohr_to_reduced(args.mu_bohr, kin)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    branches = (args.branch,) if args.branch is not None else (0, -1)
    results = []
    for branch in branches:
        entry = {"branch": branch, "b": None, "residual": None, "message": ""}
        try:
            b = moment.invert_b_from_mu(mu, branch, alpha).b
        except DomainError as exc:
            entry["message"] = f"no finite solution on branch {branch}"
            entry["detail"] = str(exc)
        else:
            back = moment.mu_strong(b, kin, alpha).mu_reduced
            entry["b"] = b
            entry["residual"] = abs(back - mu) / abs(mu) if mu else abs(back)
        results.append(entry)
    found = [r for r in results if r["b"] is not None]
    if s["format"] == "json":
        json.dump({"mu_bohr": args.mu_bohr, "mu_reduced": mu, "solutions": results}, out, indent=1)
        out.write("\n")
    else:
        for r in found:
            note = "" if r["b"] > moment.STRONG_MIN_B else "  (below the strong-field window b > 0.5)"
            out.write(f"branch {r['branch']}: b = {_fmt(r['b'])}  round-trip residual = {r['residual']:.3g}{note}\n")
    if not found:
        err.write(f"mu_bohr={args.mu_bohr!r} (reduced {mu!r}) has no finite inverse on the requested branch\n")
        for branch, fp in moment.invert_all_branches(mu, alpha).items():
            status = f"b = {_fmt(fp.b)}" if fp else "no finite solution"
            err.write(f"  branch {branch}: {status}\n")
        return 1
    for r in results:
        if r["b"] is None:
            err.write(f"branch {r['branch']}: {r['message']}\n")
    return 0


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "scan":
            return cmd_scan(args, out, err)
        if args.command == "figure1":
            return cmd_scan(args, out, err, preset=True)
        if args.command == "validate":
            return cmd_validate(args, out, err)
        if args.command == "invert":
            return cmd_invert(args, out, err)
    except (UsageError, OSError, KeyError) as exc:
        err.write(f"qedmag {args.command}: error: {exc}\n")
        parser.print_usage(err)
        return 2
    except Exception as exc:  # internal failure
        err.write(f"qedmag {args.command}: internal error: {exc!r}\n")
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
