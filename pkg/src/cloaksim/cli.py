"""Command-line front end: scenario runs that emit CSV/JSON artifacts.

Subcommands:
    converge       regularisation sweep of the interface pairing
    fields         pointwise field samples on a point set
    halfspace      plane-wave half-space sweep
    check-specfun  radial-function identity grids, pass/fail report

Every run takes a JSON config (check-specfun has a built-in default) and
writes its outputs plus a reproducibility manifest into --out.  Exit codes:
0 success, 2 config error, 3 inadmissible frequency (resonant mode),
4 requested accuracy not reached.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__, fields, halfspace, modal, specfun, weak_limit
from .errors import AccuracyError, CloakSimError, ConfigError, ResonanceError
from .geometry import CloakParams
from .manifest import RunManifest, write_csv
from .weak_limit import RadialTestFunction

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RESONANCE = 3
EXIT_ACCURACY = 4


def _load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc


def _require_keys(doc, required, optional, where):
    if not isinstance(doc, dict):
        raise ConfigError(f"{where} must be a JSON object")
    unknown = set(doc) - required - optional
    if unknown:
        raise ConfigError(f"unknown fields in {where}: {sorted(unknown)}")
    missing = required - set(doc)
    if missing:
        raise ConfigError(f"{where} missing fields: {sorted(missing)}")


def _parse_phi(doc):
    _require_keys(doc, {"family", "modes"},
                  {"r_lo", "r_hi", "amplitude", "knots"}, "phi")
    modes = [tuple(int(v) for v in mode) for mode in doc["modes"]]
    if doc["family"] == "bump":
        return RadialTestFunction.polynomial_bump(
            modes, float(doc["r_lo"]), float(doc["r_hi"]),
            float(doc.get("amplitude", 1.0)))
    if doc["family"] == "spline":
        return RadialTestFunction.cubic_spline(modes, doc["knots"])
    raise ConfigError(f"unknown phi family: {doc['family']!r}")


def _parse_cloak_params(doc, rho):
    return CloakParams(rho=rho, omega=float(doc["omega"]),
                       eps0=float(doc.get("eps0", 1.0)),
                       mu0=float(doc.get("mu0", 1.0)),
                       r1=float(doc["r1"]))


# -- converge -----------------------------------------------------------------


def cmd_converge(config_path, out_dir, tol, jobs):
    doc = _load_config(config_path)
    _require_keys(doc, {"scenario", "params", "source", "phi"},
                  {"boundary", "quadrature", "seed"}, "converge config")
    pdoc = doc["params"]
    _require_keys(pdoc, {"omega", "r1", "rho_list"}, {"eps0", "mu0"},
                  "converge params")
    rho_list = [float(r) for r in pdoc["rho_list"]]
    if not rho_list:
        raise ConfigError("rho_list must be non-empty")
    quad = doc.get("quadrature", {})
    _require_keys(quad, set(), {"tol"}, "quadrature")
    qtol = tol if tol is not None else float(quad.get("tol", 1e-9))

    source = modal.parse_source_table(doc["source"], r1=float(pdoc["r1"]))
    modal.check_decay_certificate(
        source, _parse_cloak_params(pdoc, rho_list[0]))
    phi = _parse_phi(doc["phi"])

    rows, rate = weak_limit.convergence_study(
        source, phi, rho_list, omega=float(pdoc["omega"]),
        eps0=float(pdoc.get("eps0", 1.0)), mu0=float(pdoc.get("mu0", 1.0)),
        tol=qtol)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_csv(out / "converge.csv",
              ["rho", "pairing_re", "pairing_im", "predicted_re",
               "predicted_im", "abs_err"],
              [[r["rho"], r["pairing"].real, r["pairing"].imag,
                r["predicted"].real, r["predicted"].imag, r["abs_err"]]
               for r in rows])
    n_max = modal.truncation_order(
        source, _parse_cloak_params(pdoc, rho_list[0]), qtol)
    summary = {"fitted_rate": rate,
               "abs_err_final": rows[-1]["abs_err"],
               "rho_final": rows[-1]["rho"]}
    with open(out / "summary.json", "w", encoding="utf-8") as fh:
        json.dump(summary, fh, sort_keys=True, indent=2)
        fh.write("\n")
    RunManifest(scenario=doc["scenario"], command="converge", params=pdoc,
                source=doc["source"], boundary=doc.get("boundary", []),
                phi=doc["phi"], quadrature={"tol": qtol}, n_max=n_max,
                seed=int(doc.get("seed", 0))).write(out / "manifest.json")
    return EXIT_OK


# -- fields ---------------------------------------------------------------------


def cmd_fields(config_path, out_dir, tol, jobs):
    doc = _load_config(config_path)
    _require_keys(doc, {"scenario", "params", "source", "space"},
                  {"points", "points_csv", "boundary", "seed"}, "fields config")
    pdoc = doc["params"]
    _require_keys(pdoc, {"omega", "r1", "rho"}, {"eps0", "mu0"}, "fields params")
    params = _parse_cloak_params(pdoc, float(pdoc["rho"]))
    source = modal.parse_source_table(doc["source"], r1=params.r1)
    boundary = modal.parse_boundary_table(doc.get("boundary", []))
    solution = modal.solve_source(source, boundary, params)
    space = doc["space"]
    if space not in ("virtual", "physical"):
        raise ConfigError(f"space must be 'virtual' or 'physical', got {space!r}")
    if ("points" in doc) == ("points_csv" in doc):
        raise ConfigError("provide exactly one of 'points' or 'points_csv'")
    if "points" in doc:
        points = [np.asarray(p, dtype=float) for p in doc["points"]]
    else:
        points = fields.read_points_csv(doc["points_csv"])
    evaluate = (fields.eval_virtual_exterior if space == "virtual"
                else fields.eval_physical)
    samples = [evaluate(solution, p) for p in points]
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    fields.write_samples_csv(out / "fields.csv", samples)
    RunManifest(scenario=doc["scenario"], command="fields", params=pdoc,
                source=doc["source"], boundary=doc.get("boundary", []),
                n_max=solution.n_max,
                seed=int(doc.get("seed", 0))).write(out / "manifest.json")
    return EXIT_OK


# -- halfspace -------------------------------------------------------------------


def cmd_halfspace(config_path, out_dir, tol, jobs):
    doc = _load_config(config_path)
    _require_keys(doc, {"scenario", "omega", "kz", "rho_list", "phi"},
                  {"hin_re", "hin_im", "pairing_halfwidth", "seed"},
                  "halfspace config")
    phi_doc = doc["phi"]
    _require_keys(phi_doc, {"x_lo", "x_hi"}, {"amplitude"}, "halfspace phi")
    phi = halfspace.TestFunction1D(float(phi_doc["x_lo"]),
                                   float(phi_doc["x_hi"]),
                                   float(phi_doc.get("amplitude", 1.0)))
    hin = complex(float(doc.get("hin_re", 1.0)), float(doc.get("hin_im", 0.0)))
    halfwidth = float(doc.get("pairing_halfwidth", 2.0))
    qtol = tol if tol is not None else 1e-10
    params_list = [halfspace.HalfspaceParams(omega=float(doc["omega"]),
                                             kz=float(doc["kz"]),
                                             rho=float(r), hin=hin)
                   for r in doc["rho_list"]]
    rows, exponent = halfspace.limit_study(params_list, phi, halfwidth, tol=qtol)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_csv(out / "halfspace.csv",
              ["rho", "h_plus_re", "h_plus_im", "h_sc_re", "h_sc_im",
               "transmitted_mass_re", "transmitted_mass_im",
               "reflected_pairing_re", "reflected_pairing_im"],
              [[r["rho"], r["h_plus"].real, r["h_plus"].imag,
                r["h_sc"].real, r["h_sc"].imag,
                r["transmitted_mass"].real, r["transmitted_mass"].imag,
                r["reflected_pairing"].real, r["reflected_pairing"].imag]
               for r in rows])
    with open(out / "summary.json", "w", encoding="utf-8") as fh:
        json.dump({"transmitted_mass_exponent": exponent}, fh,
                  sort_keys=True, indent=2)
        fh.write("\n")
    RunManifest(scenario=doc["scenario"], command="halfspace",
                params={"omega": doc["omega"], "kz": doc["kz"],
                        "rho_list": doc["rho_list"], "hin_re": hin.real,
                        "hin_im": hin.imag},
                phi={"x_lo": phi.x_lo, "x_hi": phi.x_hi,
                     "amplitude": phi.amplitude},
                quadrature={"tol": qtol, "pairing_halfwidth": halfwidth},
                seed=int(doc.get("seed", 0))).write(out / "manifest.json")
    return EXIT_OK


# -- check-specfun ----------------------------------------------------------------


def cmd_check_specfun(config_path, out_dir, tol, jobs):
    if config_path is not None:
        doc = _load_config(config_path)
        _require_keys(doc, set(), {"scenario", "n_max", "t_lo", "t_hi",
                                   "t_count", "seed"}, "check-specfun config")
    else:
        doc = {}
    n_max = int(doc.get("n_max", 60))
    t_lo = float(doc.get("t_lo", 0.1))
    t_hi = float(doc.get("t_hi", 50.0))
    t_count = int(doc.get("t_count", 40))
    threshold = tol if tol is not None else 1e-11

    worst_wronskian = 0.0
    worst_cross = 0.0
    worst_recurrence = 0.0
    for t in np.linspace(t_lo, t_hi, t_count):
        lad = specfun.bessel_ladder(n_max, float(t))
        for n in range(0, n_max + 1):
            j = lad.jn(n).to_complex().real
            y = lad.yn(n).to_complex().real
            jp = lad.jn(n - 1).to_complex().real - (n + 1) / t * j
            yp = lad.yn(n - 1).to_complex().real - (n + 1) / t * y
            worst_wronskian = max(worst_wronskian,
                                  abs(t * t * (j * yp - jp * y) - 1.0))
            cross = (lad.riccati_j(n) * lad.hn(n)
                     - lad.riccati_h(n) * lad.jn(n)).to_complex()
            worst_cross = max(worst_cross, abs(cross - (-1j / t)))
            if 1 <= n < n_max:
                jm = lad.jn(n - 1).to_complex().real
                jp1 = lad.jn(n + 1).to_complex().real
                if abs(j) > 1e-280:
                    rel = abs(jm + jp1 - (2 * n + 1) / t * j) / max(
                        abs(jm), abs(jp1), abs(j) / t)
                    worst_recurrence = max(worst_recurrence, rel)
    passed = (worst_wronskian < threshold and worst_cross < threshold
              and worst_recurrence < 1e-10)
    report = {
        "pass": bool(passed),
        "threshold": threshold,
        "max_wronskian_deviation": worst_wronskian,
        "max_cross_product_deviation": worst_cross,
        "max_recurrence_relative_deviation": worst_recurrence,
        "grid": {"n_max": n_max, "t_lo": t_lo, "t_hi": t_hi,
                 "t_count": t_count},
    }
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "specfun_report.json", "w", encoding="utf-8") as fh:
        json.dump(report, fh, sort_keys=True, indent=2)
        fh.write("\n")
    RunManifest(scenario=str(doc.get("scenario", "specfun-default-grid")),
                command="check-specfun", params=report["grid"],
                quadrature={"tol": threshold},
                seed=int(doc.get("seed", 0))).write(out / "manifest.json")
    return EXIT_OK if passed else EXIT_ACCURACY


# -- entry point -------------------------------------------------------------------


_COMMANDS = {
    "converge": (cmd_converge, True),
    "fields": (cmd_fields, True),
    "halfspace": (cmd_halfspace, True),
    "check-specfun": (cmd_check_specfun, False),
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cloaksim",
        description="spectral cloak simulator: scenario runs and checks")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, config_required) in _COMMANDS.items():
        p = sub.add_parser(name)
        p.add_argument("--config", required=config_required, default=None,
                       help="JSON run configuration")
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--tol", type=float, default=None,
                       help="override the configured tolerance")
        p.add_argument("--jobs", type=int, default=1,
                       help="worker cap (outputs are order-deterministic)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    func = _COMMANDS[args.command][0]
    try:
        return func(args.config, args.out, args.tol, args.jobs)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ResonanceError as exc:
        print(f"inadmissible frequency: {exc}", file=sys.stderr)
        return EXIT_RESONANCE
    except AccuracyError as exc:
        print(f"accuracy not reached: {exc}", file=sys.stderr)
        return EXIT_ACCURACY
    except CloakSimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
