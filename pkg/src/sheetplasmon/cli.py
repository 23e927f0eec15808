"""Command-line front end.

    sheetplasmon dispersion --c0 1e-3 --qmin 0.02 --qmax 0.1 --n 9
    sheetplasmon amplitude --c0 1e-3 --qt 0.05
    sheetplasmon semiclassical --c0 1e-3 --qgrid 0.02,0.05,0.08
    sheetplasmon propagator --w -0.99 --k 0.05 --zp 0.3 --t 1.0
    sheetplasmon check [--oracle] [--dump-operator FILE]

Exit codes: 0 success, 1 domain/config error or failed check, 2 no root found.
"""
import argparse
import csv
import io
import json
import logging
import math
import sys

import numpy as np

from . import amplitude, checks, dispersion, oracle, propagator, semiclassical
from .errors import DomainError, NotFound, NumericError
from .params import PhysicalParams, ScaledPoint

log = logging.getLogger("sheetplasmon")

DEFAULTS = {
    "c0": None,
    "beta": 1.0,
    "eta0": None,
    "coupling": None,
    "format": "csv",
    "seed": 0,
    "qmin": 0.02,
    "qmax": 0.1,
    "n": 9,
    "qgrid": None,
    "qt": 0.05,
    "zmax": 10.0,
    "nz": 101,
    "w": "-0.99",
    "k": 0.05,
    "zp": 0.3,
    "t": 1.0,
    "rpar": 0.0,
    "zmin": -3.0,
    "grid_zmax": 40.0,
    "grid_n": 400,
    "oracle": False,
    "dump_operator": None,
    "json_out": False,
}


class ConfigError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def _finite_or_fail(rec):
    rec = dict(rec)
    bad = [k for k, v in rec.items() if isinstance(v, float) and not math.isfinite(v)]
    for k in bad:
        rec[k] = ""
    if bad:
        rec["status"] = "failed: non-finite " + ",".join(bad)
    return rec


def emit(records, fmt="csv", stream=None, columns=None):
    """Write homogeneous records as CSV (header row, RFC 4180 quoting) or a JSON array."""
    stream = stream if stream is not None else sys.stdout
    records = [_finite_or_fail(r) for r in records]
    if columns is None:
        columns = list(records[0].keys()) if records else []
    if fmt == "json":
        def clean(v):
            if isinstance(v, float):
                return float(f"{v:.17g}")
            if isinstance(v, (list, tuple)):
                return [clean(x) for x in v]
            return v
        json.dump([{k: clean(r.get(k, "")) for k in columns} for r in records], stream)
        stream.write("\n")
        return
    if fmt != "csv":
        raise ConfigError(f"unknown output format {fmt!r}")
    w = csv.writer(stream, lineterminator="\r\n")
    w.writerow(columns)
    for r in records:
        w.writerow([_fmt(r.get(k, "")) for k in columns])


def _add_common(p):
    p.add_argument("--config", help="JSON file with option values (flags override it)")
    p.add_argument("--c0", type=float, help="dimensionless coupling C0")
    p.add_argument("--beta", type=float, help="binding strength (unit restoration / physical input)")
    p.add_argument("--eta0", type=float, help="surface density (physical input)")
    p.add_argument("--coupling", type=float, help="e^2 eta0 / eps0 (physical input)")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--seed", type=int)


def build_parser():
    parser = _Parser(prog="sheetplasmon", description="Plasmon dispersion of a delta-bound charged sheet.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("dispersion", help="plasmon roots over a q grid")
    _add_common(p)
    p.add_argument("--qmin", type=float)
    p.add_argument("--qmax", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--json", dest="json_out", action="store_true", help="JSON with null vectors")

    p = sub.add_parser("amplitude", help="even amplitude F(z) at the root for one q")
    _add_common(p)
    p.add_argument("--qt", type=float)
    p.add_argument("--zmax", type=float)
    p.add_argument("--n", dest="nz", type=int)

    p = sub.add_parser("semiclassical", help="exact root against the asymptotic laws")
    _add_common(p)
    p.add_argument("--qgrid", help="comma-separated qt values")
    p.add_argument("--qmin", type=float)
    p.add_argument("--qmax", type=float)
    p.add_argument("--n", type=int)

    p = sub.add_parser("propagator", help="samples of the energy- and time-domain propagators")
    _add_common(p)
    p.add_argument("--w", help="complex energy, e.g. -0.99 or -0.99+0.01j")
    p.add_argument("--k", type=float)
    p.add_argument("--zp", type=float)
    p.add_argument("--t", type=float)
    p.add_argument("--rpar", type=float)
    p.add_argument("--zmin", type=float)
    p.add_argument("--zmax", type=float)
    p.add_argument("--n", dest="nz", type=int)

    p = sub.add_parser("check", help="run the self-check suite")
    _add_common(p)
    p.add_argument("--oracle", action="store_true", default=None, help="include the Fredholm cross-validation")
    p.add_argument("--dump-operator", dest="dump_operator", help="write the oracle operator at the root to FILE")
    p.add_argument("--qt", type=float)
    p.add_argument("--grid-zmax", dest="grid_zmax", type=float)
    p.add_argument("--grid-n", dest="grid_n", type=int)
    return parser


def resolve_config(args):
    """Defaults, then the JSON config file, then explicit flags."""
    cfg = dict(DEFAULTS)
    path = getattr(args, "config", None)
    if path:
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        unknown = set(data) - set(DEFAULTS)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(data)
    for k, v in vars(args).items():
        if k in ("config", "command"):
            continue
        if v is not None:
            cfg[k] = v
    cfg["command"] = args.command

    physical = [cfg.get(k) is not None for k in ("eta0", "coupling")]
    if cfg["c0"] is not None and any(physical):
        raise ConfigError("give either --c0 or physical parameters (--eta0, --coupling), not both")
    if any(physical):
        if not all(physical):
            raise ConfigError("physical input needs both --eta0 and --coupling")
        try:
            cfg["c0"] = PhysicalParams(cfg["beta"], cfg["eta0"], cfg["coupling"]).c0()
        except DomainError as exc:
            raise ConfigError(str(exc)) from exc
    if cfg["c0"] is None:
        cfg["c0"] = 1e-3
    if not (isinstance(cfg["c0"], (int, float)) and math.isfinite(cfg["c0"]) and cfg["c0"] > 0):
        raise ConfigError(f"c0 must be positive, got {cfg['c0']!r}")
    if not cfg["beta"] > 0:
        raise ConfigError("beta must be positive")
    return cfg


def _q_grid(cfg):
    if cfg.get("qgrid"):
        g = cfg["qgrid"]
        vals = [float(x) for x in g.split(",")] if isinstance(g, str) else [float(x) for x in g]
        return vals
    n = int(cfg["n"])
    if n < 1:
        raise ConfigError("--n must be at least 1")
    if n == 1:
        return [float(cfg["qmin"])]
    return np.linspace(cfg["qmin"], cfg["qmax"], n).tolist()


def cmd_dispersion(cfg, out):
    grid = _q_grid(cfg)
    results = dispersion.dispersion_sweep(grid, cfg["c0"])
    recs = []
    for r in results:
        if isinstance(r, dispersion.SweepFailure):
            recs.append({"qt": r.qt, "wt": "", "det_residual": "", "nullity_gap": "",
                         "status": "failed: " + r.message})
            continue
        rec = {"qt": r.qt, "wt": r.wt, "det_residual": r.det_residual, "nullity_gap": r.nullity_gap,
               "status": "ok" if not r.other_roots else f"ok; other roots {list(r.other_roots)}"}
        if cfg.get("json_out"):
            rec["null_vector"] = [[float(v.real), float(v.imag)] for v in r.null_vector]
        recs.append(rec)
    fmt = "json" if cfg.get("json_out") else cfg["format"]
    cols = ["qt", "wt", "det_residual", "nullity_gap", "status"] + (["null_vector"] if fmt == "json" else [])
    emit(recs, fmt, out, cols)
    return 2 if recs and all(r["status"].startswith("failed") for r in recs) else 0


def cmd_amplitude(cfg, out):
    c0 = cfg["c0"]
    root = dispersion.find_root(cfg["qt"], c0)
    prof = amplitude.build_profile(root, c0)
    z = np.linspace(0.0, cfg["zmax"], int(cfg["nz"]))
    F = amplitude.amplitude_eval(z, prof)
    far = amplitude.far_field(z, prof)
    recs = [{"z": float(a), "re_F": float(b.real), "im_F": float(b.imag), "abs_F": float(abs(b)),
             "re_far": float(c.real), "im_far": float(c.imag), "abs_far": float(abs(c)), "status": "ok"}
            for a, b, c in zip(z, F, far)]
    log.info("root wt=%.17g, residual %.3e", root.wt, amplitude.integral_residual(prof))
    emit(recs, cfg["format"], out,
         ["z", "re_F", "im_F", "abs_F", "re_far", "im_far", "abs_far", "status"])
    return 0


def cmd_semiclassical(cfg, out):
    rows = semiclassical.compare_report(_q_grid(cfg), cfg["c0"])
    recs = [{"qt": r.qt, "wt_exact": r.wt_exact, "wt_leading": r.wt_leading, "wt_corrected": r.wt_corrected,
             "rel_dev_leading": r.rel_dev_leading, "rel_dev_corrected": r.rel_dev_corrected,
             "status": r.status if r.semiclassical or r.status != "ok" else "ok (outside semiclassical thresholds)"}
            for r in rows]
    emit(recs, cfg["format"], out, ["qt", "wt_exact", "wt_leading", "wt_corrected",
                                    "rel_dev_leading", "rel_dev_corrected", "status"])
    return 2 if rows and all(r.status.startswith("failed") for r in rows) else 0


def cmd_propagator(cfg, out):
    try:
        w = complex(str(cfg["w"]).replace(" ", ""))
    except ValueError as exc:
        raise ConfigError(f"cannot parse energy {cfg['w']!r}") from exc
    beta = cfg["beta"]
    recs = []
    for z in np.linspace(cfg["zmin"], cfg["zmax"], int(cfg["nz"])):
        g = propagator.hat_green(w, cfg["k"], float(z), cfg["zp"], beta)
        gt = propagator.td_green(cfg["t"], cfg["rpar"], float(z), cfg["zp"], beta)
        recs.append({"z": float(z), "ghat_re": g.real, "ghat_im": g.imag, "g_re": gt.real, "g_im": gt.imag,
                     "w_re": w.real, "w_im": w.imag, "k": cfg["k"], "zp": cfg["zp"], "t": cfg["t"],
                     "rpar": cfg["rpar"], "status": "ok"})
    emit(recs, cfg["format"], out)
    return 0


def cmd_check(cfg, out):
    grid = oracle.GridSpec(z_max=cfg["grid_zmax"], n_points=cfg["grid_n"])
    results = checks.run_all(with_oracle=bool(cfg["oracle"]))
    ok = True
    for tag, r in results:
        out.write(f"{tag:>3} {r.line()}\n")
        ok &= r.passed
    if cfg.get("dump_operator"):
        root = dispersion.find_root(cfg["qt"], cfg["c0"])
        op = oracle.build_operator(ScaledPoint(cfg["qt"], root.wt), cfg["c0"], grid)
        with open(cfg["dump_operator"], "w") as fh:
            oracle.dump_operator(op, fh)
        out.write(f"operator ({op.matrix.shape[0]}x{op.matrix.shape[0]}) written to {cfg['dump_operator']}\n")
    out.write("all checks passed\n" if ok else "some checks FAILED\n")
    return 0 if ok else 1


COMMANDS = {
    "dispersion": cmd_dispersion,
    "amplitude": cmd_amplitude,
    "semiclassical": cmd_semiclassical,
    "propagator": cmd_propagator,
    "check": cmd_check,
}


def run(argv=None, out=None):
    out = out if out is not None else sys.stdout
    if not logging.getLogger().handlers:
        logging.basicConfig(level=logging.INFO, stream=sys.stderr, format="%(name)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
        cfg = resolve_config(args)
        shown = {k: v for k, v in sorted(cfg.items())}
        log.info("effective config: %s", json.dumps(shown, default=str))
        np.random.seed(cfg["seed"])
        buf = io.StringIO()
        code = COMMANDS[cfg["command"]](cfg, buf)
        out.write(buf.getvalue())
        return code
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (ConfigError, DomainError, NumericError) as exc:
        log.error("%s", exc)
        return 1
    except NotFound as exc:
        log.error("not found: %s", exc)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
