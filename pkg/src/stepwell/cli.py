"""Command-line front end.

    python -m stepwell spectrum --l1 1 --l2 1 --v 25 --n 1..17
    python -m stepwell poe --n 1,2,17 --m 3 --format json
    python -m stepwell orbits --m 3
    python -m stepwell scaling --lambda 0.75 --n 1..10 --m 8
    python -m stepwell table1

Exit codes: 0 success, 2 invalid configuration, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__
from .errors import BracketError, ConvergenceError, InvalidInputError, RangeViolationError, StepWellError
from .exact import WellConfig, exact_roots, printed_momentum_formula, residual
from .symbolic import MAX_LENGTH, class_counts, necklaces, weight_signature

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3
CONFIG_KEYS = ("l1", "l2", "v", "lambda", "n", "m", "tol", "format", "out")
DEFAULTS = {"l1": 1.0, "l2": 1.0, "v": 25.0, "lambda": 0.5, "n": "1..10", "m": 3, "tol": 1e-13, "format": "csv", "out": None}


class ConfigError(InvalidInputError):
    pass


def parse_indices(text: str) -> list[int]:
    """Parse ``"1..17"``, ``"1,2,17"`` or mixtures such as ``"1..3,17"``."""
    out = set()
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if ".." in part:
                lo, hi = (int(x) for x in part.split(".."))
                if lo > hi:
                    raise ConfigError(f"empty index range {part!r}")
                out.update(range(lo, hi + 1))
            else:
                out.add(int(part))
        except ValueError:
            raise ConfigError(f"cannot parse index list {text!r}") from None
    if not out:
        raise ConfigError("index list is empty")
    if min(out) < 1:
        raise ConfigError("level indices start at 1")
    return sorted(out)


def read_config_file(path) -> dict:
    """Flat ``key = value`` file; blank lines and ``#`` comments are ignored."""
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = (x.strip() for x in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value
    return values


def _resolve(args) -> dict:
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        cfg.update(read_config_file(args.config))
    for key in CONFIG_KEYS:
        value = getattr(args, key.replace("lambda", "lam"), None)
        if value is not None:
            cfg[key] = value
    try:
        for key in ("l1", "l2", "v", "lambda", "tol"):
            cfg[key] = float(cfg[key])
        cfg["m"] = int(cfg["m"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if cfg["format"] not in ("csv", "json", "table"):
        raise ConfigError(f"unknown format {cfg['format']!r}")
    if not cfg["tol"] > 0:
        raise ConfigError("tol must be positive")
    if not 0 <= cfg["m"] <= MAX_LENGTH:
        raise ConfigError(f"m must lie in 0..{MAX_LENGTH}")
    return cfg


def _well(cfg) -> WellConfig:
    return WellConfig(cfg["l1"], cfg["l2"], cfg["v"])


# ---------------------------------------------------------------- commands


def cmd_spectrum(cfg):
    well = _well(cfg)
    idx = parse_indices(cfg["n"])
    rows = []
    for n in idx:
        lv = exact_roots(n, n, well, tol=cfg["tol"])[0]
        res = residual(lv.k, n, well) if lv.E != well.V else 0.0
        rows.append({"n": n, "S": lv.S, "k": lv.k, "E": lv.E, "residual": res})
    config = {"command": "spectrum", "l1": well.L1, "l2": well.L2, "v": well.V, "n": idx, "tol": cfg["tol"]}
    return config, {}, rows


def cmd_poe(cfg, command="poe"):
    from . import poe

    well = _well(cfg)
    idx = parse_indices(cfg["n"])
    m = cfg["m"]
    convention = poe.calibrated_convention()
    reports = poe.convergence_report(idx, m, well, convention=convention)
    rows = []
    for rep in reports:
        row = {"n": rep.n}
        row.update({f"S_m{order}": S for order, S in rep.orders})
        row["oracle"] = rep.oracle
        row.update({f"err_m{order}": e for (order, _), e in zip(rep.orders, rep.errors)})
        row.update({f"mismatch_m{order}": f for (order, _), f in zip(rep.orders, rep.branch_mismatch)})
        S_top = rep.orders[-1][1]
        row["k"] = rep.momenta[-1]
        row["k_printed_formula"] = printed_momentum_formula(S_top, well) if S_top > well.S_crit else S_top / well.L1
        row["branch_mismatch"] = rep.branch_mismatch[-1]
        rows.append(row)
    cal = poe.calibration()
    metadata = {
        "calibration_convention": convention.name,
        "calibration_target": cal.target,
        "calibration_candidates": cal.candidates,
        "warning": "k uses k = (s^2+V)/(2s) above the step; k_printed_formula applies (s^2-V)/(2s), which is kappa",
    }
    if any(r["branch_mismatch"] for r in rows):
        print("warning: order-%d approximation and exact root lie on opposite sides of S_crit for n=%s"
              % (m, [r["n"] for r in rows if r["branch_mismatch"]]), file=sys.stderr)
    config = {"command": command, "l1": well.L1, "l2": well.L2, "v": well.V, "n": idx, "m": m}
    return config, metadata, rows


def cmd_table1(cfg):
    from .poe import TABLE1

    baked = dict(cfg, l1=1.0, l2=1.0, v=25.0, n="1,2,17", m=3)
    config, metadata, rows = cmd_poe(baked, command="table1")
    metadata["reference"] = {str(n): {str(k): v for k, v in ref.items()} for n, ref in TABLE1.items()}
    return config, metadata, rows


def cmd_orbits(cfg, counts_only=False):
    m = cfg["m"]
    if m < 1:
        raise ConfigError("orbit catalog needs m >= 1")
    counts = class_counts(m)
    metadata = {"counts": counts}
    if counts_only:
        rows = counts
    else:
        rows = []
        for length in range(1, m + 1):
            for c in necklaces(length):
                rows.append(
                    {
                        "code": c.canonical,
                        "m": c.length,
                        "nu": c.nu,
                        "n_L": c.n_L,
                        "n_R": c.n_R,
                        "sigma_L": c.sigma_L,
                        "sigma_R": c.sigma_R,
                        "tau": c.tau,
                        "signature": str(weight_signature(c)),
                        "prime": c.is_prime,
                    }
                )
    config = {"command": "orbits", "m": m, "counts_only": counts_only}
    return config, metadata, rows


def cmd_scaling(cfg):
    from . import scaling

    sc = scaling.scaling_config(cfg["lambda"], cfg["l1"], cfg["l2"])
    idx = parse_indices(cfg["n"])
    m = cfg["m"]
    validation = scaling.validate_s0_reading()
    reading = validation["reading"]
    roots = {lv.n: lv.k for lv in scaling.scaling_roots(min(idx), max(idx), sc)}
    rows = []
    for n in idx:
        row = {"n": n}
        for order in range(m + 1):
            row[f"k_m{order}"] = scaling.scaling_kn(n, order, sc, reading).k
        row["k_bisection"] = roots[n]
        row["error"] = abs(row[f"k_m{m}"] - roots[n])
        rows.append(row)
    metadata = {
        "s0_reading": reading,
        "s0_validation": validation,
        "beta": sc.beta,
        "r_sc": sc.r_sc,
        "Omega0": sc.Omega0,
        "omega": sc.omega,
    }
    config = {"command": "scaling", "lambda": sc.lam, "l1": sc.L1, "l2": sc.L2, "n": idx, "m": m}
    return config, metadata, rows


# ---------------------------------------------------------------- output


def _cell(value, digits):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, f".{digits}g")
    if value is None:
        return ""
    return str(value)


def _columns(rows):
    cols = []
    for row in rows:
        for key in row:
            if key not in cols:
                cols.append(key)
    return cols


def to_csv(rows, extra=None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for block in [rows] + ([extra] if extra else []):
        if block is not rows:
            buf.write("\n")
        cols = _columns(block)
        writer.writerow(cols)
        for row in block:
            writer.writerow([_cell(row.get(c), 17) for c in cols])
    return buf.getvalue()


def to_table(rows, extra=None) -> str:
    out = []
    for block in [rows] + ([extra] if extra else []):
        cols = _columns(block)
        cells = [cols] + [[_cell(row.get(c), 6) for c in cols] for row in block]
        widths = [max(len(line[i]) for line in cells) for i in range(len(cols))]
        out.extend("  ".join(v.rjust(w) for v, w in zip(line, widths)) for line in cells)
        out.append("")
    return "\n".join(out)


def to_json(config, metadata, rows) -> str:
    doc = {"config": config, "metadata": dict(metadata, version=__version__), "rows": rows}
    return json.dumps(doc, indent=2) + "\n"


def render(fmt, config, metadata, rows) -> str:
    extra = metadata.get("counts") if config.get("command") == "orbits" and not config.get("counts_only") else None
    if fmt == "json":
        return to_json(config, metadata, rows)
    if fmt == "table":
        return to_table(rows, extra)
    return to_csv(rows, extra)


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key = value file; flags take precedence")
    common.add_argument("--format", choices=("csv", "json", "table"), default=None)
    common.add_argument("--out", default=None, help="output path (default: stdout)")

    well = argparse.ArgumentParser(add_help=False)
    well.add_argument("--l1", type=float, default=None)
    well.add_argument("--l2", type=float, default=None)

    parser = argparse.ArgumentParser(prog="stepwell", description="Spectrum of a square well with a potential step.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common, well], help="exact levels by bracketed bisection")
    p.add_argument("--v", type=float, default=None)
    p.add_argument("--n", default=None)
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("poe", parents=[common, well], help="periodic-orbit expansion convergence table")
    p.add_argument("--v", type=float, default=None)
    p.add_argument("--n", default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("orbits", parents=[common], help="orbit catalog up to code length m")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--counts-only", action="store_true")

    p = sub.add_parser("scaling", parents=[common, well], help="closed-form levels of the scaling step")
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.add_argument("--n", default=None)
    p.add_argument("--m", type=int, default=None)

    sub.add_parser("table1", parents=[common], help="benchmark run: L1=L2=1, V=25, n=1,2,17, m=3")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve(args)
        if args.command == "spectrum":
            result = cmd_spectrum(cfg)
        elif args.command == "poe":
            result = cmd_poe(cfg)
        elif args.command == "orbits":
            result = cmd_orbits(cfg, counts_only=args.counts_only)
        elif args.command == "scaling":
            result = cmd_scaling(cfg)
        else:
            result = cmd_table1(cfg)
        text = render(cfg["format"], *result)
    except (BracketError, ConvergenceError, RangeViolationError) as exc:
        print(f"stepwell: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (InvalidInputError, StepWellError) as exc:
        print(f"stepwell: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if cfg["out"]:
        with open(cfg["out"], "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
