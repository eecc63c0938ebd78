"""Command-line interface.

Subcommands:

* ``check-symbol`` -- admissibility verdict and witnesses (exit 1 if not).
* ``bounds``       -- slice-family bounds for the configured symbol.
* ``essnorm``      -- truncation bracket, bounds, and the sandwich check.
* ``verify``       -- closed-form verification battery (exit 1 on failure).
* ``report``       -- everything above in one document.

Configuration is a JSON file (see README); ``--deg`` and ``--tail-starts``
override the truncation block.  ``--format json`` output is canonical and
byte-identical across runs (timings appear only in table output).  Exit
codes: 0 success, 1 admissibility / verification / consistency failure,
2 malformed configuration.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from .bounds import (
    BoundReport,
    DiskFamily,
    NotAdmissibleError,
    SearchConfig,
    evaluate_bounds,
    neumann_constants,
    sandwich_check,
)
from .domain import ProductDomain
from .hankel import EssNormBracket, ess_norm_bracket
from .symbols import Symbol, check_admissible
from .verify import run_verification


class ConfigError(ValueError):
    pass


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _parse_radius(raw) -> Fraction:
    if isinstance(raw, bool):
        raise ConfigError("radius must be a number or rational string")
    if isinstance(raw, (int, float)):
        return Fraction(raw)
    if isinstance(raw, str):
        return Fraction(raw.strip())
    raise ConfigError(f"cannot parse radius {raw!r}")


@dataclass
class RunConfig:
    symbol: Symbol | None
    family: DiskFamily
    truncation: dict
    quadrature: dict
    fmt: str
    out: str | None


_TRUNC_DEFAULTS = {
    "degree": 30,
    "tail_starts": (10, 15, 20),
    "n_schedule": None,
    "p_schedule": (0.0, 0.5, 0.9, 0.99),
    "kernel_g_range": None,
    "families": ("z", "w"),
}

_QUAD_DEFAULTS = {
    "tau0": 1.0,
    "r0": 0.5,
    "eps1": 0.1,
    "j_values": (1, 2, 3),
    "n_radial": 32,
    "n_angular": 64,
}


def load_config(args: argparse.Namespace) -> RunConfig:
    data: dict = {}
    if args.config is not None:
        try:
            with open(args.config, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config root must be a JSON object")

    dom_raw = data.get("domain", {})
    try:
        domain = ProductDomain(
            _parse_radius(dom_raw.get("r1", 1)), _parse_radius(dom_raw.get("r2", 1))
        )
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"invalid domain: {exc}") from exc

    symbol = None
    if "symbol" in data:
        try:
            symbol = Symbol.from_json_dict(data["symbol"])
        except (ValueError, TypeError, KeyError) as exc:
            raise ConfigError(f"invalid symbol: {exc}") from exc

    search_raw = dict(data.get("search", {}))
    try:
        if "grid_inner" in search_raw:
            search_raw["grid_inner"] = tuple(int(v) for v in search_raw["grid_inner"])
        search = SearchConfig(**{k: v for k, v in search_raw.items()})
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid search block: {exc}") from exc

    families = tuple(data.get("families", ("z", "w")))
    try:
        family = DiskFamily(domain, families, search)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    trunc = dict(_TRUNC_DEFAULTS)
    for key, val in dict(data.get("truncation", {})).items():
        if key not in trunc:
            raise ConfigError(f"unknown truncation key {key!r}")
        trunc[key] = val
    if args.deg is not None:
        trunc["degree"] = args.deg
    if args.tail_starts is not None:
        try:
            trunc["tail_starts"] = tuple(int(t) for t in args.tail_starts.split(","))
        except ValueError as exc:
            raise ConfigError("--tail-starts must be a comma-separated list of integers") from exc
    trunc["tail_starts"] = tuple(int(t) for t in trunc["tail_starts"])
    trunc["degree"] = int(trunc["degree"])
    trunc["p_schedule"] = tuple(float(p) for p in trunc["p_schedule"])
    trunc["families"] = tuple(trunc["families"])
    if trunc["n_schedule"] is not None:
        trunc["n_schedule"] = tuple(int(n) for n in trunc["n_schedule"])
    if trunc["degree"] < 1:
        raise ConfigError("truncation degree must be at least 1")
    if not trunc["tail_starts"]:
        raise ConfigError("tail_starts must not be empty")
    if max(trunc["tail_starts"]) >= trunc["degree"]:
        raise ConfigError("tail starts must stay below the truncation degree")

    quad = dict(_QUAD_DEFAULTS)
    for key, val in dict(data.get("quadrature", {})).items():
        if key not in quad:
            raise ConfigError(f"unknown quadrature key {key!r}")
        quad[key] = val
    quad["j_values"] = tuple(int(j) for j in quad["j_values"])
    if any(j < 1 or j > 4 for j in quad["j_values"]):
        raise ConfigError("quadrature j_values must lie in 1..4")

    return RunConfig(symbol, family, trunc, quad, args.format, args.out)


def _require_symbol(cfg: RunConfig) -> Symbol:
    if cfg.symbol is None:
        raise ConfigError("this command needs a config file with a 'symbol' block")
    return cfg.symbol


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _csv_text(rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


# -- command bodies -----------------------------------------------------------


def _bracket(cfg: RunConfig) -> EssNormBracket:
    t = cfg.truncation
    return ess_norm_bracket(
        _require_symbol(cfg),
        cfg.family.domain,
        max_degree=t["degree"],
        tail_starts=t["tail_starts"],
        n_schedule=t["n_schedule"],
        p_schedule=t["p_schedule"],
        families=t["families"],
        kernel_g_range=t["kernel_g_range"],
    )


def cmd_check_symbol(cfg: RunConfig) -> int:
    phi = _require_symbol(cfg)
    report = check_admissible(phi, cfg.family.domain)
    if cfg.fmt == "json":
        _emit(cfg, _json_text(report.to_json_dict()))
    elif cfg.fmt == "csv":
        rows = [["admissible", str(report.admissible).lower()]]
        rows += [["witness_" + fam, str(wit)] for fam, wit in report.witnesses]
        _emit(cfg, _csv_text(rows))
    else:
        lines = [f"symbol: {phi}", f"admissible: {'yes' if report.admissible else 'no'}"]
        for fam, wit in report.witnesses:
            lines.append(f"  failing family {fam}: boundary residual {wit}")
        _emit(cfg, "\n".join(lines) + "\n")
    return 0 if report.admissible else 1


def _bounds_table(report: BoundReport) -> list[str]:
    lines = [
        f"lower bound          : {_fmt(report.lower)}",
        f"unit-bidisk lower    : "
        + ("n/a" if report.bidisk_lower is None else _fmt(report.bidisk_lower)),
        f"upper bound          : {_fmt(report.upper)}",
    ]
    if report.argmax_lower is not None:
        s = report.argmax_lower
        lines.append(
            f"maximizing slice     : family {s.family}, angle {_fmt(s.boundary_angle)}, "
            f"center {_fmt(s.center.real)}{s.center.imag:+.6g}i, scale {_fmt(abs(s.scale))}"
        )
    return lines


def cmd_bounds(cfg: RunConfig) -> int:
    start = time.perf_counter()
    report = evaluate_bounds(_require_symbol(cfg), cfg.family)
    elapsed = time.perf_counter() - start
    if cfg.fmt == "json":
        _emit(cfg, _json_text(report.to_json_dict()))
    elif cfg.fmt == "csv":
        rows = [
            ["lower", _fmt(report.lower)],
            ["bidisk_lower", "" if report.bidisk_lower is None else _fmt(report.bidisk_lower)],
            ["upper", _fmt(report.upper)],
        ]
        _emit(cfg, _csv_text(rows))
    else:
        lines = _bounds_table(report) + [f"elapsed: {elapsed:.3f} s"]
        _emit(cfg, "\n".join(lines) + "\n")
    return 0


def cmd_essnorm(cfg: RunConfig) -> int:
    start = time.perf_counter()
    bracket = _bracket(cfg)
    bounds = evaluate_bounds(_require_symbol(cfg), cfg.family)
    sandwich = sandwich_check(bounds, bracket)
    elapsed = time.perf_counter() - start
    if cfg.fmt == "json":
        payload = {
            "bracket": bracket.to_json_dict(),
            "bounds": bounds.to_json_dict(),
            "sandwich": sandwich.to_json_dict(),
        }
        _emit(cfg, _json_text(payload))
    elif cfg.fmt == "csv":
        rows = [["section", "key", "n", "value"]]
        rows += [["tail", k, n, _fmt(v)] for k, n, v in bracket.table]
        rows += [["kernel", _fmt(abs(p)), "", _fmt(v)] for p, v in bracket.sequence]
        rows += [
            ["bracket", "lower_est", "", _fmt(bracket.lower_est)],
            ["bracket", "upper_est", "", _fmt(bracket.upper_est)],
            ["sandwich", "passed", "", str(sandwich.passed).lower()],
        ]
        _emit(cfg, _csv_text(rows))
    else:
        lines = ["tail-window norms", "   k    N  value"]
        for k, n, v in bracket.table:
            lines.append(f"  {k:>2}  {n:>3}  {_fmt(v)}")
        lines.append("kernel sequence")
        for p, v in bracket.sequence:
            lines.append(f"  |p| = {_fmt(abs(p)):<10} value = {_fmt(v)}")
        lines.append(f"bracket: lower_est = {_fmt(bracket.lower_est)}, upper_est = {_fmt(bracket.upper_est)}")
        lines += _bounds_table(bounds)
        lines.append(f"sandwich: {'PASS' if sandwich.passed else 'FAIL'}")
        for name, lhs, rhs, ok in sandwich.checks:
            lines.append(f"  {name:<20} {_fmt(lhs)} <= {_fmt(rhs)} : {'ok' if ok else 'VIOLATED'}")
        lines.append(f"elapsed: {elapsed:.3f} s")
        _emit(cfg, "\n".join(lines) + "\n")
    return 0 if sandwich.passed else 1


def cmd_verify(cfg: RunConfig) -> int:
    q = cfg.quadrature
    rows = run_verification(
        tau0=float(q["tau0"]),
        r0=float(q["r0"]),
        eps1=float(q["eps1"]),
        j_values=q["j_values"],
        n_radial=int(q["n_radial"]),
        n_angular=int(q["n_angular"]),
    )
    ok = all(r.passed for r in rows)
    if cfg.fmt == "json":
        _emit(cfg, _json_text({"passed": ok, "rows": [r.to_json_dict() for r in rows]}))
    elif cfg.fmt == "csv":
        table = [["name", "closed_form", "computed", "abs_error", "passed"]]
        table += [
            [r.name, _fmt(r.closed_form), _fmt(r.computed), _fmt(r.abs_error), str(r.passed).lower()]
            for r in rows
        ]
        _emit(cfg, _csv_text(table))
    else:
        lines = [f"{'row':<28} {'closed form':>18} {'computed':>18} {'abs error':>12}  status"]
        for r in rows:
            lines.append(
                f"{r.name:<28} {_fmt(r.closed_form):>18} {_fmt(r.computed):>18} "
                f"{r.abs_error:>12.3e}  {'pass' if r.passed else 'FAIL'}"
            )
        lines.append(f"verification: {'PASS' if ok else 'FAIL'}")
        _emit(cfg, "\n".join(lines) + "\n")
    return 0 if ok else 1


def cmd_report(cfg: RunConfig) -> int:
    phi = _require_symbol(cfg)
    start = time.perf_counter()
    adm = check_admissible(phi, cfg.family.domain)
    payload: dict = {
        "symbol": phi.to_json_dict(),
        "domain": {"r1": str(cfg.family.domain.r1), "r2": str(cfg.family.domain.r2)},
        "admissibility": adm.to_json_dict(),
        "neumann": neumann_constants(cfg.family.domain).to_json_dict(),
    }
    failed = not adm.admissible
    if adm.admissible:
        bracket = _bracket(cfg)
        bounds = evaluate_bounds(phi, cfg.family)
        sandwich = sandwich_check(bounds, bracket)
        payload["bracket"] = bracket.to_json_dict()
        payload["bounds"] = bounds.to_json_dict()
        payload["sandwich"] = sandwich.to_json_dict()
        failed = failed or not sandwich.passed
    q = cfg.quadrature
    rows = run_verification(
        tau0=float(q["tau0"]),
        r0=float(q["r0"]),
        eps1=float(q["eps1"]),
        j_values=q["j_values"],
        n_radial=int(q["n_radial"]),
        n_angular=int(q["n_angular"]),
    )
    payload["verification"] = {
        "passed": all(r.passed for r in rows),
        "rows": [r.to_json_dict() for r in rows],
    }
    failed = failed or not all(r.passed for r in rows)
    elapsed = time.perf_counter() - start

    if cfg.fmt == "json":
        _emit(cfg, _json_text(payload))
    elif cfg.fmt == "csv":
        rows_out = [["section", "key", "value"]]

        def _flat(prefix: str, obj) -> None:
            if isinstance(obj, dict):
                for k in sorted(obj):
                    _flat(f"{prefix}.{k}" if prefix else str(k), obj[k])
            elif isinstance(obj, list):
                rows_out.append([prefix.split(".")[0], prefix, json.dumps(obj)])
            else:
                rows_out.append([prefix.split(".")[0], prefix, obj])

        _flat("", payload)
        _emit(cfg, _csv_text(rows_out))
    else:
        lines = [
            f"symbol: {phi}",
            f"admissible: {'yes' if adm.admissible else 'no'}",
        ]
        if adm.admissible:
            lines.append(
                f"bracket: [{_fmt(payload['bracket']['lower_est'])}, {_fmt(payload['bracket']['upper_est'])}]"
            )
            lines += _bounds_table(bounds)
            lines.append(f"sandwich: {'PASS' if payload['sandwich']['passed'] else 'FAIL'}")
        lines.append(f"verification: {'PASS' if payload['verification']['passed'] else 'FAIL'}")
        lines.append(f"elapsed: {elapsed:.3f} s")
        _emit(cfg, "\n".join(lines) + "\n")
    return 1 if failed else 0


_COMMANDS = {
    "check-symbol": cmd_check_symbol,
    "bounds": cmd_bounds,
    "essnorm": cmd_essnorm,
    "verify": cmd_verify,
    "report": cmd_report,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="essnorm",
        description="Hankel essential-norm brackets and slice-family bounds on product disk domains.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("check-symbol", "admissibility verdict for the configured symbol"),
        ("bounds", "slice-family lower/upper bounds"),
        ("essnorm", "truncation bracket plus sandwich consistency"),
        ("verify", "closed-form verification battery"),
        ("report", "full report (bounds, bracket, verification)"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="path to a JSON configuration file")
        p.add_argument("--format", choices=("table", "json", "csv"), default="table")
        p.add_argument("--deg", type=int, help="override the truncation degree")
        p.add_argument("--tail-starts", help="comma-separated tail starts override")
        p.add_argument("--out", help="write output to this file instead of stdout")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config(args)
        return _COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NotAdmissibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for fam, wit in exc.report.witnesses:
            print(f"  failing family {fam}: boundary residual {wit}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
