"""Command-line surface for bounds, sweeps, chain verification, and
censuses, with machine-readable JSON or CSV output.

Determinism contract: identical invocations produce byte-identical
output once --no-timestamp is passed (it also zeroes measured wall
times).  All ln values are printed with 15 significant digits; exact
integers are printed in full up to the digit cap and otherwise replaced
by {"ln": ..., "overflow": true}.

Exit codes: 0 success, 1 usage errors, 2 when --strict is set and a
chain inequality fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from datetime import datetime, timezone

from . import bounds, census
from .ribbon import format_map

ENV_DIGIT_CAP = "MAPBOUNDS_DIGIT_CAP"


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract here is 1."""

    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _fmt(x):
    """15-significant-digit normalization for every float emitted.
    Integral floats are printed as integers, matching the CSV cells."""
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if math.isnan(x):
            return "nan"
        y = float(f"{x:.15g}")
        if y == int(y) and abs(y) < 1e15:
            return int(y)
        return y
    return x


def _walk(obj):
    if isinstance(obj, dict):
        return {k: _walk(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_walk(v) for v in obj]
    return _fmt(obj)


def _cell(x):
    if isinstance(x, float):
        y = _fmt(x)
        return y if isinstance(y, str) else f"{y:.15g}"
    return str(x)


def parse_grid(text: str, integer: bool = False) -> list:
    """Grid syntax start:stop:lin|log[:count], inclusive endpoints,
    count defaults to 25.  Integer grids are rounded and deduplicated."""
    parts = text.split(":")
    if len(parts) not in (3, 4):
        raise ValueError(f"grid must be start:stop:lin|log[:count], got {text!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
    except ValueError:
        raise ValueError(f"grid endpoints must be numbers, got {text!r}") from None
    scale = parts[2]
    if scale not in ("lin", "log"):
        raise ValueError(f"grid scale must be lin or log, got {scale!r}")
    count = 25
    if len(parts) == 4:
        if not parts[3].isdigit() or int(parts[3]) < 1:
            raise ValueError(f"grid count must be a positive integer, got {parts[3]!r}")
        count = int(parts[3])
    if start > stop:
        raise ValueError(f"grid start {start} exceeds stop {stop}")
    if scale == "log" and start <= 0:
        raise ValueError("log grid requires a positive start")
    if count == 1:
        values = [start]
    elif scale == "lin":
        step = (stop - start) / (count - 1)
        values = [start + i * step for i in range(count - 1)] + [stop]
    else:
        ratio = (stop / start) ** (1 / (count - 1))
        values = [start * ratio ** i for i in range(count - 1)] + [stop]
    if integer:
        out = sorted(set(round(v) for v in values))
        return out
    return values


def _timestamp(args) -> dict:
    if args.no_timestamp:
        return {}
    return {"timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds")}


def _emit(args, record: dict, rows: list[dict]) -> None:
    if args.format == "json":
        text = json.dumps(_walk(record), indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if rows:
            header = list(rows[0])
            writer.writerow(header)
            for row in rows:
                writer.writerow([_cell(row[k]) for k in header])
        text = buf.getvalue()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _digit_cap(args, parser) -> int:
    cap = args.digit_cap
    if cap is None:
        raw = os.environ.get(ENV_DIGIT_CAP)
        if raw is not None:
            try:
                cap = int(raw)
            except ValueError:
                parser.error(f"{ENV_DIGIT_CAP} must be an integer, got {raw!r}")
        else:
            cap = bounds.DEFAULT_DIGIT_CAP
    if cap < 1000:
        parser.error(f"digit cap must be at least 1000, got {cap}")
    # keep int -> str conversion legal for full-precision printing
    sys.set_int_max_str_digits(max(cap + 64, 4300))
    return cap


def _derived_dict(p: bounds.BoundParams) -> dict:
    d = bounds.derived_params(p)
    return {
        "V0": d.V0, "gGamma0": d.gGamma0, "deg0": d.deg0,
        "genus_lower": d.genus_lower, "r_disk": d.r_disk,
        "F_bound": d.F_bound, "G_bound": d.G_bound, "E_bound": d.E_bound,
    }


def _cmd_bound(args, parser) -> int:
    cap = _digit_cap(args, parser)
    p = bounds.BoundParams(args.g, args.L)
    record = {"command": "bound", "g": args.g, "L": args.L,
              "rounding": args.rounding}
    record.update(_derived_dict(p))
    if args.rounding == "real":
        lv = bounds.crit_count_bound(p, "real")
        exact = None
    else:
        try:
            lv = bounds.crit_count_bound(p, "ceil", digit_cap=cap)
            exact = lv.exact_value
        except bounds.ExactOverflowError as e:
            lv = e.log_value
            exact = {"ln": e.log_value.ln_magnitude, "overflow": True}
    record["crit_count_ln"] = lv.ln_magnitude
    record["crit_count_exact"] = exact
    record["genus_power_ln"] = bounds.genus_power_bound(args.g).total.ln_magnitude
    record["const_systole_ln"] = bounds.constant_systole_bound(p).ln_magnitude
    record["const_systole_product_ln"] = (
        bounds.constant_systole_product(p).ln_magnitude)
    record.update(_timestamp(args))
    row = {k: (json.dumps(_walk(v)) if isinstance(v, dict) else v)
           for k, v in record.items() if k != "timestamp"}
    _emit(args, record, [row])
    return 0


def _resolve_L(args, g: int) -> float:
    if args.L == "auto":
        return bounds.max_systole(g)
    return float(args.L)


def _cmd_sweep(args, parser) -> int:
    _digit_cap(args, parser)
    gs = parse_grid(args.g_grid, integer=True)
    if any(g < 2 for g in gs):
        parser.error("sweep genera must be >= 2")
    if args.L_grid is not None:
        L_values = parse_grid(args.L_grid)
    else:
        L_values = None  # auto per genus
    rows = []
    for g in gs:
        Ls = L_values if L_values is not None else [bounds.max_systole(g)]
        for L in Ls:
            p = bounds.BoundParams(g, L)
            row = {"g": g, "L": L}
            row.update(_derived_dict(p))
            row["crit_count_ln"] = bounds.crit_count_bound(p, "real").ln_magnitude
            row["genus_power_ln"] = bounds.genus_power_bound(g).total.ln_magnitude
            row["const_systole_ln"] = (
                bounds.constant_systole_bound(p).ln_magnitude)
            rows.append(row)
    record = {"command": "sweep", "points": len(rows), "rows": rows}
    record.update(_timestamp(args))
    _emit(args, record, rows)
    return 0


def _cmd_verify_chain(args, parser) -> int:
    _digit_cap(args, parser)
    if args.g_grid is not None:
        gs = parse_grid(args.g_grid, integer=True)
        if any(g < 2 for g in gs):
            parser.error("sweep genera must be >= 2")
        base = bounds.BoundParams(gs[0], _resolve_L(args, gs[0]))
        sweep_L = "auto" if args.L == "auto" else float(args.L)
        report = bounds.verify_chain(base, sweep_g=gs, sweep_L=sweep_L)
        rows = []
        for g, L, links in report.sweep_rows:
            for k in links:
                rows.append({"g": g, "L": L, "inequality_id": k.inequality_id,
                             "lhs_ln": k.lhs_ln, "rhs_ln": k.rhs_ln,
                             "margin_ln": k.margin_ln, "holds": k.holds})
        all_hold = all(r["holds"] for r in rows)
        record = {"command": "verify-chain", "sweep": True,
                  "onsets": dict(report.onsets), "all_hold": all_hold,
                  "rows": rows}
        record.update(_timestamp(args))
        _emit(args, record, rows)
    else:
        g = args.g if args.g is not None else 2
        p = bounds.BoundParams(g, _resolve_L(args, g))
        report = bounds.verify_chain(p)
        rows = [{"g": g, "L": p.L, "inequality_id": k.inequality_id,
                 "lhs_ln": k.lhs_ln, "rhs_ln": k.rhs_ln,
                 "margin_ln": k.margin_ln, "holds": k.holds,
                 "description": k.description}
                for k in report.links]
        all_hold = report.all_hold
        record = {"command": "verify-chain", "sweep": False, "g": g, "L": p.L,
                  "all_hold": all_hold, "links": rows}
        record.update(_timestamp(args))
        _emit(args, record, rows)
    if args.strict and not all_hold:
        return 2
    return 0


def _cmd_census(args, parser) -> int:
    if args.max_edges < 1:
        parser.error("--max-edges must be at least 1")
    max_vertices = args.max_vertices or args.max_edges + 1
    max_degree = args.max_degree or 2 * args.max_edges
    budget = census.ConstructionBudget(
        genus_target=args.genus,
        max_vertices=max_vertices,
        max_edges=args.max_edges,
        max_degree=max_degree,
        work_cap=args.work_cap,
    )
    result = census.run_census(budget, workers=args.workers,
                               keep_maps=args.dump_maps)
    wall = 0.0 if args.no_timestamp else result.wall_time_seconds
    record = {
        "command": "census",
        "budget": {
            "genus_target": budget.genus_target,
            "max_vertices": budget.max_vertices,
            "max_edges": budget.max_edges,
            "max_degree": budget.max_degree,
            "work_cap": budget.work_cap,
        },
        "workers": args.workers,
        "sequences_counted": result.sequences_counted,
        "iso_classes": result.iso_classes,
        "filling_classes": result.filling_classes,
        "iso_classes_mirror_merged": result.iso_classes_mirror_merged,
        "filling_classes_mirror_merged": result.filling_classes_mirror_merged,
        "truncated": result.truncated,
        "wall_time_seconds": wall,
    }
    if args.dump_maps:
        record["maps"] = [format_map(m) for m in result.filling_maps]
    record.update(_timestamp(args))
    row = {k: v for k, v in record.items()
           if k not in ("budget", "maps", "timestamp")}
    row = {**record["budget"], **row}
    del row["command"]
    _emit(args, record, [row])
    return 0


def _cmd_euler_char(args, parser) -> int:
    chi = bounds.euler_char_moduli(args.g)
    ln_abs = math.log(abs(chi.numerator)) - math.log(chi.denominator)
    record = {
        "command": "euler-char",
        "g": args.g,
        "chi": f"{chi.numerator}/{chi.denominator}",
        "chi_ln_abs": ln_abs,
        "chi_asymptotic_ln": bounds.chi_asymptotic(args.g).ln_magnitude,
        "negative": chi < 0,
    }
    record.update(_timestamp(args))
    row = {k: v for k, v in record.items() if k != "timestamp"}
    _emit(args, record, [row])
    return 0


def _cmd_gap(args, parser) -> int:
    gs = parse_grid(args.g_grid, integer=True)
    if any(g < 2 for g in gs):
        parser.error("gap genera must be >= 2")
    rows = []
    for g in gs:
        r = bounds.gap_report(g, args.L)
        rows.append({"g": g, "upper_ln": r.upper_ln, "lower_ln": r.lower_ln,
                     "ratio_lower_over_upper": r.ratio_lower_over_upper,
                     "quotient": r.quotient,
                     "naked_quotient": r.naked_quotient, "holds": r.holds})
    all_hold = all(r["holds"] for r in rows)
    record = {"command": "gap", "L": args.L,
              "beta_prime_ln": bounds.GAP_BETA_PRIME_LN,
              "exponent_cap": bounds.GAP_EXPONENT_CAP,
              "all_hold": all_hold, "rows": rows}
    record.update(_timestamp(args))
    _emit(args, record, rows)
    if args.strict and not all_hold:
        return 2
    return 0


def _add_common(sub):
    sub.add_argument("--format", choices=("json", "csv"), default="json")
    sub.add_argument("--output", default=None, help="write to file instead of stdout")
    sub.add_argument("--no-timestamp", action="store_true",
                     help="omit timestamps and zero measured wall times")
    sub.add_argument("--digit-cap", type=int, default=None,
                     help=f"decimal digit cap for exact integers "
                          f"(default {bounds.DEFAULT_DIGIT_CAP}, env {ENV_DIGIT_CAP})")


def build_parser() -> _Parser:
    parser = _Parser(prog="mapbounds",
                     description="bounds calculator and map census tool")
    subs = parser.add_subparsers(dest="command", required=True)

    b = subs.add_parser("bound", help="evaluate the counting bounds at one point")
    b.add_argument("--g", type=int, required=True)
    b.add_argument("--L", type=float, required=True)
    b.add_argument("--rounding", choices=("ceil", "real"), default="ceil")
    _add_common(b)
    b.set_defaults(func=_cmd_bound)

    s = subs.add_parser("sweep", help="evaluate the bounds over parameter grids")
    s.add_argument("--g-grid", required=True, help="start:stop:lin|log[:count]")
    s.add_argument("--L-grid", default=None, help="grid; omit for L=max_systole(g)")
    _add_common(s)
    s.set_defaults(func=_cmd_sweep)

    v = subs.add_parser("verify-chain", help="check the proof inequality chain")
    v.add_argument("--g", type=int, default=None)
    v.add_argument("--g-grid", default=None, help="start:stop:lin|log[:count]")
    v.add_argument("--L", default="auto",
                   help="length cap, or 'auto' for max_systole(g)")
    v.add_argument("--strict", action="store_true",
                   help="exit 2 when any inequality fails")
    _add_common(v)
    v.set_defaults(func=_cmd_verify_chain)

    c = subs.add_parser("census", help="run the generative filling-graph census")
    c.add_argument("--genus", type=int, required=True)
    c.add_argument("--max-edges", type=int, required=True)
    c.add_argument("--max-vertices", type=int, default=None,
                   help="default max_edges + 1")
    c.add_argument("--max-degree", type=int, default=None,
                   help="default 2 * max_edges")
    c.add_argument("--work-cap", type=int, default=1_000_000)
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--dump-maps", action="store_true",
                   help="include exchange-format maps in JSON output")
    _add_common(c)
    c.set_defaults(func=_cmd_census)

    e = subs.add_parser("euler-char", help="moduli-space Euler characteristic")
    e.add_argument("--g", type=int, required=True)
    _add_common(e)
    e.set_defaults(func=_cmd_euler_char)

    gp = subs.add_parser("gap", help="upper/lower bound gap at a fixed length cap")
    gp.add_argument("--L", type=float, default=10.0)
    gp.add_argument("--g-grid", default="2:1000000:log",
                    help="start:stop:lin|log[:count]")
    gp.add_argument("--strict", action="store_true")
    _add_common(gp)
    gp.set_defaults(func=_cmd_gap)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except (ValueError, OSError) as e:
        sys.stderr.write(f"{parser.prog}: error: {e}\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
