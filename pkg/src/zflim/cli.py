"""Command-line front end: per-plant analysis pipeline and thin command wrappers.

Machine output is JSON (written atomically when --out is given), human
output is aligned text on stdout.  Infinities are serialised as the string
"inf".  Exit codes: 0 success, 1 the requested object does not exist (no
certificate / no multiplier), 2 unstable plant or internal error, 3 parse
error, 4 bisection bracket failure (a partial report is still written),
5 report chain-inequality violation.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
import time
from dataclasses import dataclass, field
from typing import Optional

from .continuous_duality import CtCertificateInput, ct_check_nonodd, ct_check_odd
from .duality_lp import bisect_upper_bound, certificate_residual, lp_certificate
from .errors import BracketInvalid, ZflimError
from .interval_limits import legacy_upper_bound
from .lti_core import nyquist_value, shift_by_inverse_gain
from .phase_limits import coprime_pairs, phase_bound, scan_upper_bound
from .plants import BUILTIN, PlantRecord, dump_plant, load_plant
from .rational_core import (
    MONOTONE,
    ODD,
    RationalFrequency,
    construct_tight_multiplier,
)
from .zf_search import SearchConfig, bisect_lower_bound, find_multiplier

EXIT_OK = 0
EXIT_NOT_FOUND = 1
EXIT_ERROR = 2
EXIT_PARSE = 3
EXIT_BRACKET = 4
EXIT_CHAIN = 5

SCHEMA_VERSION = 1
CHAIN_SLACK = 1e-6


@dataclass
class AnalysisReport:
    """Per-plant result bundle with method attribution and stage timings."""

    plant_name: str
    class_tag: str
    k_nyquist: float = math.inf
    k_lower: float = math.inf
    k_lower_n_z: Optional[int] = None
    k_lower_grid: Optional[int] = None
    k_upper_single: float = math.inf
    witness_alpha: Optional[int] = None
    witness_beta: Optional[int] = None
    k_upper_lp: float = math.inf
    lp_beta: Optional[int] = None
    lp_tol_k: Optional[float] = None
    dual_gap_percent: Optional[float] = None
    wall_times: dict = field(default_factory=dict)
    note: Optional[str] = None

    def chain_violations(self) -> list[str]:
        out = []
        if self.k_lower > self.k_upper_single + CHAIN_SLACK:
            out.append("k_lower exceeds single-frequency upper bound")
        if self.k_lower > self.k_upper_lp + CHAIN_SLACK:
            out.append("k_lower exceeds LP upper bound")
        if min(self.k_upper_single, self.k_upper_lp) > self.k_nyquist + CHAIN_SLACK:
            out.append("upper bound exceeds the linear stability gain")
        return out

    def to_json_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "plant": self.plant_name,
            "class": self.class_tag,
            "k_nyquist": self.k_nyquist,
            "k_lower": {
                "value": self.k_lower,
                "n_z": self.k_lower_n_z,
                "grid": self.k_lower_grid,
            },
            "k_upper_single": {
                "value": self.k_upper_single,
                "alpha": self.witness_alpha,
                "beta": self.witness_beta,
            },
            "k_upper_lp": {
                "value": self.k_upper_lp,
                "beta": self.lp_beta,
                "tol_k": self.lp_tol_k,
            },
            "dual_gap_percent": self.dual_gap_percent,
            "wall_times": self.wall_times,
            "note": self.note,
        }


def _jsonable(obj):
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def write_json(path: Optional[str], payload: dict):
    text = json.dumps(_jsonable(payload), indent=2)
    if path is None:
        return
    atomic_write(path, text + "\n")


def atomic_write(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".zflim-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def thread_cap() -> int:
    """Parallelism cap from ZFLIM_THREADS (execution is serial when 1)."""
    raw = os.environ.get("ZFLIM_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _resolve_plant(args) -> PlantRecord:
    if getattr(args, "example", None):
        name = args.example
        if name not in BUILTIN:
            raise ValueError(f"unknown example {name!r}; have {sorted(BUILTIN)}")
        return BUILTIN[name]
    if getattr(args, "plant", None):
        return load_plant(args.plant)
    raise ValueError("one of --example or --plant is required")


def _add_plant_args(p):
    p.add_argument("--example", help=f"bundled plant name ({', '.join(sorted(BUILTIN))})")
    p.add_argument("--plant", help="path to a plant JSON file")


def _class_arg(p, required=True):
    p.add_argument(
        "--class",
        dest="class_tag",
        choices=[MONOTONE, ODD],
        required=required,
        help="nonlinearity class the multiplier must respect",
    )


def _taps_json(mult) -> dict:
    return {str(i): v for i, v in sorted(mult.taps.items())}


def cmd_nyquist(args) -> int:
    record = _resolve_plant(args)
    k = nyquist_value(record.tf())
    print(f"{record.name}: k_nyquist = {k:.6f}" if math.isfinite(k)
          else f"{record.name}: k_nyquist = inf")
    write_json(args.out, {"plant": record.name, "k_nyquist": k})
    return EXIT_OK


def cmd_limits(args) -> int:
    rows = ["alpha,beta,omega,bound_monotone_rad,bound_odd_rad"]
    for rf in coprime_pairs(args.beta_max):
        rows.append(
            f"{rf.alpha},{rf.beta},{rf.omega!r},"
            f"{phase_bound(rf, MONOTONE)!r},{phase_bound(rf, ODD)!r}"
        )
    text = "\n".join(rows) + "\n"
    if args.out:
        atomic_write(args.out, text)
        print(f"wrote {len(rows) - 1} rows to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_construct(args) -> int:
    rf = RationalFrequency(args.alpha, args.beta)
    sign = +1 if args.sign == "+" else -1
    mult = construct_tight_multiplier(rf, args.class_tag, sign)
    phase = mult.phase_at(rf.omega)
    print(f"M(z) = 1 - sum h_i z^-i with taps {_taps_json(mult)}; phase {phase:+.12f} rad at {rf}")
    write_json(args.out, {
        "alpha": rf.alpha,
        "beta": rf.beta,
        "class": args.class_tag,
        "sign": args.sign,
        "taps": _taps_json(mult),
        "phase": phase,
    })
    return EXIT_OK


def cmd_certify(args) -> int:
    record = _resolve_plant(args)
    tf = record.tf()
    if args.k is not None:
        tf = shift_by_inverse_gain(tf, args.k)
    cert = lp_certificate(tf, args.beta, args.class_tag)
    if cert is None:
        print(f"{record.name}: no certificate at beta={args.beta} for class {args.class_tag}")
        return EXIT_NOT_FOUND
    residual = certificate_residual(tf, cert)
    print(f"{record.name}: certificate found (beta={args.beta}, class={args.class_tag}, "
          f"margin={cert.margin:.3e}, residual_max={residual:.3e})")
    write_json(args.out, {
        "beta": cert.beta,
        "class": cert.class_tag,
        "k": args.k,
        "lambdas": list(cert.lambdas),
        "margin": cert.margin,
        "residual_max": residual,
    })
    return EXIT_OK


def cmd_search(args) -> int:
    record = _resolve_plant(args)
    tf = record.tf()
    if args.k is not None:
        tf = shift_by_inverse_gain(tf, args.k)
    config = SearchConfig(n_z=args.nz, grid_size=args.grid)
    mult = find_multiplier(tf, config, args.class_tag)
    if mult is None:
        print(f"{record.name}: no multiplier found (n_z={args.nz}, class={args.class_tag})")
        return EXIT_NOT_FOUND
    print(f"{record.name}: multiplier found with {len(mult.taps)} taps, "
          f"l1 norm {mult.l1_norm:.6f}")
    write_json(args.out, {
        "n_z": args.nz,
        "class": args.class_tag,
        "k": args.k,
        "taps": _taps_json(mult),
    })
    return EXIT_OK


def cmd_legacy(args) -> int:
    record = _resolve_plant(args)
    t0 = time.perf_counter()
    result = legacy_upper_bound(
        record.tf(), args.class_tag, args.resolution,
        args.k_lo, args.k_hi, args.tol_k, args.n_search,
    )
    wall = time.perf_counter() - t0
    a, b = result.witness if result.witness else (None, None)
    print(f"{record.name}: legacy upper bound {result.k_upper:.6f} "
          f"(witness [{a}, {b}], resolution {args.resolution}, {wall:.1f}s)")
    write_json(args.out, {
        "k_upper": result.k_upper,
        "a": a,
        "b": b,
        "resolution": args.resolution,
        "wall_time": wall,
    })
    return EXIT_OK


def cmd_ct_check(args) -> int:
    with open(args.input, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    freqs = [math.inf if f == "inf" else float(f) for f in data["freqs"]]
    values = [complex(v[0], v[1]) if isinstance(v, list) else complex(v) for v in data["values"]]
    inp = CtCertificateInput(
        freqs=freqs,
        values=values,
        lambdas=[float(x) for x in data["lambdas"]],
        t_horizon=data.get("t_horizon"),
        t_step=data.get("t_step"),
    )
    check = args.check or data.get("check", "odd")
    holds = ct_check_odd(inp) if check == "odd" else ct_check_nonodd(inp)
    print(f"ct-check {check}: {'holds' if holds else 'does not hold'}")
    write_json(args.out, {"check": check, "holds": holds})
    return EXIT_OK if holds else EXIT_NOT_FOUND


def cmd_analyze(args) -> int:
    record = _resolve_plant(args)
    tf = record.tf()
    report = AnalysisReport(plant_name=record.name, class_tag=args.class_tag)
    exit_code = EXIT_OK

    t0 = time.perf_counter()
    if thread_cap() > 1:
        # the two opening stages are independent; ZFLIM_THREADS > 1 overlaps them
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=2) as pool:
            fut_n = pool.submit(nyquist_value, tf)
            fut_s = pool.submit(scan_upper_bound, tf, args.class_tag, args.beta_max)
            report.k_nyquist = fut_n.result()
            scan = fut_s.result()
        report.wall_times["nyquist"] = report.wall_times["scan_upper"] = (
            time.perf_counter() - t0
        )
    else:
        report.k_nyquist = nyquist_value(tf)
        report.wall_times["nyquist"] = time.perf_counter() - t0
        t0 = time.perf_counter()
        scan = scan_upper_bound(tf, args.class_tag, args.beta_max)
        report.wall_times["scan_upper"] = time.perf_counter() - t0
    report.k_upper_single = scan.k_upper
    if scan.witness_freq is not None:
        report.witness_alpha = scan.witness_freq.alpha
        report.witness_beta = scan.witness_freq.beta

    cap = min(report.k_upper_single, report.k_nyquist)
    if math.isinf(cap):
        report.note = "passive regime: no finite upper bound, any slope admits the trivial multiplier"
        report.k_lower = math.inf
    else:
        config = SearchConfig(n_z=args.nz, grid_size=args.grid)
        report.k_lower_n_z = args.nz
        report.k_lower_grid = args.grid
        t0 = time.perf_counter()
        try:
            report.k_lower = bisect_lower_bound(
                tf, config, args.class_tag, cap / 1000.0, cap, args.tol_k
            )
        except BracketInvalid as exc:
            report.note = f"lower-bound bracket failed: {exc}"
            exit_code = EXIT_BRACKET
        report.wall_times["lower_bound"] = time.perf_counter() - t0

        report.lp_beta = args.lp_beta
        report.lp_tol_k = args.tol_k
        t0 = time.perf_counter()
        if exit_code == EXIT_OK:
            try:
                k_hi = cap
                report.k_upper_lp = bisect_upper_bound(
                    tf, args.lp_beta, args.class_tag,
                    report.k_lower * (1.0 - 1e-9), k_hi, args.tol_k,
                )
            except BracketInvalid as exc:
                report.note = f"upper-bound bracket failed: {exc}"
                exit_code = EXIT_BRACKET
        report.wall_times["lp_upper"] = time.perf_counter() - t0

    if math.isfinite(report.k_lower) and report.k_lower > 0:
        best_upper = min(report.k_upper_single, report.k_upper_lp)
        if math.isfinite(best_upper):
            report.dual_gap_percent = 100.0 * (best_upper - report.k_lower) / report.k_lower

    violations = report.chain_violations()
    if violations and exit_code == EXIT_OK:
        report.note = "; ".join(violations)
        exit_code = EXIT_CHAIN

    write_json(args.out, report.to_json_dict())
    _print_report(report)
    if violations:
        print("chain violation: " + "; ".join(violations), file=sys.stderr)
    return exit_code


def _fmt(x: float) -> str:
    return f"{x:.6f}" if math.isfinite(x) else "inf"


def _print_report(r: AnalysisReport):
    wit = (f"({r.witness_alpha}/{r.witness_beta})*pi"
           if r.witness_alpha is not None else "-")
    gap = f"{r.dual_gap_percent:.4f}%" if r.dual_gap_percent is not None else "-"
    print(f"plant            {r.plant_name}")
    print(f"class            {r.class_tag}")
    print(f"k_nyquist        {_fmt(r.k_nyquist)}")
    print(f"k_lower          {_fmt(r.k_lower)}  (n_z={r.k_lower_n_z}, grid={r.k_lower_grid})")
    print(f"k_upper_single   {_fmt(r.k_upper_single)}  at {wit}")
    print(f"k_upper_lp       {_fmt(r.k_upper_lp)}  (beta={r.lp_beta})")
    print(f"dual_gap         {gap}")
    if r.note:
        print(f"note             {r.note}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zflim",
        description="Slope bounds and non-existence certificates for Lurye feedback loops",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full lower/upper bound pipeline for one plant")
    _add_plant_args(p)
    _class_arg(p)
    p.add_argument("--beta-max", type=int, default=50)
    p.add_argument("--lp-beta", type=int, default=210)
    p.add_argument("--nz", type=int, default=8)
    p.add_argument("--grid", type=int, default=2000)
    p.add_argument("--tol-k", type=float, default=1e-4)
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("nyquist", help="largest stable linear gain")
    _add_plant_args(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_nyquist)

    p = sub.add_parser("limits", help="CSV of phase bounds over rational frequencies")
    p.add_argument("--beta-max", type=int, default=50)
    p.add_argument("--out")
    p.set_defaults(func=cmd_limits)

    p = sub.add_parser("certify", help="multi-frequency non-existence certificate")
    _add_plant_args(p)
    _class_arg(p)
    p.add_argument("--k", type=float, help="slope; the plant is shifted to G + 1/k first")
    p.add_argument("--beta", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("search", help="FIR multiplier search on a frequency grid")
    _add_plant_args(p)
    _class_arg(p)
    p.add_argument("--k", type=float, help="slope; the plant is shifted to G + 1/k first")
    p.add_argument("--nz", type=int, default=8)
    p.add_argument("--grid", type=int, default=2000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("construct", help="one-tap multiplier meeting the phase bound")
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--beta", type=int, required=True)
    _class_arg(p)
    p.add_argument("--sign", choices=["+", "-"], default="+")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("legacy", help="interval-limitation upper bound (comparison method)")
    _add_plant_args(p)
    _class_arg(p)
    p.add_argument("--resolution", type=float, default=1e-3)
    p.add_argument("--k-lo", type=float, required=True)
    p.add_argument("--k-hi", type=float, required=True)
    p.add_argument("--tol-k", type=float, default=1e-3)
    p.add_argument("--n-search", type=int, default=100000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_legacy)

    p = sub.add_parser("ct-check", help="continuous-time non-existence check from samples")
    p.add_argument("--input", required=True, help="JSON file matching CtCertificateInput")
    p.add_argument("--check", choices=["odd", "nonodd"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_ct_check)

    p = sub.add_parser("show-plant", help="re-emit a plant record as JSON")
    _add_plant_args(p)
    p.set_defaults(func=cmd_show_plant)

    return parser


def cmd_show_plant(args) -> int:
    record = _resolve_plant(args)
    print(dump_plant(record))
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BracketInvalid as exc:
        print(f"bracket error: {exc}", file=sys.stderr)
        return EXIT_BRACKET
    except ZflimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
