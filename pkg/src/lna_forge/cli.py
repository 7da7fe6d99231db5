"""Command-line front end: lib / synth / sweep / report (+ cxcurve data).

Exit codes: 0 success, 1 the run finished but the target or result is
spec-infeasible, 2 usage or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import sys
from collections import Counter

import numpy as np

import math

from .errors import LnaForgeError
from .explorer import (CSV_COLUMNS, TABLE1_EXPECTATION, WORKERS_ENV,
                       SpecFilter, SweepPlan, default_gainxw_plan,
                       default_wxid_plan, export, import_provenance,
                       import_rows, run_sweep, zigbee_filter)
from .inductors import (build_library, max_q_envelope, min_q_envelope,
                        select_drain_inductor)
from .synth import (CX_MIN, DEFAULT_RD_TARGET, DRAIN_Q_MARGIN, LG_MAX, LS_MIN,
                    SynthTarget, hypothetical_cx, synthesize)
from .techcard import TechnologyCard, card_hash, default_card, default_card_path, load_card

EXIT_OK, EXIT_INFEASIBLE, EXIT_USAGE = 0, 1, 2


def _load_tech(path: str | None) -> TechnologyCard:
    card = load_card(path) if path else default_card()
    print(f"tech-card sha256: {card_hash(card)}")
    return card


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(x) for x in text.split(","))


def cmd_lib(args) -> int:
    tech = _load_tech(args.tech)
    lib = build_library(tech)
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["nt", "od", "w", "s", "L", "Q", "r_series",
                         "r_parallel"])
        for m in lib:
            g = m.geometry
            writer.writerow([repr(v) for v in
                             (g.nt, g.od, g.w, g.s, m.L, m.q_at_f0,
                              m.r_series, m.r_parallel)])
    print(f"library: {len(lib)} inductors -> {args.out}")
    if args.envelopes:
        max_env = max_q_envelope(lib)
        min_env = min_q_envelope(lib)
        q_floor = DRAIN_Q_MARGIN * math.sqrt(DEFAULT_RD_TARGET / tech.rl - 1.0)
        drain = select_drain_inductor(lib, DEFAULT_RD_TARGET, q_min=q_floor)
        with open(args.envelopes, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["kind", "L", "Q", "r_series", "r_parallel"])
            for kind, env in (("maxq", max_env), ("minq", min_env),
                              ("drain", [drain])):
                for m in env:
                    writer.writerow([kind] + [repr(v) for v in
                                              (m.L, m.q_at_f0, m.r_series,
                                               m.r_parallel)])
        print(f"envelopes -> {args.envelopes}")
    return EXIT_OK


def cmd_synth(args) -> int:
    tech = _load_tech(args.tech)
    lib = build_library(tech)
    target = SynthTarget(gain_db=args.gain, id=args.id, w1=args.w1,
                         l_ch=args.lch, gain_tol_db=args.gain_tol,
                         match_floor_db=args.match_floor)
    cand = synthesize(target, tech, lib)
    from .explorer import _row_of
    row = _row_of(cand)
    print(",".join(CSV_COLUMNS))
    print(",".join("" if row[c] is None else
                   (repr(row[c]) if isinstance(row[c], float) else str(row[c]))
                   for c in CSV_COLUMNS))
    return EXIT_OK if cand.verdict.feasible else EXIT_INFEASIBLE


def cmd_sweep(args) -> int:
    tech = _load_tech(args.tech)
    if args.kind == "wxid":
        plan = default_wxid_plan(args.lch)
        if args.w1_list:
            plan = SweepPlan(kind="wxid", w1_list=_floats(args.w1_list),
                             id_list=plan.id_list, gain_list=plan.gain_list,
                             l_ch=args.lch)
        if args.id_list:
            plan = SweepPlan(kind="wxid", w1_list=plan.w1_list,
                             id_list=_floats(args.id_list),
                             gain_list=plan.gain_list, l_ch=args.lch)
        if args.gain is not None:
            plan = SweepPlan(kind="wxid", w1_list=plan.w1_list,
                             id_list=plan.id_list, gain_list=(args.gain,),
                             l_ch=args.lch)
    else:
        plan = default_gainxw_plan(args.lch, args.id)
        if args.w1_list:
            plan = SweepPlan(kind="gainxw", w1_list=_floats(args.w1_list),
                             id_list=plan.id_list, gain_list=plan.gain_list,
                             l_ch=args.lch)
        if args.gain_list:
            plan = SweepPlan(kind="gainxw", w1_list=plan.w1_list,
                             id_list=plan.id_list,
                             gain_list=_floats(args.gain_list), l_ch=args.lch)
    result = run_sweep(plan, tech, workers=args.workers)
    export(result, args.out, args.format)
    feasible = len(result.feasible())
    print(f"sweep {args.kind}: {len(result.records)} points, "
          f"{feasible} feasible -> {args.out}")
    return EXIT_OK if feasible else EXIT_INFEASIBLE


def _print_matrix(rows: list[dict[str, object]]) -> None:
    # binding counts at the swept-direction boundaries, wxid semantics
    ids = sorted({r["id"] for r in rows})
    w1s = sorted({r["w1"] for r in rows})
    gains = sorted({r["gain_target"] for r in rows})
    direction_sel = {
        "MinID": lambda r: r["id"] == ids[0],
        "MinW1": lambda r: r["w1"] == w1s[0],
        "MaxW1": lambda r: r["w1"] == w1s[-1],
    }
    if len(gains) > 1:
        direction_sel = {"MaxGm": lambda r: r["gain_target"] == gains[-1]}
    print("binding counts (limit x direction, Table-style expectation in "
          "brackets):")
    directions = list(direction_sel)
    print("  limit   " + "  ".join(f"{d:>10}" for d in directions))
    for limit in (LS_MIN, LG_MAX, CX_MIN):
        cells = []
        for d in directions:
            n = sum(1 for r in rows
                    if direction_sel[d](r) and limit in str(r["binding"]))
            mark = TABLE1_EXPECTATION.get((limit, d), "?")
            cells.append(f"{n:>5} [{mark:>3}]")
        print(f"  {limit:<7} " + "  ".join(cells))


def cmd_report(args) -> int:
    try:
        rows = import_rows(args.result)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: cannot read result file: {exc}", file=sys.stderr)
        return EXIT_USAGE
    prov = import_provenance(args.result)
    if prov:
        print(f"tech-card sha256: {prov['tech_hash']}")
    else:
        print("tech-card sha256: (not recorded in csv)")
    total = len(rows)
    feasible = [r for r in rows if r["status"] == "Feasible"]
    print(f"records: {total}")
    print(f"feasible: {len(feasible)}")
    print(f"infeasible: {total - len(feasible)}")
    flags = Counter()
    for r in rows:
        if r["binding"]:
            flags.update(str(r["binding"]).split("+"))
    for name, count in sorted(flags.items()):
        print(f"  binding {name}: {count}")
    _print_matrix(rows)

    flt = None
    if args.filter == "zigbee":
        flt = zigbee_filter()
    elif args.min_gain is not None or args.max_nf is not None \
            or args.min_iip3 is not None:
        flt = SpecFilter(
            min_gain_db=args.min_gain if args.min_gain is not None else float("-inf"),
            max_nf_db=args.max_nf if args.max_nf is not None else float("inf"),
            min_iip3_dbm=args.min_iip3 if args.min_iip3 is not None else float("-inf"),
            match_ceiling_db=-10.0)
    if flt is not None:
        passing = [
            r for r in feasible
            if r["gain_db"] is not None
            and r["gain_db"] >= flt.min_gain_db
            and r["nf_db"] <= flt.max_nf_db
            and r["iip3_dbm"] >= flt.min_iip3_dbm
            and r["s11_db"] <= flt.match_ceiling_db
            and r["s22_db"] <= flt.match_ceiling_db]
        print(f"spec filter: {len(passing)} of {len(feasible)} feasible "
              f"records pass")
        nf_pass = sum(1 for r in feasible if r["nf_db"] is not None
                      and r["nf_db"] <= flt.max_nf_db)
        iip3_pass = sum(1 for r in feasible if r["iip3_dbm"] is not None
                        and r["iip3_dbm"] >= flt.min_iip3_dbm)
        print(f"  NF <= {flt.max_nf_db:g} dB: {nf_pass}")
        print(f"  IIP3 >= {flt.min_iip3_dbm:g} dBm: {iip3_pass}")
    return EXIT_OK


def cmd_cxcurve(args) -> int:
    ids = _floats(args.id_list)
    w = np.linspace(args.w_min, args.w_max, args.points)
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["id", "w", "cx"])
        for id_value in ids:
            for wi in w:
                writer.writerow([repr(id_value), repr(float(wi)),
                                 repr(hypothetical_cx(id_value, float(wi)))])
    print(f"hypothetical C_X curves -> {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lna-forge",
        description="Design-space exploration for inductively degenerated "
                    "common-source LNAs")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lib", help="build the spiral inductor library")
    libsub = p.add_subparsers(dest="lib_command", required=True)
    pb = libsub.add_parser("build", help="build and export the library")
    pb.add_argument("--tech", default=None, help="technology card path")
    pb.add_argument("--out", required=True, help="output CSV")
    pb.add_argument("--envelopes", default=None,
                    help="optional CSV with the max-Q/min-Q envelopes")
    pb.set_defaults(func=cmd_lib)

    p = sub.add_parser("synth", help="synthesize one design")
    p.add_argument("--gain", type=float, required=True, help="target (dB)")
    p.add_argument("--id", type=float, required=True, help="bias current (A)")
    p.add_argument("--w1", type=float, required=True, help="M1 width (m)")
    p.add_argument("--lch", type=float, default=120e-9, help="channel length (m)")
    p.add_argument("--gain-tol", type=float, default=0.5)
    p.add_argument("--match-floor", type=float, default=-15.0)
    p.add_argument("--tech", default=None)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("sweep", help="run a design-space sweep")
    p.add_argument("kind", choices=["wxid", "gainxw"])
    p.add_argument("--tech", default=None)
    p.add_argument("--lch", type=float, default=120e-9)
    p.add_argument("--id", type=float, default=0.4e-3,
                   help="fixed bias for gainxw (A)")
    p.add_argument("--gain", type=float, default=None,
                   help="fixed gain for wxid (dB)")
    p.add_argument("--w1-list", default=None, help="comma-separated widths (m)")
    p.add_argument("--id-list", default=None, help="comma-separated currents (A)")
    p.add_argument("--gain-list", default=None, help="comma-separated gains (dB)")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--workers", type=int, default=None,
                   help=f"worker processes (default {WORKERS_ENV} env or 1)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("report", help="summarize an exported result")
    p.add_argument("result", help="CSV or JSON export")
    p.add_argument("--filter", choices=["zigbee"], default=None)
    p.add_argument("--min-gain", type=float, default=None)
    p.add_argument("--max-nf", type=float, default=None)
    p.add_argument("--min-iip3", type=float, default=None)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("cxcurve", help="export the hypothetical C_X(W1) "
                                       "curves (unit constants)")
    p.add_argument("--id-list", default="0.3,0.4,0.5,0.6,0.7")
    p.add_argument("--w-min", type=float, default=0.005)
    p.add_argument("--w-max", type=float, default=1.0)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_cxcurve)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except LnaForgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
