"""Render figures from exported CSVs.

Usage:
  lna-figures cx-curves   --curves cx.csv --out-dir figs
  lna-figures inductors   --library lib.csv --envelopes env.csv --out-dir figs
  lna-figures passives    --sweep wxid.csv [--series id|gain_target]
                          [--stem name] --out-dir figs
  lna-figures nf-iip3     --sweep wxid.csv [--nf-max 3] [--iip3-min -4]
                          --out-dir figs
"""

from __future__ import annotations

import argparse
import pathlib
import sys

from . import render
from .io import EmptySelection, MissingColumns
from .recipes import (cx_curves_recipe, inductor_space_recipe, nf_iip3_recipe,
                      passives_recipe)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lna-figures")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cx-curves")
    p.add_argument("--curves", required=True)
    p.add_argument("--out-dir", required=True)

    p = sub.add_parser("inductors")
    p.add_argument("--library", required=True)
    p.add_argument("--envelopes", required=True)
    p.add_argument("--out-dir", required=True)

    p = sub.add_parser("passives")
    p.add_argument("--sweep", required=True)
    p.add_argument("--series", default="id", choices=["id", "gain_target"])
    p.add_argument("--stem", default="")
    p.add_argument("--out-dir", required=True)

    p = sub.add_parser("nf-iip3")
    p.add_argument("--sweep", required=True)
    p.add_argument("--nf-max", type=float, default=3.0)
    p.add_argument("--iip3-min", type=float, default=-4.0)
    p.add_argument("--out-dir", required=True)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "cx-curves":
        recipe = cx_curves_recipe(args.curves)
    elif args.command == "inductors":
        recipe = inductor_space_recipe(args.library, args.envelopes)
    elif args.command == "passives":
        recipe = passives_recipe(args.sweep, series=args.series,
                                 out_stem=args.stem)
    else:
        recipe = nf_iip3_recipe(args.sweep, args.nf_max, args.iip3_min)
    pathlib.Path(args.out_dir).mkdir(parents=True, exist_ok=True)
    try:
        paths = render(recipe, args.out_dir)
    except (EmptySelection, MissingColumns) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for path in paths:
        print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
