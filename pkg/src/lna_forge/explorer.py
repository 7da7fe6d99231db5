"""Design-space sweeps, spec filtering, binding-constraint statistics, export.

Two sweep kinds mirror the exploration protocol: width x current at a
fixed gain band, and gain x width at a fixed current.  Every grid point
is synthesized independently (data-parallel across processes when asked)
and kept in the result whether feasible or not, so infeasible regions
stay countable and plottable as gaps.
"""

from __future__ import annotations

import csv
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from . import __version__ as _engine_version
from .inductors import InductorSpec, build_library
from .netsolver import l_of
from .synth import (CX_MIN, C_MAX, LG_MAX, LS_MIN, NO_CONVERGE,
                    DesignCandidate, SynthTarget, synthesize)
from .techcard import TechnologyCard, card_hash

WORKERS_ENV = "LNA_FORGE_THREADS"

CSV_COLUMNS = ["l_ch", "w1", "id", "gain_target", "ls", "lg", "cx", "ld",
               "qd", "c1", "cp", "gain_db", "s11_db", "s22_db", "nf_db",
               "iip3_dbm", "status", "binding"]

METRIC_COLUMNS = ["gain_db", "s11_db", "s22_db", "nf_db", "iip3_dbm"]

# objective-direction columns of the limit-influence table
MAX_GM, MIN_ID, MIN_W1, MAX_W1 = "MaxGm", "MinID", "MinW1", "MaxW1"

# qualitative expectation from the theoretical analysis: P = primary,
# S = second-order only, -- = no influence
TABLE1_EXPECTATION = {
    (LS_MIN, MAX_GM): "P", (LS_MIN, MIN_ID): "S",
    (LS_MIN, MIN_W1): "--", (LS_MIN, MAX_W1): "S",
    (LG_MAX, MAX_GM): "P", (LG_MAX, MIN_ID): "P+S",
    (LG_MAX, MIN_W1): "P", (LG_MAX, MAX_W1): "S",
    (CX_MIN, MAX_GM): "P", (CX_MIN, MIN_ID): "P+S",
    (CX_MIN, MIN_W1): "--", (CX_MIN, MAX_W1): "P+S",
}


@dataclass(frozen=True)
class SweepPlan:
    kind: str                 # "wxid" | "gainxw"
    w1_list: tuple[float, ...]
    id_list: tuple[float, ...]
    gain_list: tuple[float, ...]
    l_ch: float
    gain_tol_db: float = 0.5
    match_floor_db: float = -15.0

    def validate(self) -> None:
        if self.kind not in ("wxid", "gainxw"):
            raise ValueError(f"unknown sweep kind {self.kind!r}")
        for name in ("w1_list", "id_list", "gain_list"):
            values = getattr(self, name)
            if not values:
                raise ValueError(f"{name} must be non-empty")
            if any(b <= a for a, b in zip(values, values[1:])):
                raise ValueError(f"{name} must be strictly increasing")
        if self.kind == "wxid" and len(self.gain_list) != 1:
            raise ValueError("wxid plan takes exactly one gain target")
        if self.kind == "gainxw" and len(self.id_list) != 1:
            raise ValueError("gainxw plan takes exactly one bias current")

    def grid(self) -> list[tuple[float, float, float]]:
        """(w1, id, gain) points in stable export order."""
        return [(w1, id_, g)
                for g in self.gain_list
                for id_ in self.id_list
                for w1 in self.w1_list]


def default_wxid_plan(l_ch: float = 120e-9) -> SweepPlan:
    """The published exploration grid at the 10.5 dB gain band."""
    scale = 2 if l_ch > 180e-9 else 1
    w1 = tuple(w * scale * 1e-6 for w in range(16, 112, 8))
    return SweepPlan(kind="wxid", w1_list=w1,
                     id_list=(0.3e-3, 0.4e-3, 0.5e-3, 0.6e-3, 0.7e-3),
                     gain_list=(10.5,), l_ch=l_ch)


def default_gainxw_plan(l_ch: float = 120e-9, id_: float = 0.4e-3,
                        gains: tuple[float, ...] = (10.5, 11.0, 12.0, 13.0)
                        ) -> SweepPlan:
    scale = 2 if l_ch > 180e-9 else 1
    w1 = tuple(w * scale * 1e-6 for w in range(16, 112, 8))
    return SweepPlan(kind="gainxw", w1_list=w1, id_list=(id_,),
                     gain_list=gains, l_ch=l_ch)


@dataclass(frozen=True)
class SweepResult:
    plan: SweepPlan
    records: tuple[DesignCandidate, ...]
    tech_hash: str
    engine_version: str = _engine_version

    def feasible(self) -> list[DesignCandidate]:
        return [r for r in self.records if r.verdict.feasible]


@dataclass(frozen=True)
class SpecFilter:
    min_gain_db: float = float("-inf")
    max_nf_db: float = float("inf")
    min_iip3_dbm: float = float("-inf")
    match_ceiling_db: float = 0.0


def zigbee_filter() -> SpecFilter:
    """Receiver requirements filter: NF < 3 dB, IIP3 > -4 dBm,
    matching better than -10 dB, gain at least 10 dB."""
    return SpecFilter(min_gain_db=10.0, max_nf_db=3.0,
                      min_iip3_dbm=-4.0, match_ceiling_db=-10.0)


_WORK = {}


def _init_worker(tech: TechnologyCard, lib: list[InductorSpec]) -> None:
    _WORK["tech"] = tech
    _WORK["lib"] = lib


def _run_point(args: tuple[float, float, float, float, float, float]
               ) -> DesignCandidate:
    w1, id_, gain, l_ch, tol, floor = args
    target = SynthTarget(gain_db=gain, id=id_, w1=w1, l_ch=l_ch,
                         gain_tol_db=tol, match_floor_db=floor)
    return synthesize(target, _WORK["tech"], _WORK["lib"])


def worker_count(requested: int | None = None) -> int:
    if requested is None:
        raw = os.environ.get(WORKERS_ENV, "1")
        try:
            requested = int(raw)
        except ValueError:
            requested = 1
    if requested <= 0:
        requested = os.cpu_count() or 1
    return requested


def run_sweep(plan: SweepPlan, tech: TechnologyCard,
              lib: list[InductorSpec] | None = None,
              workers: int | None = None) -> SweepResult:
    """Synthesize every grid point; deterministic for any worker count."""
    plan.validate()
    if lib is None:
        lib = build_library(tech)
    jobs = [(w1, id_, g, plan.l_ch, plan.gain_tol_db, plan.match_floor_db)
            for (w1, id_, g) in plan.grid()]
    n = worker_count(workers)
    if n <= 1 or len(jobs) < 4:
        _init_worker(tech, lib)
        records = [_run_point(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=min(n, len(jobs)),
                                 initializer=_init_worker,
                                 initargs=(tech, lib)) as pool:
            records = list(pool.map(_run_point, jobs, chunksize=4))
    return SweepResult(plan=plan, records=tuple(records),
                       tech_hash=card_hash(tech))


def spec_filter(result: SweepResult, flt: SpecFilter) -> SweepResult:
    """Feasible records that meet every filter field."""
    keep = []
    for rec in result.records:
        if not rec.verdict.feasible or rec.metrics is None:
            continue
        m = rec.metrics
        if (m.gain_db >= flt.min_gain_db and m.nf_db <= flt.max_nf_db
                and m.iip3_dbm >= flt.min_iip3_dbm
                and m.s11_db <= flt.match_ceiling_db
                and m.s22_db <= flt.match_ceiling_db):
            keep.append(rec)
    return SweepResult(plan=result.plan, records=tuple(keep),
                       tech_hash=result.tech_hash,
                       engine_version=result.engine_version)


def binding_matrix(result: SweepResult) -> dict[tuple[str, str], int]:
    """Counts of binding limits at the boundary of each swept direction.

    A wxid sweep holds the gain fixed, so it carries the min-current row
    and the min/max width columns; a gainxw sweep holds the current fixed
    and carries the max-gain row.  Directions a plan does not sweep are
    absent from its matrix (merge matrices from both plans for the full
    table).
    """
    plan = result.plan
    cells: dict[tuple[str, str], int] = {}
    limits = (LS_MIN, LG_MAX, CX_MIN, C_MAX, NO_CONVERGE)

    def count(direction: str, selector) -> None:
        for limit in limits:
            cells[(limit, direction)] = sum(
                1 for rec in result.records
                if selector(rec) and limit in rec.verdict.binding)

    if plan.kind == "wxid":
        id_min = min(plan.id_list)
        w_min, w_max = min(plan.w1_list), max(plan.w1_list)
        count(MIN_ID, lambda r: r.target.id == id_min)
        count(MIN_W1, lambda r: r.target.w1 == w_min)
        count(MAX_W1, lambda r: r.target.w1 == w_max)
    else:
        g_max = max(plan.gain_list)
        count(MAX_GM, lambda r: r.target.gain_db == g_max)
    return cells


def merge_binding_matrices(matrices) -> dict[tuple[str, str], int]:
    merged: dict[tuple[str, str], int] = {}
    for m in matrices:
        for key, value in m.items():
            merged[key] = merged.get(key, 0) + value
    return merged


# --- export / import -------------------------------------------------------

def _row_of(rec: DesignCandidate) -> dict[str, object]:
    t, p, m = rec.target, rec.passives, rec.metrics
    row: dict[str, object] = {
        "l_ch": t.l_ch, "w1": t.w1, "id": t.id, "gain_target": t.gain_db,
        "ls": l_of(p.ls), "lg": l_of(p.lg), "cx": p.cx,
        "ld": p.ld.L, "qd": p.ld.q_at_f0, "c1": p.c1, "cp": p.cp,
        "status": rec.verdict.status,
        "binding": "+".join(sorted(rec.verdict.binding)),
    }
    for name in METRIC_COLUMNS:
        row[name] = getattr(m, name) if m is not None else None
    return row


def result_rows(result: SweepResult) -> list[dict[str, object]]:
    return [_row_of(rec) for rec in result.records]


def _format_cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def export(result: SweepResult, path: str, format: str = "csv") -> None:
    """One row per record, stable column order, full float precision."""
    rows = result_rows(result)
    if format == "csv":
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for row in rows:
                writer.writerow([_format_cell(row[c]) for c in CSV_COLUMNS])
    elif format == "json":
        payload = {
            "provenance": {
                "tech_hash": result.tech_hash,
                "engine_version": result.engine_version,
                "plan": asdict(result.plan),
            },
            "records": rows,
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=1)
            fh.write("\n")
    else:
        raise ValueError(f"unknown export format {format!r}")


def _parse_cell(name: str, text: str) -> object:
    if name in ("status", "binding"):
        return text
    if text == "":
        return None
    return float(text)


def import_rows(path: str) -> list[dict[str, object]]:
    """Re-read an export; numeric fields round-trip bit-identically."""
    if str(path).endswith(".json"):
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
        return payload["records"]
    with open(path, "r", newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CSV_COLUMNS:
            raise ValueError("unexpected CSV header")
        return [{name: _parse_cell(name, row[name]) for name in CSV_COLUMNS}
                for row in reader]


def import_provenance(path: str) -> dict | None:
    if str(path).endswith(".json"):
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh).get("provenance")
    return None
