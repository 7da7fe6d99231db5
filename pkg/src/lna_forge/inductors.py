"""Octagonal spiral inductor models and the realizable-library machinery.

Inductance uses the current-sheet closed form with octagon coefficients.
Loss is a two-parameter model: metal sheet resistance with a skin-depth
width correction, plus a scalar substrate-loss term that only matters at
high frequency.  That is enough to reproduce the qualitative Q-vs-L
landscape the selection envelopes are built from.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyLibrary, LimitViolation, UnrealizableGeometry
from .techcard import PassiveLimits, TechnologyCard

MU0 = 4.0e-7 * math.pi
# current-sheet coefficients for an octagonal spiral
_C1, _C2, _C3, _C4 = 1.07, 2.29, 0.0, 0.19
# octagon perimeter per unit across-flats diameter
_OCT_PERIM = 8.0 * math.tan(math.pi / 8.0)
# aluminum-like resistivity used only for the skin-depth correction (ohm*m)
_RHO_METAL = 2.65e-8
# reference diameter for the substrate-loss area scaling (m)
_OD_REF = 100e-6

DEFAULT_L_BIN = 0.5e-9      # envelope bin width on inductance (H)
DEFAULT_RP_BIN = 250.0      # envelope bin width on parallel resistance (ohm)


@dataclass(frozen=True)
class InductorGeometry:
    """Spiral structural parameters; nt advances in quarter turns."""

    nt: float   # number of turns
    od: float   # outer diameter (m)
    w: float    # trace width (m)
    s: float    # turn spacing (m)

    def validate(self) -> None:
        if self.nt < 0.25:
            raise UnrealizableGeometry(f"nt = {self.nt} < 0.25")
        if self.w <= 0:
            raise UnrealizableGeometry(f"w = {self.w} <= 0")
        if self.s <= 0:
            raise UnrealizableGeometry(f"s = {self.s} <= 0")
        if self.od <= 2.0 * self.nt * (self.w + self.s):
            raise UnrealizableGeometry(
                f"od = {self.od} leaves no inner diameter for nt = {self.nt}")

    @property
    def inner_diameter(self) -> float:
        return self.od - 2.0 * self.nt * (self.w + self.s)

    @property
    def avg_diameter(self) -> float:
        return 0.5 * (self.od + self.inner_diameter)

    @property
    def trace_length(self) -> float:
        return _OCT_PERIM * self.avg_diameter * self.nt


@dataclass(frozen=True)
class InductorSpec:
    """A realizable spiral with its electrical summary at f0."""

    geometry: InductorGeometry | None
    L: float            # inductance (H)
    q_at_f0: float      # quality factor at f0
    r_series: float     # metal series resistance (ohm)
    r_parallel: float   # equivalent parallel resistance w0*L*Q (ohm)

    @property
    def r_effective(self) -> float:
        """Total loss referred to a series resistance at f0.

        Equals r_series when substrate loss is disabled; otherwise
        slightly larger, since Q folds both mechanisms in.  Computed as
        (w0 L)^2 / r_parallel without needing f0 explicitly.
        """
        return self.r_parallel / self.q_at_f0 ** 2

    @staticmethod
    def synthetic(L: float, q: float, f0: float) -> "InductorSpec":
        """Ideal-geometry spec from (L, Q) alone; used for fixed picks."""
        w0 = 2.0 * math.pi * f0
        return InductorSpec(geometry=None, L=L, q_at_f0=q,
                            r_series=w0 * L / q, r_parallel=w0 * L * q)


def inductance_of(geom: InductorGeometry) -> float:
    """Current-sheet inductance of an octagonal spiral."""
    geom.validate()
    davg = geom.avg_diameter
    rho = (geom.od - geom.inner_diameter) / (geom.od + geom.inner_diameter)
    fill = math.log(_C2 / rho) + _C3 * rho + _C4 * rho * rho
    return _C1 * MU0 * geom.nt ** 2 * (davg / 2.0) * fill


def series_resistance(geom: InductorGeometry, f: float, tech: TechnologyCard) -> float:
    """Trace resistance with the skin-depth width correction."""
    geom.validate()
    if f <= 0:
        raise ValueError("f must be > 0")
    delta = math.sqrt(_RHO_METAL / (math.pi * f * MU0))
    skin = max(1.0, geom.w / (2.0 * delta))
    return tech.sheet_res * (geom.trace_length / geom.w) * skin


def q_of(geom: InductorGeometry, f: float, tech: TechnologyCard) -> float:
    """Quality factor at f; substrate loss folds in as a Q^-1 term.

    The substrate term scales with the coil footprint (od/od_ref)^2 so
    that compact and spread-out realizations of the same inductance span
    a genuine range of Q, which is what the selection envelopes exploit.
    """
    L = inductance_of(geom)
    r = series_resistance(geom, f, tech)
    q_series = 2.0 * math.pi * f * L / r
    area = (geom.od / _OD_REF) ** 2
    return 1.0 / (1.0 / q_series + tech.sub_loss_k * (f / tech.f0) * area)


def spec_of(geom: InductorGeometry, tech: TechnologyCard) -> InductorSpec:
    L = inductance_of(geom)
    q = q_of(geom, tech.f0, tech)
    return InductorSpec(
        geometry=geom,
        L=L,
        q_at_f0=q,
        r_series=series_resistance(geom, tech.f0, tech),
        r_parallel=tech.omega0 * L * q,
    )


def _quarter_range(lo: float, hi: float) -> list[float]:
    n = int(round(lo * 4))
    out = []
    while n / 4.0 <= hi + 1e-12:
        out.append(n / 4.0)
        n += 1
    return out


def _steps(lo: float, hi: float, step: float) -> list[float]:
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [lo + i * step for i in range(count)]


def build_library(tech: TechnologyCard) -> list[InductorSpec]:
    """Every realizable spiral on the technology grid, sorted by (L, Q).

    Grid points whose outer diameter is too small for the requested turn
    count are skipped rather than fatal.
    """
    lim = tech.limits
    seen: set[tuple[float, float, float, float]] = set()
    lib: list[InductorSpec] = []
    for nt in _quarter_range(lim.nt_min, lim.nt_max):
        for od in _steps(lim.od_min, lim.od_max, lim.od_step):
            for w in _steps(lim.w_min, lim.w_max, lim.w_step):
                key = (nt, round(od, 12), round(w, 12), round(lim.s, 12))
                if key in seen:
                    continue
                seen.add(key)
                geom = InductorGeometry(nt=nt, od=od, w=w, s=lim.s)
                try:
                    geom.validate()
                except UnrealizableGeometry:
                    continue
                lib.append(spec_of(geom, tech))
    if not lib:
        raise EmptyLibrary("geometry grid produced no realizable spirals")
    lib.sort(key=lambda m: (m.L, m.q_at_f0))
    return lib


def default_l_bins(lib: list[InductorSpec], width: float = DEFAULT_L_BIN) -> np.ndarray:
    lo = math.floor(min(m.L for m in lib) / width) * width
    hi = math.ceil(max(m.L for m in lib) / width) * width
    n = int(round((hi - lo) / width))
    return lo + width * np.arange(n + 1)


def _envelope(lib, key, value, bins, best) -> list[InductorSpec]:
    if not lib:
        raise EmptyLibrary("envelope of an empty library")
    edges = np.asarray(bins, dtype=float)
    idx = np.digitize([key(m) for m in lib], edges)
    chosen: dict[int, InductorSpec] = {}
    for member, b in zip(lib, idx):
        cur = chosen.get(b)
        if cur is None or best(value(member), value(cur)):
            chosen[b] = member
    out = list(chosen.values())
    out.sort(key=lambda m: m.L)
    return out


def max_q_envelope(lib: list[InductorSpec], bins=None) -> list[InductorSpec]:
    """Highest-Q member per inductance bin, sorted by L."""
    if not lib:
        raise EmptyLibrary("envelope of an empty library")
    if bins is None:
        bins = default_l_bins(lib)
    return _envelope(lib, key=lambda m: m.L, value=lambda m: m.q_at_f0,
                     bins=bins, best=lambda a, b: a > b)


def min_q_envelope(lib: list[InductorSpec], bins=None) -> list[InductorSpec]:
    """Lowest-Q member per parallel-resistance bin, sorted by L."""
    if not lib:
        raise EmptyLibrary("envelope of an empty library")
    if bins is None:
        lo = min(m.r_parallel for m in lib)
        hi = max(m.r_parallel for m in lib)
        n = max(1, int(math.ceil((hi - lo) / DEFAULT_RP_BIN)))
        bins = lo + DEFAULT_RP_BIN * np.arange(n + 1)
    return _envelope(lib, key=lambda m: m.r_parallel, value=lambda m: m.q_at_f0,
                     bins=bins, best=lambda a, b: a < b)


def select_drain_inductor(lib: list[InductorSpec], r_parallel_target: float,
                          q_min: float = 0.0) -> InductorSpec:
    """Drain inductor pick: lowest-Q envelope member nearest the target
    parallel resistance; ties break on smaller L.

    q_min excludes members whose tank would be untransformable to the
    load: a tapped-C divider can only step the tank down to 50 ohm when
    R_p/(Q^2+1) stays below it, so callers pass the floor that their
    R_p target implies.
    """
    subset = [m for m in lib if m.q_at_f0 >= q_min]
    if not subset:
        raise EmptyLibrary(f"no library member with Q >= {q_min:.2f}")
    envelope = min_q_envelope(subset)
    return min(envelope,
               key=lambda m: (abs(m.r_parallel - r_parallel_target), m.L))


def nearest_inductor(lib: list[InductorSpec], l_target: float,
                     limits: PassiveLimits,
                     envelope: list[InductorSpec] | None = None) -> InductorSpec:
    """Max-Q envelope member closest in inductance to the request.

    Raises LimitViolation naming the bound when the request is outside
    [ls_min, lg_max]; ties break on smaller L.
    """
    if l_target < limits.ls_min:
        raise LimitViolation("LsMin", f"{l_target} < {limits.ls_min}")
    if l_target > limits.lg_max:
        raise LimitViolation("LgMax", f"{l_target} > {limits.lg_max}")
    if envelope is None:
        envelope = max_q_envelope(lib)
    return min(envelope, key=lambda m: (abs(m.L - l_target), m.L))


def series_loss_interpolator(envelope: list[InductorSpec]):
    """Continuous L -> effective series loss estimate along an envelope.

    Used while refining continuous inductances before they are snapped to
    real library members, so the refine loop sees the same loss level the
    snapped member will present.  Linear interpolation, clamped at the ends.
    """
    if not envelope:
        raise EmptyLibrary("loss interpolation over an empty envelope")
    ls = np.array([m.L for m in envelope])
    rs = np.array([m.r_effective for m in envelope])
    order = np.argsort(ls)
    ls, rs = ls[order], rs[order]

    def r_of(l_value: float) -> float:
        return float(np.interp(l_value, ls, rs))

    return r_of
