"""Passive-set synthesis for a (gain, bias current, width) target.

The pipeline follows the simplified-model chain for the seed
(G -> Gm -> L_S -> C_T -> C_X, L_g, then the output divider), refines the
three input passives against the full model with a damped Newton loop,
classifies the required values against the technology limits, snaps the
inductors to the max-Q library envelope, and re-verifies the specs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import optimize

from .errors import EmptyLibrary, LimitViolation, NoConvergeError
from .inductors import (InductorSpec, default_l_bins, max_q_envelope,
                        nearest_inductor, select_drain_inductor,
                        series_loss_interpolator)
from .mosmodel import DevicePoint, device_point
from .netsolver import (Metrics, NetMode, PassiveSet, evaluate, gain,
                        input_impedance, l_of, output_admittance, output_stage)
from .techcard import TechnologyCard

LS_MIN, LG_MAX, CX_MIN, C_MAX, NO_CONVERGE = \
    "LsMin", "LgMax", "CxMin", "CMax", "NoConverge"

REFINE_BUDGET = 200
SNAP_TOLERANCE = 0.15        # relative inductance mismatch allowed at snap
SNAP_BIN = 0.25e-9           # envelope bin width used for snapping (H)
CX_NOISE_BAND = 0.02e-12     # negative-cx clamp window (F)
DEFAULT_RD_TARGET = 2.0e3    # drain-tank parallel resistance target (ohm)
DRAIN_Q_MARGIN = 1.15        # headroom over the tapped-C matchability floor


@dataclass(frozen=True)
class SynthTarget:
    gain_db: float
    id: float
    w1: float
    l_ch: float
    gain_tol_db: float = 0.5
    match_floor_db: float = -15.0

    def validate(self) -> None:
        if self.gain_tol_db <= 0:
            raise ValueError("gain_tol_db must be > 0")
        if self.match_floor_db >= -10.0:
            raise ValueError("match_floor_db must be < -10 dB")


@dataclass(frozen=True)
class FeasibilityVerdict:
    binding: frozenset[str]
    margin: dict[str, float] = field(compare=False)

    @property
    def status(self) -> str:
        return "Infeasible" if self.binding else "Feasible"

    @property
    def feasible(self) -> bool:
        return not self.binding


@dataclass(frozen=True)
class DesignCandidate:
    target: SynthTarget
    device: DevicePoint
    passives: PassiveSet
    metrics: Metrics | None
    verdict: FeasibilityVerdict


def hypothetical_cx(id_value: float, w: float,
                    k_gm: float = 1.0, k_cgs: float = 1.0,
                    ls_over_rs: float = 1.0) -> float:
    """C_X(W1) under proportional gm/cap laws; unit constants give
    sqrt(id*w) - w with peak at w = id/4 and zero at w = id."""
    return k_gm * math.sqrt(id_value * w) * ls_over_rs - k_cgs * w


# --- seed ------------------------------------------------------------------

def solve_divider(ld: InductorSpec, tech: TechnologyCard,
                  mode: NetMode = "ideal",
                  device: DevicePoint | None = None) -> tuple[float, float]:
    """Output capacitive divider (c1, cp).

    Seeded with the transformer rule (1 + cp/c1)^2 = R_D/R_L together
    with tank resonance, then polished so the admittance looking back
    into the tap equals 1/R_L exactly at f0.
    """
    w0 = tech.omega0
    c_tank = 1.0 / (w0 ** 2 * ld.L)
    c_out = 0.0
    if mode == "full" and device is not None:
        c_out = tech.cgd_frac * tech.k_cgs * (device.w1 / 2.0) * device.l_ch
    c_ser = c_tank - c_out
    if c_ser <= 0:
        raise NoConvergeError("cascode output capacitance exceeds the tank cap")
    n = math.sqrt(max(ld.r_parallel / tech.rl, 1.0 + 1e-9))
    c1 = c_ser * n / (n - 1.0) if n > 1.0 + 1e-9 else 100.0 * c_ser
    cp = max((n - 1.0) * c1, 1e-18)

    def residual(x):
        trial = PassiveSet(ls=0.0, lg=0.0, cx=0.0, ld=ld,
                           c1=float(x[0]), cp=float(x[1]))
        y = output_admittance(trial, tech.f0, mode, tech, device)
        return [y.real - 1.0 / tech.rl, y.imag]

    sol, _, ok, _ = optimize.fsolve(residual, [c1, cp], full_output=True)
    if ok == 1 and sol[0] > 0 and sol[1] >= 0:
        return float(sol[0]), float(sol[1])
    return c1, cp  # fall back to the closed-form rule


def seed_passives(target: SynthTarget, tech: TechnologyCard,
                  ld: InductorSpec,
                  device: DevicePoint | None = None) -> PassiveSet:
    """Closed-form seed from the simplified-model chain.

    The returned cx may be negative (the required value is reported and
    classified, not clamped here).  Ideal-mode evaluation of the seed
    meets Re{Zin} = Rs, input resonance and the gain target exactly.
    """
    target.validate()
    if device is None:
        device = device_point(target.w1, target.l_ch, target.id, tech)
    w0 = tech.omega0
    g_lin = 10.0 ** (target.gain_db / 10.0)
    go = output_stage(device, _tank_only(ld), tech.f0, "ideal", tech).g_o_prime
    if go <= 0:
        raise ValueError("output conductance must be > 0")
    gm_big = math.sqrt(g_lin * go / tech.rs)
    ls = 1.0 / (2.0 * w0 * gm_big)
    ct = device.gm * ls / tech.rs
    cx = ct - device.cgs
    lg = 1.0 / (w0 ** 2 * ct) - ls
    if lg <= 0:
        raise NoConvergeError("required gate inductance is non-positive")
    c1, cp = solve_divider(ld, tech, "ideal", device)
    return PassiveSet(ls=ls, lg=lg, cx=cx, ld=ld, c1=c1, cp=cp)


def _tank_only(ld: InductorSpec) -> PassiveSet:
    return PassiveSet(ls=0.0, lg=0.0, cx=0.0, ld=ld, c1=0.0, cp=0.0)


# --- refinement ------------------------------------------------------------

def _lossy(l_value: float, loss_of, w0: float) -> InductorSpec | float:
    """Continuous inductance dressed with the envelope loss estimate."""
    if loss_of is None or l_value <= 0:
        return l_value
    r = loss_of(l_value)
    if r <= 0:
        return l_value
    q = w0 * l_value / r
    return InductorSpec(geometry=None, L=l_value, q_at_f0=q,
                        r_series=r, r_parallel=w0 * l_value * q)


def _with_values(base: PassiveSet, ls: float, cx: float, lg: float,
                 loss_of, w0: float) -> PassiveSet:
    return replace(base,
                   ls=_lossy(ls, loss_of, w0),
                   lg=_lossy(lg, loss_of, w0),
                   cx=cx)


def loss_adjusted_seed(seed: PassiveSet, device: DevicePoint,
                       tech: TechnologyCard, loss_of) -> PassiveSet:
    """Fold the envelope loss estimate into the simplified chain.

    The series loss of the gate and source inductors eats into the 50 ohm
    real part, so the degeneration must shrink (and the gate inductor
    grow) to preserve match and gain.  A few fixed-point passes land close
    to the full-model answer; also used as the diagnostic estimate when
    the numeric refinement cannot converge at all.
    """
    w0 = tech.omega0
    ls_seed = l_of(seed.ls)
    ct_seed = seed.cx + device.cgs
    ls0, lg0 = ls_seed, l_of(seed.lg)
    for _ in range(8):
        re_dev = max(tech.rs - loss_of(lg0) - loss_of(ls0), 2.0)
        ls0 = ls_seed * re_dev / tech.rs
        lg0 = max(1.0 / (w0 ** 2 * ct_seed) - ls0, 1e-10)
    return _with_values(seed, ls0, ct_seed - device.cgs, lg0, loss_of, w0)


def refine_passives(seed: PassiveSet, target: SynthTarget,
                    tech: TechnologyCard, mode: NetMode = "full",
                    device: DevicePoint | None = None,
                    loss_of=None) -> PassiveSet:
    """Drive (Re{Zin} - Rs, Im{Zin}, gain - target) to zero at f0.

    Damped quasi-Newton (Powell hybrid) root find, 200-iteration budget;
    convergence thresholds are 1e-3 of the spec tolerances.  Band-edge
    matching is verified afterwards.  Raises NoConvergeError when the
    budget runs out or the band check fails.
    """
    target.validate()
    if device is None:
        device = device_point(target.w1, target.l_ch, target.id, tech)
    w0 = tech.omega0
    if mode == "full":
        # the ideal-mode divider detunes once the cascode output
        # capacitance loads the tank; re-centre it for this mode
        c1, cp = solve_divider(seed.ld, tech, mode, device)
        seed = replace(seed, c1=c1, cp=cp)
    # 1e-3 of the impedance deviation a match_floor reflection allows
    gamma_allow = 10.0 ** (target.match_floor_db / 20.0)
    tol_z = 1e-3 * 2.0 * tech.rs * gamma_allow
    tol_g = 1e-3 * target.gain_tol_db

    def residual_of(ls: float, lg: float, cx: float) -> np.ndarray:
        trial = _with_values(seed, ls, cx, lg, loss_of, w0)
        zin = input_impedance(device, trial, tech.f0, mode)
        g = gain(device, trial, tech.f0, mode, tech)
        return np.array([zin.real - tech.rs, zin.imag, g - target.gain_db])

    def converged(r: np.ndarray) -> bool:
        return abs(r[0]) < tol_z and abs(r[1]) < tol_z and abs(r[2]) < tol_g

    # a clean model (no losses, no parasitics) is already converged at
    # the seed; return it untouched
    r0 = residual_of(l_of(seed.ls), l_of(seed.lg), seed.cx)
    if converged(r0):
        _verify_band(device, seed, target, tech, mode)
        return seed

    # analytic warm start so the root finder starts near the answer
    ls0, lg0, cx0 = l_of(seed.ls), l_of(seed.lg), seed.cx
    if loss_of is not None:
        warm = loss_adjusted_seed(seed, device, tech, loss_of)
        ls0, lg0, cx0 = l_of(warm.ls), l_of(warm.lg), warm.cx

    # inductances move in log space to stay positive; probes are clamped
    # to a sane physical window so loss interpolation stays well posed
    _LOG_LO, _LOG_HI = math.log(1e-12), math.log(1e-6)

    def _clamped(q: np.ndarray) -> tuple[float, float]:
        ls = math.exp(min(max(q[0], _LOG_LO), _LOG_HI))
        lg = math.exp(min(max(q[1], _LOG_LO), _LOG_HI))
        return ls, lg

    def wrapped(q: np.ndarray) -> np.ndarray:
        ls, lg = _clamped(q)
        return residual_of(ls, lg, q[2])

    q0 = np.array([math.log(ls0), math.log(lg0), cx0])
    sol = optimize.root(wrapped, q0, method="hybr",
                        options={"maxfev": REFINE_BUDGET * 4, "xtol": 1e-12})
    r = wrapped(sol.x)
    if not converged(r):
        raise NoConvergeError(
            f"refinement stalled (residuals {r[0]:.2e} ohm, {r[1]:.2e} ohm, "
            f"{r[2]:.2e} dB)")
    ls_out, lg_out = _clamped(sol.x)
    out = _with_values(seed, ls_out, float(sol.x[2]), lg_out, loss_of, w0)
    _verify_band(device, out, target, tech, mode)
    return out


def _verify_band(device: DevicePoint, passives: PassiveSet,
                 target: SynthTarget, tech: TechnologyCard,
                 mode: NetMode) -> None:
    for f in (tech.band_lo, tech.f0, tech.band_hi):
        m = evaluate(device, passives, f, mode, tech)
        if m.s11_db > target.match_floor_db or m.s22_db > target.match_floor_db:
            raise NoConvergeError(
                f"matching floor violated at {f/1e9:.3f} GHz")


# --- classification --------------------------------------------------------

def classify(passives: PassiveSet, tech: TechnologyCard) -> FeasibilityVerdict:
    """Pure limit check of a passive set against the technology card."""
    lim = tech.limits
    ls, lg, cx = l_of(passives.ls), l_of(passives.lg), passives.cx
    cap_top = max(cx, passives.c1, passives.cp)
    binding = set()
    if ls < lim.ls_min:
        binding.add(LS_MIN)
    if lg > lim.lg_max:
        binding.add(LG_MAX)
    if cx < lim.cx_min:
        binding.add(CX_MIN)
    if cap_top > lim.c_max:
        binding.add(C_MAX)
    margin = {
        LS_MIN: ls - lim.ls_min,
        LG_MAX: lim.lg_max - lg,
        CX_MIN: cx - lim.cx_min,
        C_MAX: lim.c_max - cap_top,
    }
    return FeasibilityVerdict(binding=frozenset(binding), margin=margin)


def _clamp_cx(passives: PassiveSet, tech: TechnologyCard) -> PassiveSet:
    """Numeric-noise clamp: cx in [-0.02 pF, 0) snaps to cx_min."""
    lo = tech.limits.cx_min
    if lo - CX_NOISE_BAND <= passives.cx < lo:
        return replace(passives, cx=lo)
    return passives


# --- full pipeline ---------------------------------------------------------

def _snap_inductor(requested: float, lib, envelope, tech) -> InductorSpec:
    member = nearest_inductor(lib, requested, tech.limits, envelope)
    if abs(member.L - requested) > SNAP_TOLERANCE * requested:
        raise NoConvergeError(
            f"no library member within {SNAP_TOLERANCE:.0%} of "
            f"{requested*1e9:.2f} nH")
    return member


def _polish_cx(device: DevicePoint, passives: PassiveSet,
               tech: TechnologyCard) -> PassiveSet:
    """Post-snap pass on the continuous cap: restore gate resonance."""
    def im_zin(cx: float) -> float:
        return input_impedance(device, replace(passives, cx=cx),
                               tech.f0, "full").imag

    cx = passives.cx
    for _ in range(50):
        r = im_zin(cx)
        if abs(r) < 1e-6 * tech.rs:
            break
        dc = 1e-6 * (abs(cx) + 1e-15)
        slope = (im_zin(cx + dc) - r) / dc
        if slope == 0:
            break
        cx -= r / slope
    return replace(passives, cx=cx)


def synthesize(target: SynthTarget, tech: TechnologyCard,
               lib: list[InductorSpec],
               rd_target: float = DEFAULT_RD_TARGET) -> DesignCandidate:
    """seed -> refine -> classify -> snap -> polish -> verify -> evaluate.

    Infeasible targets are returned as candidates with the required
    (continuous) passives, empty metrics and the binding limits; library
    snap failures and refinement stalls carry the NoConverge flag.
    """
    if not lib:
        raise EmptyLibrary("synthesis needs a non-empty inductor library")
    device = device_point(target.w1, target.l_ch, target.id, tech)
    # finer bins than the presentation envelope keep the snap error small
    # relative to the small source inductances
    envelope = max_q_envelope(lib, bins=default_l_bins(lib, SNAP_BIN))
    loss_of = series_loss_interpolator(envelope)
    q_floor = DRAIN_Q_MARGIN * math.sqrt(max(rd_target / tech.rl - 1.0, 0.0))
    ld = select_drain_inductor(lib, rd_target, q_min=q_floor)

    def infeasible(passives: PassiveSet, extra: set[str]) -> DesignCandidate:
        verdict = classify(passives, tech)
        verdict = FeasibilityVerdict(binding=verdict.binding | frozenset(extra),
                                     margin=verdict.margin)
        return DesignCandidate(target=target, device=device,
                               passives=passives, metrics=None,
                               verdict=verdict)

    try:
        seed = seed_passives(target, tech, ld, device)
    except NoConvergeError:
        empty = _tank_only(ld)
        return infeasible(empty, {NO_CONVERGE})

    try:
        refined = refine_passives(seed, target, tech, "full", device, loss_of)
    except NoConvergeError:
        # classify the loss-adjusted requirement so the verdict still
        # names the technology limit behind the stall where one exists
        diagnostic = loss_adjusted_seed(seed, device, tech, loss_of)
        return infeasible(diagnostic, {NO_CONVERGE})

    refined = _clamp_cx(refined, tech)
    verdict = classify(refined, tech)
    if not verdict.feasible:
        return DesignCandidate(target=target, device=device,
                               passives=refined, metrics=None,
                               verdict=verdict)

    try:
        ls_snap = _snap_inductor(l_of(refined.ls), lib, envelope, tech)
        lg_snap = _snap_inductor(l_of(refined.lg), lib, envelope, tech)
    except LimitViolation as exc:
        return infeasible(refined, {exc.limit})
    except NoConvergeError:
        return infeasible(refined, {NO_CONVERGE})

    snapped = replace(refined, ls=ls_snap, lg=lg_snap)
    snapped = _polish_cx(device, snapped, tech)
    snapped = _clamp_cx(snapped, tech)

    verdict = classify(snapped, tech)
    if not verdict.feasible:
        return DesignCandidate(target=target, device=device,
                               passives=snapped, metrics=None,
                               verdict=verdict)

    m0 = evaluate(device, snapped, tech.f0, "full", tech)
    ok = abs(m0.gain_db - target.gain_db) <= target.gain_tol_db
    for f in (tech.band_lo, tech.f0, tech.band_hi):
        mf = evaluate(device, snapped, f, "full", tech)
        ok = ok and mf.s11_db <= target.match_floor_db \
            and mf.s22_db <= target.match_floor_db
    if not ok:
        return infeasible(snapped, {NO_CONVERGE})

    return DesignCandidate(target=target, device=device, passives=snapped,
                           metrics=m0, verdict=verdict)
