"""Small-signal evaluation of a complete LNA design.

Two fidelity modes:

* ``ideal`` -- the simplified closed forms: lossless L_S/L_g/C_X, M1
  reduced to C_gs plus its controlled source, a transparent cascode, and
  an output conductance that is just the drain tank loss.
* ``full`` -- adds the gate inductor and degeneration series losses, the
  C_gb shunt at the gate, C_gd Miller-coupled to the cascode node loaded
  by g_m2, and a configurable cascode output admittance (a conductance
  from the card plus the M2 gate-drain capacitance) on the tank.

The input stage in full mode is solved by nodal analysis of the (gate,
source, cascode) nodes; the ideal mode uses the textbook closed forms so
the seed identities hold to float precision.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Literal, Union

import numpy as np

from .errors import ModeUnsupported
from .inductors import InductorSpec
from .mosmodel import DevicePoint, gm_derivatives
from .techcard import TechnologyCard

NetMode = Literal["ideal", "full"]
Inductor = Union[float, InductorSpec]

S_FLOOR_DB = -100.0     # reflection clamp used in exports
IIP3_CEIL_DBM = 30.0    # clamp at the g3 zero crossing


@dataclass(frozen=True)
class PassiveSet:
    """The five synthesized passives around the two transistors."""

    ls: Inductor        # source degeneration
    lg: Inductor        # gate series inductor
    cx: float           # gate-source shunt capacitor (F)
    ld: InductorSpec    # drain tank inductor
    c1: float           # output divider series capacitor (F)
    cp: float           # output divider shunt capacitor (F)


@dataclass(frozen=True)
class Metrics:
    gain_db: float
    s11_db: float
    s22_db: float
    nf_db: float
    iip3_dbm: float
    gm_eff: float


@dataclass(frozen=True)
class CascodeOutput:
    y_od: complex       # cascode output admittance (S)
    g_o_prime: float    # total output conductance Re{Y_o'} (S)


def l_of(x: Inductor) -> float:
    return x.L if isinstance(x, InductorSpec) else float(x)


def r_of(x: Inductor) -> float:
    # total loss (metal + substrate) referred to a series resistance
    return x.r_effective if isinstance(x, InductorSpec) else 0.0


def _z_series(x: Inductor, w: float, mode: NetMode) -> complex:
    r = r_of(x) if mode == "full" else 0.0
    return complex(r, w * l_of(x))


def total_gate_cap(device: DevicePoint, passives: PassiveSet) -> float:
    return passives.cx + device.cgs


def _cascode_caps(device: DevicePoint, tech: TechnologyCard) -> tuple[float, float]:
    """(cgs2, cgd2) of the W2 = W1/2 cascode device."""
    cgs2 = tech.k_cgs * (device.w1 / 2.0) * device.l_ch
    return cgs2, tech.cgd_frac * cgs2


def _solve_input(device: DevicePoint, passives: PassiveSet, f: float,
                 mode: NetMode, drive: complex | None):
    """Nodal solve of the gate/source/cascode nodes.

    drive = None injects 1 A at the gate (for Z looking into the gate
    network); otherwise drive is the series source impedance R_s + Z_lg
    and a 1 V EMF is applied through it.  Returns (Vg, Vs, Vx).
    """
    w = 2.0 * math.pi * f
    ct = total_gate_cap(device, passives)
    gm = device.gm
    cgd = device.cgd if mode == "full" else 0.0
    cgb = device.cgb if mode == "full" else 0.0
    z_ls = _z_series(passives.ls, w, mode)
    y_ct = 1j * w * ct

    # source node collapses to ground when the degeneration path is a short
    s_free = z_ls != 0
    n = 3 if s_free else 2
    idx = {"g": 0, "s": 1 if s_free else None, "x": n - 1}
    y = np.zeros((n, n), dtype=complex)
    rhs = np.zeros(n, dtype=complex)

    g = idx["g"]
    x = idx["x"]
    y[g, g] += y_ct + 1j * w * cgb + 1j * w * cgd
    y[g, x] += -1j * w * cgd
    y[x, g] += -1j * w * cgd + gm
    y[x, x] += 1j * w * cgd + device.gm2
    if s_free:
        s = idx["s"]
        y[g, s] += -y_ct
        y[s, g] += -y_ct - gm
        y[s, s] += y_ct + gm + 1.0 / z_ls
        y[x, s] += -gm

    if drive is None:
        rhs[g] += 1.0
    else:
        y[g, g] += 1.0 / drive
        rhs[g] += 1.0 / drive

    v = np.linalg.solve(y, rhs)
    vg = complex(v[g])
    vs = complex(v[idx["s"]]) if s_free else 0j
    vx = complex(v[x])
    return vg, vs, vx


def input_impedance(device: DevicePoint, passives: PassiveSet, f: float,
                    mode: NetMode = "ideal") -> complex:
    """Impedance looking into the gate inductor."""
    if f <= 0:
        raise ValueError("f must be > 0")
    w = 2.0 * math.pi * f
    if mode == "ideal":
        ct = total_gate_cap(device, passives)
        lt = l_of(passives.lg) + l_of(passives.ls)
        return complex(device.gm * l_of(passives.ls) / ct,
                       w * lt - 1.0 / (w * ct))
    vg, _, _ = _solve_input(device, passives, f, mode, drive=None)
    return _z_series(passives.lg, w, mode) + vg


def effective_gm(device: DevicePoint, passives: PassiveSet, f: float,
                 mode: NetMode, tech: TechnologyCard) -> float:
    """|I_o / V_s| of the input stage driven from the R_s source."""
    w = 2.0 * math.pi * f
    if mode == "ideal":
        ct = total_gate_cap(device, passives)
        zin = input_impedance(device, passives, f, "ideal")
        return device.gm / (abs(tech.rs + zin) * w * ct)
    drive = tech.rs + _z_series(passives.lg, w, mode)
    vg, vs, vx = _solve_input(device, passives, f, mode, drive=drive)
    return abs(device.gm2 * vx)


def output_stage(device: DevicePoint, passives: PassiveSet, f: float,
                 mode: NetMode, tech: TechnologyCard) -> CascodeOutput:
    """Cascode output admittance and total output conductance Re{Y_o'}."""
    if mode == "ideal":
        y_od = 0j
    else:
        _, cgd2 = _cascode_caps(device, tech)
        y_od = complex(tech.g_out, 2.0 * math.pi * f * cgd2)
    return CascodeOutput(y_od=y_od,
                         g_o_prime=y_od.real + 1.0 / passives.ld.r_parallel)


def gain(device: DevicePoint, passives: PassiveSet, f: float,
         mode: NetMode, tech: TechnologyCard) -> float:
    """Available power gain G = Gm^2 * Rs / Go' in dB."""
    gm_eff = effective_gm(device, passives, f, mode, tech)
    go = output_stage(device, passives, f, mode, tech).g_o_prime
    return 10.0 * math.log10(gm_eff ** 2 * tech.rs / go)


def _reflection_db(gamma: complex) -> float:
    mag = abs(gamma)
    if mag <= 0.0:
        return S_FLOOR_DB
    return max(S_FLOOR_DB, 20.0 * math.log10(mag))


def output_admittance(passives: PassiveSet, f: float, mode: NetMode,
                      tech: TechnologyCard,
                      device: DevicePoint | None = None) -> complex:
    """Admittance looking back into the LNA output (divider tap)."""
    w = 2.0 * math.pi * f
    ld = passives.ld
    y_tank = 1.0 / ld.r_parallel + 1.0 / (1j * w * ld.L)
    if mode == "full" and device is not None:
        _, cgd2 = _cascode_caps(device, tech)
        y_tank += complex(tech.g_out, w * cgd2)
    if passives.c1 <= 0:
        return 0j
    z_branch = 1.0 / y_tank + 1.0 / (1j * w * passives.c1)
    return 1j * w * passives.cp + 1.0 / z_branch


def s_parameters(device: DevicePoint, passives: PassiveSet, f: float,
                 mode: NetMode, tech: TechnologyCard) -> tuple[float, float]:
    """(S11, S22) in dB against (rs, rl), clamped at the export floor."""
    zin = input_impedance(device, passives, f, mode)
    s11 = _reflection_db((zin - tech.rs) / (zin + tech.rs))
    y_out = output_admittance(passives, f, mode, tech, device)
    yl = 1.0 / tech.rl
    s22 = _reflection_db((yl - y_out) / (yl + y_out))
    return s11, s22


def noise_figure(device: DevicePoint, passives: PassiveSet, f: float,
                 mode: NetMode, tech: TechnologyCard) -> float:
    """Matched-LNA noise decomposition: passive series loss referred to
    the source plus the classical channel-noise term in (w/wT)^2."""
    if mode == "full":
        r_loss = r_of(passives.lg) + r_of(passives.ls)
    else:
        r_loss = 0.0
    w = 2.0 * math.pi * f
    wt = 2.0 * math.pi * device.ft
    channel = (tech.gamma_noise / tech.alpha_noise) * device.gm * tech.rs \
        * (w / wt) ** 2
    factor = 1.0 + r_loss / tech.rs + channel
    return 10.0 * math.log10(factor)


def iip3(device: DevicePoint, passives: PassiveSet,
         tech: TechnologyCard) -> float:
    """Input-referred third-order intercept (dBm) of the degenerated stage.

    The degeneration feedback softens the effective third-order term by
    (1 + g1*w0*ls)^3; the result is clamped at +30 dBm where g3 crosses
    zero (the moderate-inversion sweet spot).
    """
    d = gm_derivatives(device, tech)
    feedback = (1.0 + d.g1 * tech.omega0 * l_of(passives.ls)) ** 3
    g3_eff = d.g3 / feedback
    if g3_eff == 0.0:
        return IIP3_CEIL_DBM
    a2 = (4.0 / 3.0) * abs(d.g1 / g3_eff)
    dbm = 10.0 * math.log10(a2 / (8.0 * tech.rs) / 1e-3)
    return min(dbm, IIP3_CEIL_DBM)


def evaluate(device: DevicePoint, passives: PassiveSet, f: float,
             mode: NetMode, tech: TechnologyCard) -> Metrics:
    """All design metrics at one frequency."""
    s11, s22 = s_parameters(device, passives, f, mode, tech)
    return Metrics(
        gain_db=gain(device, passives, f, mode, tech),
        s11_db=s11,
        s22_db=s22,
        nf_db=noise_figure(device, passives, f, mode, tech),
        iip3_dbm=iip3(device, passives, tech),
        gm_eff=effective_gm(device, passives, f, mode, tech),
    )
