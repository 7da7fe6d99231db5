"""Analytic all-region MOS model.

Two fidelity modes:

* ``simplified`` -- the square-root law gm = k_gm*sqrt(ID*W1).  This is
  the hypothetical-constant model behind the C_X(W1) curves and has no
  I/V curve, so no derivatives.
* ``all-region`` -- a single-piece interpolation of the drain current in
  the gate overdrive, continuous from weak to strong inversion, with a
  mild gm-compression term.  All transconductance derivatives are exact
  closed forms of the same curve, so g1 equals the gm field identically
  and g3 crosses zero exactly once in moderate inversion (the linearity
  sweet spot).

The normalized current is i(v) = u^2/(1 + LAM*u) with u = ln(1+e^(v/2))
and v the overdrive in units of n*U_T.  Without the compression term
(LAM = 0) the third derivative never changes sign; with it, gm saturates
in deep strong inversion the way real devices do.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .errors import ModeUnsupported
from .techcard import TechnologyCard

U_T = 0.02585          # thermal voltage at 300 K (V)
GM_COMPRESSION = 0.05  # LAM above; fixed model constant, like U_T
VT0 = 0.4              # nominal threshold (V); only derivatives matter

Mode = Literal["simplified", "all-region"]


@dataclass(frozen=True)
class DevicePoint:
    """M1/M2 sizing and bias with the derived small-signal quantities."""

    w1: float       # M1 width (m)
    l_ch: float     # channel length (m)
    id: float       # bias current (A)
    mode: Mode
    gm: float       # M1 transconductance (S)
    cgs: float      # gate-source capacitance (F)
    cgd: float      # gate-drain capacitance (F)
    cgb: float      # gate-bulk capacitance (F)
    ft: float       # transit frequency (Hz)
    gm2: float      # cascode (W2 = W1/2) transconductance at the same id (S)
    ic: float       # inversion coefficient


@dataclass(frozen=True)
class GmDerivatives:
    """d^k I_D / d V_G^k of the all-region current at the bias point."""

    g1: float   # S
    g2: float   # S/V
    g3: float   # S/V^2


# --- normalized current and its exact derivatives -------------------------

def _u_of_v(v: float) -> float:
    # softplus(v/2), overflow-safe
    half = v / 2.0
    if half > 40.0:
        return half
    return math.log1p(math.exp(half)) if half < 0 else half + math.log1p(math.exp(-half))


def _v_of_u(u: float) -> float:
    if u > 40.0:
        return 2.0 * u
    return 2.0 * math.log(math.expm1(u))


def _norm_current(u: float) -> float:
    return u * u / (1.0 + GM_COMPRESSION * u)


def _u_of_ic(ic: float) -> float:
    # invert ic = u^2/(1+LAM*u):  u^2 - LAM*ic*u - ic = 0
    lam = GM_COMPRESSION
    return 0.5 * (lam * ic + math.sqrt((lam * ic) ** 2 + 4.0 * ic))


def _norm_derivs(u: float) -> tuple[float, float, float]:
    """(di/dv, d2i/dv2, d3i/dv3) at u = softplus(v/2)."""
    lam = GM_COMPRESSION
    a = -math.expm1(-u)          # 1 - e^-u  (= 2*du/dv)
    e = math.exp(-u)
    den = 1.0 + lam * u
    p1 = u * (2.0 + lam * u) / den ** 2
    p2 = 2.0 / den ** 3
    p3 = -6.0 * lam / den ** 4
    d1 = p1 * a / 2.0
    d2 = (a / 4.0) * (p2 * a + p1 * e)
    d3 = (a / 8.0) * (e * (p2 * a + p1 * e) + a * (p3 * a + 2.0 * p2 * e - p1 * e))
    return d1, d2, d3


def specific_current(w1: float, l_ch: float, tech: TechnologyCard) -> float:
    return tech.i0_spec * w1 / l_ch


def inversion_coefficient(w1: float, l_ch: float, id: float,
                          tech: TechnologyCard) -> float:
    return id / specific_current(w1, l_ch, tech)


def drain_current(vg: float, w1: float, l_ch: float,
                  tech: TechnologyCard) -> float:
    """All-region I_D(V_G); the oracle curve for finite differences."""
    v = (vg - VT0) / (tech.n_slope * U_T)
    return specific_current(w1, l_ch, tech) * _norm_current(_u_of_v(v))


def gate_voltage_at(w1: float, l_ch: float, id: float,
                    tech: TechnologyCard) -> float:
    """V_G that makes the all-region curve carry the requested current."""
    ic = inversion_coefficient(w1, l_ch, id, tech)
    return VT0 + tech.n_slope * U_T * _v_of_u(_u_of_ic(ic))


def _gm_all_region(w1: float, l_ch: float, id: float,
                   tech: TechnologyCard) -> float:
    ispec = specific_current(w1, l_ch, tech)
    d1, _, _ = _norm_derivs(_u_of_ic(id / ispec))
    return ispec * d1 / (tech.n_slope * U_T)


def device_point(w1: float, l_ch: float, id: float, tech: TechnologyCard,
                 mode: Mode = "all-region") -> DevicePoint:
    """Evaluate the device at (w1, l_ch, id); W2 = W1/2 is a fixed rule."""
    if w1 <= 0 or l_ch <= 0 or id <= 0:
        raise ValueError("w1, l_ch and id must all be > 0")
    if mode not in ("simplified", "all-region"):
        raise ValueError(f"unknown device mode {mode!r}")
    if mode == "simplified":
        gm = tech.k_gm * math.sqrt(id * w1)
        gm2 = tech.k_gm * math.sqrt(id * w1 / 2.0)
    else:
        gm = _gm_all_region(w1, l_ch, id, tech)
        gm2 = _gm_all_region(w1 / 2.0, l_ch, id, tech)
    cgs = tech.k_cgs * w1 * l_ch
    cgd = tech.cgd_frac * cgs
    cgb = tech.cgb_frac * cgs
    ft = gm / (2.0 * math.pi * (cgs + cgd + cgb))
    return DevicePoint(w1=w1, l_ch=l_ch, id=id, mode=mode, gm=gm,
                       cgs=cgs, cgd=cgd, cgb=cgb, ft=ft, gm2=gm2,
                       ic=inversion_coefficient(w1, l_ch, id, tech))


def gm_derivatives(point: DevicePoint, tech: TechnologyCard) -> GmDerivatives:
    """Exact derivatives of the all-region current at the bias point."""
    if point.mode != "all-region":
        raise ModeUnsupported("gm derivatives need the all-region model")
    ispec = specific_current(point.w1, point.l_ch, tech)
    d1, d2, d3 = _norm_derivs(_u_of_ic(point.ic))
    nut = tech.n_slope * U_T
    return GmDerivatives(g1=ispec * d1 / nut,
                         g2=ispec * d2 / nut ** 2,
                         g3=ispec * d3 / nut ** 3)
