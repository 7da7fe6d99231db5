import dataclasses
import math

import numpy as np
import pytest

import lna_forge as lf
from lna_forge.errors import NoConvergeError
from lna_forge.inductors import InductorSpec, max_q_envelope, series_loss_interpolator
from lna_forge.mosmodel import DevicePoint, device_point
from lna_forge.netsolver import PassiveSet, evaluate, gain, input_impedance, l_of
from lna_forge.synth import (CX_MIN, LG_MAX, LS_MIN, NO_CONVERGE, SynthTarget,
                             classify, hypothetical_cx, refine_passives,
                             seed_passives, synthesize)

from conftest import lossless_card

REF_LD_ARGS = (9.5e-9, 13.0)


def ref_ld(card):
    return InductorSpec.synthetic(*REF_LD_ARGS, card.f0)


def band_ld(card):
    """A drain tank whose loaded Q is low enough for the band floor
    (the reference 9.5 nH / Q 13 pick only matches at f0)."""
    return InductorSpec.synthetic(14.7e-9, 8.6, card.f0)


def target_at(gain_db=10.5, id=0.4e-3, w1=32e-6, l_ch=120e-9):
    return SynthTarget(gain_db=gain_db, id=id, w1=w1, l_ch=l_ch)


def test_seed_closed_form_values(card):
    # inversion of the gain definition through the matched-gm relation
    t = target_at()
    seed = seed_passives(t, card, ref_ld(card))
    g_lin = 10 ** 1.05
    gm_big = math.sqrt(g_lin / (1901.135 * 50))
    assert gm_big == pytest.approx(10.87e-3, rel=1e-3)
    assert l_of(seed.ls) == pytest.approx(1 / (2 * card.omega0 * gm_big), rel=1e-4)
    assert l_of(seed.ls) == pytest.approx(2.99e-9, rel=1e-3)


def test_seed_chain_arithmetic(card):
    # gm = 10 mS with ls = 2.99 nH: ct = 0.598 pF, lg = 4.07 nH
    dev = DevicePoint(w1=10e-6, l_ch=120e-9, id=1e-3, mode="all-region",
                      gm=10e-3, cgs=0.1e-12, cgd=0.0, cgb=0.0, ft=50e9,
                      gm2=8e-3, ic=1.0)
    t = target_at(gain_db=10.269)   # makes Gm come out at 1/(2 w0 2.99nH)
    # pick the gain that lands ls exactly at 2.99 nH for this tank
    gm_big = 1.0 / (2 * card.omega0 * 2.99e-9)
    g_lin = gm_big ** 2 * 50 * 1901.135
    t = target_at(gain_db=10 * math.log10(g_lin))
    seed = seed_passives(t, card, ref_ld(card), dev)
    ct = l_of(seed.ls) * dev.gm / card.rs
    assert ct == pytest.approx(0.598e-12, rel=1e-3)
    assert seed.cx == pytest.approx(ct - dev.cgs, rel=1e-9)
    assert l_of(seed.lg) == pytest.approx(4.07e-9, rel=1e-3)


def test_seed_reports_negative_cx(card):
    dev = DevicePoint(w1=10e-6, l_ch=120e-9, id=1e-3, mode="all-region",
                      gm=10e-3, cgs=1.0e-12, cgd=0.0, cgb=0.0, ft=50e9,
                      gm2=8e-3, ic=1.0)
    seed = seed_passives(target_at(), card, ref_ld(card), dev)
    ct = l_of(seed.ls) * dev.gm / card.rs
    assert seed.cx < 0
    assert seed.cx == pytest.approx(ct - 1.0e-12, rel=1e-9)


def test_seed_identities_ideal(card):
    for (g, i, w) in [(10.5, 0.4e-3, 32e-6), (12.0, 0.6e-3, 64e-6),
                      (9.0, 0.3e-3, 24e-6)]:
        t = target_at(g, i, w)
        dev = device_point(w, t.l_ch, i, card)
        seed = seed_passives(t, card, ref_ld(card), dev)
        zin = input_impedance(dev, seed, card.f0, "ideal")
        assert abs(zin - card.rs) < 1e-9 * card.rs
        assert gain(dev, seed, card.f0, "ideal", card) == \
            pytest.approx(g, abs=1e-9)


def test_refine_clean_model_returns_seed(card):
    clean = lossless_card(card)
    t = target_at()
    dev = device_point(t.w1, t.l_ch, t.id, clean)
    seed = seed_passives(t, clean, band_ld(clean), dev)
    refined = refine_passives(seed, t, clean, "full", dev, loss_of=None)
    assert refined == seed


def test_refine_losses_shrink_degeneration(card, lib):
    t = target_at()
    dev = device_point(t.w1, t.l_ch, t.id, card)
    env = max_q_envelope(lib)
    loss = series_loss_interpolator(env)
    seed = seed_passives(t, card, band_ld(card), dev)
    refined = refine_passives(seed, t, card, "full", dev, loss)
    assert l_of(refined.ls) < l_of(seed.ls)
    m = evaluate(dev, refined, card.f0, "full", card)
    assert abs(m.gain_db - t.gain_db) <= 1e-3 * t.gain_tol_db


def test_refine_unreachable_gain(card, lib):
    env = max_q_envelope(lib)
    loss = series_loss_interpolator(env)
    t = target_at(gain_db=30.0, id=0.3e-3)
    dev = device_point(t.w1, t.l_ch, t.id, card)
    with pytest.raises(NoConvergeError):
        seed = seed_passives(t, card, band_ld(card), dev)
        refine_passives(seed, t, card, "full", dev, loss)


def make_set(card, ls=2e-9, lg=10e-9, cx=0.2e-12, c1=0.3e-12, cp=1.5e-12):
    return PassiveSet(ls=ls, lg=lg, cx=cx, ld=ref_ld(card), c1=c1, cp=cp)


def test_classify_ls_min(card):
    verdict = classify(make_set(card, ls=0.8e-9), card)
    assert verdict.binding == frozenset({LS_MIN})
    assert verdict.status == "Infeasible"
    assert verdict.margin[LS_MIN] == pytest.approx(-0.2e-9, rel=1e-9)


def test_classify_feasible(card):
    verdict = classify(make_set(card), card)
    assert verdict.binding == frozenset()
    assert verdict.status == "Feasible"
    assert all(m > 0 for m in verdict.margin.values())


def test_classify_multiple_bindings(card):
    verdict = classify(make_set(card, lg=19e-9, cx=-0.1e-12), card)
    assert verdict.binding == frozenset({LG_MAX, CX_MIN})


def test_classify_cap_ceiling(card):
    verdict = classify(make_set(card, cp=6e-12), card)
    assert verdict.binding == frozenset({"CMax"})


def test_classify_is_pure(card):
    sets = [make_set(card, ls=ls) for ls in (0.5e-9, 1.5e-9, 3e-9)]
    forward = [classify(s, card) for s in sets]
    backward = [classify(s, card) for s in reversed(sets)]
    assert forward == backward[::-1]


def test_synthesize_reference_point(card, lib):
    cand = synthesize(target_at(10.5, 0.5e-3, 48e-6), card, lib)
    assert cand.verdict.feasible
    assert 10.3 <= cand.metrics.gain_db <= 10.8
    # snapped inductors are real library members
    assert cand.passives.ls.geometry is not None
    assert cand.passives.lg.geometry is not None


def test_synthesize_low_power_infeasible(card, lib):
    flags = []
    for w1 in (16e-6, 32e-6, 56e-6, 80e-6, 104e-6):
        cand = synthesize(target_at(10.5, 0.2e-3, w1), card, lib)
        assert not cand.verdict.feasible
        flags.extend(cand.verdict.binding)
    named = [f for f in flags if f != NO_CONVERGE]
    assert LG_MAX in named
    counts = {f: named.count(f) for f in set(named)}
    assert counts[LG_MAX] == max(counts.values())


def test_synthesize_boundary_lgmax(card, lib):
    cand = synthesize(target_at(10.5, 0.3e-3, 16e-6), card, lib)
    assert not cand.verdict.feasible
    assert LG_MAX in cand.verdict.binding
    assert l_of(cand.passives.lg) > card.limits.lg_max


def test_synthesize_higher_gain_shrinks_the_space(card, lib):
    cand = synthesize(target_at(13.0, 0.4e-3, 16e-6), card, lib)
    assert not cand.verdict.feasible


def test_gain_trend_on_seeds(card):
    # raising the gain target: ls and cx strictly down, lg strictly up
    gains = [9.5, 10.5, 11.5, 12.5, 13.5]
    dev = device_point(48e-6, 120e-9, 0.5e-3, card)
    seeds = [seed_passives(target_at(g, 0.5e-3, 48e-6), card, ref_ld(card), dev)
             for g in gains]
    ls = [l_of(s.ls) for s in seeds]
    cx = [s.cx for s in seeds]
    lg = [l_of(s.lg) for s in seeds]
    assert all(a > b for a, b in zip(ls, ls[1:]))
    assert all(a > b for a, b in zip(cx, cx[1:]))
    assert all(a < b for a, b in zip(lg, lg[1:]))


def test_width_trend_on_seeds(card):
    # shrinking the device raises the required gate inductance
    widths = [104e-6, 80e-6, 56e-6, 32e-6, 16e-6]
    lg = []
    for w in widths:
        dev = device_point(w, 120e-9, 0.4e-3, card)
        seed = seed_passives(target_at(10.5, 0.4e-3, w), card, ref_ld(card), dev)
        lg.append(l_of(seed.lg))
    assert all(a < b for a, b in zip(lg, lg[1:]))


def test_unit_constant_cx_shape(unit_card):
    """The seed chain reduces to sqrt(id*w) - w with unit constants."""
    card = unit_card
    # tank with r_parallel = 2 makes the matched Gm exactly 1
    ld = InductorSpec.synthetic(1.0, 2.0 / (card.omega0 * 1.0), card.f0)
    gain_db = 10 * math.log10(2.0)
    id_value = 0.5
    w_grid = np.linspace(0.01, 1.0, 400)
    cx = []
    for w in w_grid:
        dev = device_point(w, 1.0, id_value, card, mode="simplified")
        t = SynthTarget(gain_db=gain_db, id=id_value, w1=w, l_ch=1.0)
        seed = seed_passives(t, card, ld, dev)
        cx.append(seed.cx)
        assert seed.cx == pytest.approx(hypothetical_cx(id_value, w), abs=1e-12)
    cx = np.array(cx)
    step = w_grid[1] - w_grid[0]
    peak = int(np.argmax(cx))
    assert abs(w_grid[peak] - id_value / 4) <= step
    assert cx[peak] == pytest.approx(id_value / 4, abs=step)
    zero = int(np.argmin(np.abs(cx)))
    assert abs(w_grid[zero] - id_value) <= step


def test_synthesize_deterministic(card, lib):
    a = synthesize(target_at(), card, lib)
    b = synthesize(target_at(), card, lib)
    assert a == b
