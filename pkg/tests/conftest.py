import dataclasses
import math

import pytest

import lna_forge as lf
from lna_forge.explorer import default_wxid_plan, run_sweep


@pytest.fixture(scope="session")
def card():
    return lf.default_card()


@pytest.fixture(scope="session")
def lib(card):
    return lf.build_library(card)


@pytest.fixture(scope="session")
def sweep120(card, lib):
    """Default width x current exploration at 120 nm, shared by tests."""
    return run_sweep(default_wxid_plan(120e-9), card, lib)


@pytest.fixture(scope="session")
def sweep240(card, lib):
    return run_sweep(default_wxid_plan(240e-9), card, lib)


@pytest.fixture()
def unit_card(card):
    """Unit-constant hypothetical card: k_gm = k_cgs = 1, Rs = RL = 1 ohm,
    f0 chosen so that omega0 = 1/2."""
    f0 = 1.0 / (4.0 * math.pi)
    return dataclasses.replace(
        card, f0=f0, band_lo=0.9 * f0, band_hi=1.1 * f0,
        rs=1.0, rl=1.0, k_gm=1.0, k_cgs=1.0)


def lossless_card(card):
    """Full-mode degenerates to ideal: no parasitics, no cascode output."""
    return dataclasses.replace(card, cgd_frac=0.0, cgb_frac=0.0, g_out=0.0)
