"""Technology card: process constants, operating frequency and passive limits.

The card is the single source of truth for everything downstream: it is
loaded once from a TOML-style file, validated, and then shared read-only.
All values are SI base units (Hz, ohm, V, S, F, H, A, m); no engineering
suffixes are parsed.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field, fields
from importlib import resources
from pathlib import Path

from .errors import InconsistentLimits, InvalidBand, InvalidField, ParseError

DEFAULT_CARD_NAME = "default130nm.toml"


@dataclass(frozen=True)
class PassiveLimits:
    """Realizable ranges of the passive elements plus the spiral grid bounds."""

    ls_min: float        # minimum realizable inductance (H)
    lg_max: float        # maximum realizable inductance (H)
    cx_min: float        # minimum capacitance (F)
    c_max: float         # maximum capacitance (F)
    # geometry grid for the spiral library; nt advances in quarter turns
    nt_min: float
    nt_max: float
    od_min: float        # outer diameter range and step (m)
    od_max: float
    od_step: float
    w_min: float         # trace width range and step (m)
    w_max: float
    w_step: float
    s: float             # turn spacing, fixed by the technology (m)

    def validate(self) -> None:
        if self.ls_min < 0:
            raise InvalidField("ls_min", "must be >= 0")
        if self.cx_min < 0:
            raise InvalidField("cx_min", "must be >= 0")
        if self.lg_max <= self.ls_min:
            raise InconsistentLimits(
                f"lg_max ({self.lg_max}) must exceed ls_min ({self.ls_min})")
        if self.c_max <= self.cx_min:
            raise InconsistentLimits(
                f"c_max ({self.c_max}) must exceed cx_min ({self.cx_min})")
        if self.nt_min < 0.25:
            raise InvalidField("nt_min", "must be >= 0.25")
        if self.nt_max < self.nt_min:
            raise InconsistentLimits(
                f"nt_max ({self.nt_max}) must be >= nt_min ({self.nt_min})")
        if self.od_max < self.od_min:
            raise InconsistentLimits(
                f"od_max ({self.od_max}) must be >= od_min ({self.od_min})")
        if self.w_max < self.w_min:
            raise InconsistentLimits(
                f"w_max ({self.w_max}) must be >= w_min ({self.w_min})")
        for name in ("od_min", "od_step", "w_min", "w_step", "s"):
            if getattr(self, name) <= 0:
                raise InvalidField(name, "must be > 0")


@dataclass(frozen=True)
class TechnologyCard:
    """All process constants, operating frequency and passive-element limits."""

    f0: float            # operating frequency (Hz)
    band_lo: float       # matching band edges (Hz)
    band_hi: float
    rs: float            # source resistance (ohm)
    rl: float            # external load (ohm)
    vdd: float           # supply (V)
    k_gm: float          # transconductance constant, S per sqrt(A*m)
    k_cgs: float         # gate capacitance density (F/m^2)
    n_slope: float       # subthreshold slope factor
    i0_spec: float       # specific current for the inversion coefficient (A per W/L)
    gamma_noise: float   # channel noise excess factor
    alpha_noise: float   # gm/gd0 noise ratio
    cgd_frac: float      # Cgd as a fraction of Cgs
    cgb_frac: float      # Cgb as a fraction of Cgs
    sheet_res: float     # metal sheet resistance (ohm/sq)
    sub_loss_k: float    # substrate loss coefficient (dimensionless)
    cap_density: float   # MiM capacitance per area (F/m^2)
    limits: PassiveLimits
    g_out: float = 0.0   # cascode output conductance estimate (S), see netsolver

    @property
    def omega0(self) -> float:
        return 2.0 * math.pi * self.f0

    def validate(self) -> None:
        if self.f0 <= 0:
            raise InvalidField("f0", "must be > 0")
        if not (self.band_lo < self.f0 < self.band_hi):
            raise InvalidBand(
                f"band_lo ({self.band_lo}) < f0 ({self.f0}) < band_hi "
                f"({self.band_hi}) violated")
        positive = ("rs", "rl", "vdd", "k_gm", "k_cgs", "n_slope", "i0_spec",
                    "alpha_noise", "sheet_res", "cap_density")
        for name in positive:
            if getattr(self, name) <= 0:
                raise InvalidField(name, "must be > 0")
        nonneg = ("gamma_noise", "cgd_frac", "cgb_frac", "sub_loss_k", "g_out")
        for name in nonneg:
            if getattr(self, name) < 0:
                raise InvalidField(name, "must be >= 0")
        self.limits.validate()


# --- TOML-subset reader/writer -------------------------------------------
#
# Python 3.10 ships no tomllib and the card only needs flat
# [section] / key = number tables, so a small reader keeps the
# dependency surface at zero.

def _parse_scalar(text: str, path: str, lineno: int):
    text = text.strip()
    if text.lower() in ("true", "false"):
        return text.lower() == "true"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        pass
    if len(text) >= 2 and text[0] == '"' and text[-1] == '"':
        return text[1:-1]
    raise ParseError(f"{path}:{lineno}: cannot parse value {text!r}")


def read_sections(path: str | Path) -> dict[str, dict[str, object]]:
    """Parse a flat sectioned key=value file into nested dicts."""
    sections: dict[str, dict[str, object]] = {}
    current: dict[str, object] | None = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("[") and line.endswith("]"):
                name = line[1:-1].strip()
                current = sections.setdefault(name, {})
                continue
            if "=" not in line:
                raise ParseError(f"{path}:{lineno}: expected key = value")
            if current is None:
                raise ParseError(f"{path}:{lineno}: key outside any [section]")
            key, _, value = line.partition("=")
            current[key.strip()] = _parse_scalar(value, str(path), lineno)
    return sections


_GENERAL_KEYS = ("f0", "band_lo", "band_hi", "rs", "rl", "vdd")
_DEVICE_KEYS = ("k_gm", "k_cgs", "n_slope", "i0_spec", "gamma_noise",
                "alpha_noise", "cgd_frac", "cgb_frac")
_PASSIVE_KEYS = ("sheet_res", "sub_loss_k", "cap_density")
_LIMIT_KEYS = tuple(f.name for f in fields(PassiveLimits))


def _require(section: dict[str, object], section_name: str, key: str) -> float:
    if key not in section:
        raise ParseError(f"missing key '{key}' in [{section_name}]")
    value = section[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"key '{key}' in [{section_name}] must be a number")
    return float(value)


def load_card(path: str | Path) -> TechnologyCard:
    """Load and validate a technology card file.

    Raises ParseError on malformed input and InvalidBand /
    InconsistentLimits / InvalidField on invariant violations, naming the
    offending field.
    """
    sections = read_sections(path)
    for name in ("general", "device", "passives", "limits"):
        if name not in sections:
            raise ParseError(f"missing section [{name}]")
    gen, dev = sections["general"], sections["device"]
    pas, lim = sections["passives"], sections["limits"]

    kwargs = {k: _require(gen, "general", k) for k in _GENERAL_KEYS}
    kwargs.update({k: _require(dev, "device", k) for k in _DEVICE_KEYS})
    kwargs.update({k: _require(pas, "passives", k) for k in _PASSIVE_KEYS})
    kwargs["g_out"] = float(dev.get("g_out", 0.0))  # optional knob
    limits = PassiveLimits(**{k: _require(lim, "limits", k) for k in _LIMIT_KEYS})
    card = TechnologyCard(limits=limits, **kwargs)
    card.validate()
    return card


def serialize_card(card: TechnologyCard) -> str:
    """Render a card back to its file format (canonical key order)."""
    out = []

    def emit(section: str, pairs):
        out.append(f"[{section}]")
        for key, value in pairs:
            out.append(f"{key} = {value!r}")
        out.append("")

    emit("general", [(k, getattr(card, k)) for k in _GENERAL_KEYS])
    emit("device", [(k, getattr(card, k)) for k in _DEVICE_KEYS]
         + [("g_out", card.g_out)])
    emit("passives", [(k, getattr(card, k)) for k in _PASSIVE_KEYS])
    emit("limits", [(k, getattr(card.limits, k)) for k in _LIMIT_KEYS])
    return "\n".join(out)


def save_card(card: TechnologyCard, path: str | Path) -> None:
    Path(path).write_text(serialize_card(card), encoding="utf-8")


def card_hash(card: TechnologyCard) -> str:
    """Provenance hash over the canonical serialization."""
    return hashlib.sha256(serialize_card(card).encode("utf-8")).hexdigest()


def default_card_path() -> Path:
    """Path of the bundled 130 nm card."""
    return Path(str(resources.files("lna_forge").joinpath("data", DEFAULT_CARD_NAME)))


def default_card() -> TechnologyCard:
    """The bundled 130 nm card with the published passive limits.

    Device constants are calibration placeholders, not foundry data: they
    are chosen so that a 32 um / 120 nm device at 0.4 mA lands at a few
    mS of transconductance in moderate inversion.
    """
    return load_card(default_card_path())
