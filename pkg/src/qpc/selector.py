"""Paradigm selection and the error-threshold reference table.

Three device questions pick one of four computing paradigms:

1. Scalability -- is the architecture monolithic (one growing system) or
   modular (small units stitched together)?  Modular devices lean on
   entangling links and measurements, so they route to the one-way model.
2. Addressability -- can individual qubits be driven (local), or only the
   whole ensemble (global)?  Monolithic + global routes to global control.
3. Control -- is the natural evolution adiabatic or gate-like?  The two
   remaining leaves are the adiabatic model and the circuit model.

``threshold_table`` collects published fault-tolerance thresholds (and one
QKD error rate) as reference data for comparing the paradigms.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

SCALABILITY_CHOICES = ("monolithic", "modular")
ADDRESSABILITY_CHOICES = ("local", "global")
CONTROL_CHOICES = ("non-adiabatic", "adiabatic")


class Paradigm(enum.Enum):
    CIRCUIT_MODEL = "Circuit Model"
    ONE_WAY_QC = "One-way QC"
    GLOBAL_CONTROL = "Global Control"
    ADIABATIC_QC = "Adiabatic QC"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class DeviceProfile:
    """Answers to the three selection questions; all must be given."""

    scalability: str
    addressability: str
    control: str

    def __post_init__(self) -> None:
        checks = (
            ("scalability", self.scalability, SCALABILITY_CHOICES),
            ("addressability", self.addressability, ADDRESSABILITY_CHOICES),
            ("control", self.control, CONTROL_CHOICES),
        )
        for name, value, allowed in checks:
            if value not in allowed:
                raise ValueError(f"{name} must be one of {allowed}, got {value!r}")


def recommend(profile: DeviceProfile) -> Paradigm:
    """Route a device profile to its paradigm.

    Modular wins outright (the remaining answers are accepted but ignored);
    monolithic devices split on addressability, then on control.
    """
    if profile.scalability == "modular":
        return Paradigm.ONE_WAY_QC
    if profile.addressability == "global":
        return Paradigm.GLOBAL_CONTROL
    if profile.control == "adiabatic":
        return Paradigm.ADIABATIC_QC
    return Paradigm.CIRCUIT_MODEL


@dataclass(frozen=True)
class ThresholdEntry:
    """One published threshold: a value or a (low, high) range, cited."""

    name: str
    low: float
    high: float
    citation: str
    note: str

    def __post_init__(self) -> None:
        if not (self.low > 0.0 and self.high >= self.low):
            raise ValueError(f"bad threshold range [{self.low}, {self.high}]")
        if not self.citation:
            raise ValueError("citation must be non-empty")

    @property
    def is_range(self) -> bool:
        return self.high != self.low


_TABLE = (
    ThresholdEntry(
        name="circuit model (early estimates)",
        low=1e-6,
        high=1e-4,
        citation="Kitaev 1997; Preskill 1998; Knill, Laflamme & Zurek 1998; "
        "Aharonov & Ben-Or 1999; Gottesman 1997",
        note="first per-gate error thresholds, concatenated codes",
    ),
    ThresholdEntry(
        name="circuit model (proved)",
        low=3e-3,
        high=3e-3,
        citation="Steane 2003",
        note="rigorous threshold proof",
    ),
    ThresholdEntry(
        name="circuit model (numerical)",
        low=1e-2,
        high=1e-2,
        citation="Knill 2004",
        note="about one percent, error-detecting teleportation circuits",
    ),
    ThresholdEntry(
        name="circuit model (nearest-neighbour)",
        low=1e-5,
        high=1e-4,
        citation="Svore, Terhal & DiVincenzo 2005",
        note="couplings restricted to nearest neighbours",
    ),
    ThresholdEntry(
        name="global control",
        low=1e-11,
        high=1e-11,
        citation="Kay 2005-2007",
        note="fault-tolerance theorem for globally controlled chains",
    ),
    ThresholdEntry(
        name="one-way (2D cluster)",
        low=7.5e-3,
        high=7.5e-3,
        citation="Raussendorf & Harrington 2006-2007",
        note="0.75% on two-dimensional cluster states",
    ),
    ThresholdEntry(
        name="BB84 key distribution",
        low=0.11,
        high=0.11,
        citation="Shor & Preskill 2000",
        note="maximum tolerable bit error rate, not a computing threshold",
    ),
)


def threshold_table() -> tuple[ThresholdEntry, ...]:
    """Static reference table of published thresholds."""
    return _TABLE
