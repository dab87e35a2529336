"""Order-of-magnitude estimators of global natural and anthropogenic power.

Every estimator returns watts and is a plain product of its physical inputs.
Where the printed intermediate values in the source estimates disagree with
the arithmetic, both are reported side by side and nothing is reconciled.
"""

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import units
from .data import TABLE_A1, TABLE_A2, TABLE_A3, data_path
from .errors import DomainError

WATER_DENSITY = 1e3  # kg m^-3
GRAVITY = 9.8  # m s^-2
TW = 1e12
ECONOMIC_HYDRO_FRACTION = 0.2
SHARE_SUM_TOL = 0.02
NUCLEAR_USABLE_EFFICIENCY = 0.30


def _non_negative(obj):
    for name, value in vars(obj).items():
        if isinstance(value, (int, float)) and (not math.isfinite(value) or value < 0.0):
            raise DomainError(f"{name} must be finite and non-negative, got {value!r}", name)


# -- ocean overturning ------------------------------------------------------

@dataclass(frozen=True)
class ThermohalineInput:
    sink_flux: float = 3e7  # m^3 s^-1
    upwelling_area: float = 3.6e14  # m^2
    delta_t: float = 11.0  # K
    water_density: float = WATER_DENSITY  # kg m^-3
    heat_capacity: float = 4.2  # kJ kg^-1 K^-1

    def __post_init__(self):
        _non_negative(self)
        if self.upwelling_area <= 0:
            raise DomainError("upwelling_area must be positive", "upwelling_area")


@dataclass(frozen=True)
class ThermohalineEstimate:
    upwelling_velocity: float  # m s^-1
    upwelling_velocity_per_year: float  # m yr^-1
    power: float  # W
    printed_velocity: float = 5e-8
    printed_velocity_per_year: float = 2.0
    sink_flux_from_annual: float = 1e15 / float(units.YEAR_S)
    notes: str = ("printed upwelling speed (2 m/yr = 5e-8 m/s) is not F/S; "
                  "1e15 m^3/yr is 3.17e7 m^3/s, the rounded 3e7 m^3/s is used")


def thermohaline_power(inp: ThermohalineInput = ThermohalineInput()) -> ThermohalineEstimate:
    """Heating of upwelled deep water: ``rho * c * dT * F``."""
    u = inp.sink_flux / inp.upwelling_area
    power = inp.water_density * inp.heat_capacity * 1e3 * inp.delta_t * inp.sink_flux
    return ThermohalineEstimate(u, u * float(units.YEAR_S), power)


# -- atmospheric circulation ------------------------------------------------

@dataclass(frozen=True)
class WindCirculationInput:
    beta: float = 3.0  # compression coefficient
    gamma: float = 2e-2  # relative saturated vapour content
    air_density: float = 1.0  # kg m^-3
    g: float = GRAVITY
    w: float = 1e-3  # m s^-1, upwelling velocity as printed
    h_vapor: float = 2.4e3  # m, water vapour scale height
    surface_area: float = 5e14  # m^2
    precipitation: float = 1.7e-3  # mol m^-2 s^-1
    vapor_concentration: float = 0.7  # mol m^-3
    eddy_viscosity: float = 3.0  # m^2 s^-1
    wind_speed: float = 7.0  # m s^-1
    shear_scale: float = 100.0  # m

    def __post_init__(self):
        _non_negative(self)
        for name in ("vapor_concentration", "shear_scale"):
            if getattr(self, name) <= 0:
                raise DomainError(f"{name} must be positive", name)


@dataclass(frozen=True)
class UpwellingEstimate:
    force_density: float  # N m^-3
    power: float  # W
    w_from_precip: float  # m s^-1


def wind_upwelling_power(inp: WindCirculationInput = WindCirculationInput()) -> UpwellingEstimate:
    f_e = inp.beta * inp.gamma * inp.air_density * inp.g
    return UpwellingEstimate(
        force_density=f_e,
        power=f_e * inp.w * inp.h_vapor * inp.surface_area,
        w_from_precip=inp.precipitation / inp.vapor_concentration,
    )


@dataclass(frozen=True)
class DissipationEstimate:
    literal: float  # rho nu u^2 l^-2 S
    printed_variant: float  # rho u^2 l^-1 S
    claimed: float = 1e3 * TW
    flags: tuple = ()


def within_factor(value, reference, factor=2.0):
    if value <= 0 or reference <= 0:
        return False
    return 1.0 / factor <= value / reference <= factor


def wind_dissipation_power(inp: WindCirculationInput = WindCirculationInput()) -> DissipationEstimate:
    """Frictional dissipation of horizontal wind, in both written forms.

    The friction force ``rho nu u / l^2`` times ``u S`` and the printed power
    ``rho u^2 S / l`` differ by ``nu / l``; neither is preferred.
    """
    rho, u, l, s = inp.air_density, inp.wind_speed, inp.shear_scale, inp.surface_area
    literal = rho * inp.eddy_viscosity * u * u / (l * l) * s
    printed = rho * u * u / l * s
    claimed = 1e3 * TW
    flags = []
    if not within_factor(literal, claimed):
        flags.append("literal_mismatch_claim")
    if not within_factor(printed, claimed):
        flags.append("printed_variant_mismatch_claim")
    if not math.isclose(literal, printed, rel_tol=1e-9):
        flags.append("formulas_disagree")
    return DissipationEstimate(literal, printed, claimed, tuple(flags))


# -- rivers -----------------------------------------------------------------

@dataclass(frozen=True)
class HydroOsmoticInput:
    runoff: float = 1.5e6  # m^3 s^-1
    mean_height: float = 200.0  # m
    osmotic_pressure: float = 28.0  # atm
    water_column_per_atm: float = 10.0  # m atm^-1

    def __post_init__(self):
        _non_negative(self)


def hydropower(inp: HydroOsmoticInput = HydroOsmoticInput()) -> float:
    """Gross power of river runoff falling from the mean continental height."""
    return inp.runoff * WATER_DENSITY * GRAVITY * inp.mean_height


def economic_hydropower(inp: HydroOsmoticInput = HydroOsmoticInput(),
                        fraction: float = ECONOMIC_HYDRO_FRACTION) -> float:
    return fraction * hydropower(inp)


@dataclass(frozen=True)
class OsmoticEstimate:
    head: float  # m
    power: float  # W


def osmotic_power(inp: HydroOsmoticInput = HydroOsmoticInput()) -> OsmoticEstimate:
    head = inp.osmotic_pressure * inp.water_column_per_atm
    return OsmoticEstimate(head, inp.runoff * WATER_DENSITY * GRAVITY * head)


# -- civilization -----------------------------------------------------------

@dataclass(frozen=True)
class EnergyMix:
    """Primary energy by source and, optionally, electricity by source."""

    total: float  # W
    shares: dict  # oil, coal, gas, nuclear, hydro, other (fractions)
    electric_total: Optional[float] = None  # W
    electric_shares: dict = field(default_factory=dict)  # thermal, nuclear, hydro
    nuclear_usable_efficiency: float = NUCLEAR_USABLE_EFFICIENCY

    def __post_init__(self):
        if not math.isfinite(self.total) or self.total <= 0:
            raise DomainError(f"total must be positive, got {self.total!r}", "total")
        for label, group in (("shares", self.shares), ("electric_shares", self.electric_shares)):
            if not group:
                continue
            for key, value in group.items():
                if not 0.0 <= value <= 1.0:
                    raise DomainError(f"{label}[{key!r}]={value!r} outside [0, 1]", label)
            s = math.fsum(group.values())
            if abs(s - 1.0) > SHARE_SUM_TOL:
                raise DomainError(f"{label} sum to {s:.4g}, expected 1 +/- {SHARE_SUM_TOL}", label)
        if not 0.0 < self.nuclear_usable_efficiency <= 1.0:
            raise DomainError("nuclear_usable_efficiency must lie in (0, 1]",
                              "nuclear_usable_efficiency")

    @property
    def nuclear_total(self):
        return self.total * self.shares.get("nuclear", 0.0)


@dataclass(frozen=True)
class NuclearReport:
    nuclear_total: float
    usable_nuclear: float
    usable_total: float
    usable_share: float  # of usable consumption
    share_of_total: float  # of total consumption
    waste_heat: float
    route: str  # "electric" or "efficiency"


def nuclear_usable(mix: EnergyMix) -> NuclearReport:
    """Count nuclear energy by the electricity it delivers, not reactor heat.

    Uses the nuclear part of electricity production when the mix has it,
    otherwise the thermal output times ``nuclear_usable_efficiency``.
    """
    nuclear = mix.nuclear_total
    if mix.electric_total is not None and "nuclear" in mix.electric_shares:
        usable = mix.electric_total * mix.electric_shares["nuclear"]
        route = "electric"
    else:
        usable = nuclear * mix.nuclear_usable_efficiency
        route = "efficiency"
    usable_total = mix.total - nuclear + usable
    return NuclearReport(
        nuclear_total=nuclear,
        usable_nuclear=usable,
        usable_total=usable_total,
        usable_share=usable / usable_total,
        share_of_total=usable / mix.total,
        waste_heat=nuclear - usable,
        route=route,
    )


def biotic_disturbance(total_biota_power, land_fraction, disturbed_fraction) -> float:
    """Biotic power lost to disturbance; exact rational product of the inputs.

    Accepts ``Fraction`` for quantities like "two thirds".
    """
    for name, value in (("land_fraction", land_fraction), ("disturbed_fraction", disturbed_fraction)):
        if not 0 <= value <= 1:
            raise DomainError(f"{name} must lie in [0, 1], got {value!r}", name)
    if total_biota_power < 0:
        raise DomainError("total_biota_power must be non-negative", "total_biota_power")
    return float(Fraction(total_biota_power) * Fraction(land_fraction) * Fraction(disturbed_fraction))


def efficiency(p_useful: float, p_total: float) -> float:
    if not p_total > 0:
        raise DomainError(f"p_total must be positive, got {p_total!r}", "p_total")
    if not p_useful > 0:
        raise DomainError(f"p_useful must be positive, got {p_useful!r}", "p_useful")
    if p_useful > p_total:
        raise DomainError(f"p_useful={p_useful!r} exceeds p_total={p_total!r}", "p_useful")
    return p_useful / p_total


# -- reference tables -------------------------------------------------------

@dataclass(frozen=True)
class BudgetEntry:
    quantity: str
    value: Optional[float]
    unit: str
    scope: str
    source_tag: str

    def watts(self):
        if self.value is None:
            return None
        return units.convert(self.value, self.unit, "W")


@dataclass(frozen=True)
class ReferenceTable:
    name: str
    entries: tuple

    def get(self, quantity, scope) -> BudgetEntry:
        for e in self.entries:
            if e.quantity == quantity and e.scope == scope:
                return e
        raise KeyError(f"{self.name}: no entry {quantity!r} for scope {scope!r}")

    def scope(self, scope):
        return {e.quantity: e for e in self.entries if e.scope == scope}


BUDGET_COLUMNS = ("quantity", "value", "unit", "scope", "source_tag")


def _read_reference(name, filename):
    with open(data_path(filename), newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != BUDGET_COLUMNS:
            raise DomainError(f"{filename}: header must be {','.join(BUDGET_COLUMNS)}", filename)
        entries = tuple(
            BudgetEntry(row["quantity"], float(row["value"]) if row["value"] else None,
                        row["unit"], row["scope"], row["source_tag"])
            for row in reader)
    return ReferenceTable(name, entries)


def budget_table() -> dict:
    """The three bundled reference tables keyed ``A1``, ``A2``, ``A3``."""
    return {
        "A1": _read_reference("A1", TABLE_A1),
        "A2": _read_reference("A2", TABLE_A2),
        "A3": _read_reference("A3", TABLE_A3),
    }


def mix_from_tables(region, tables=None, efficiency=NUCLEAR_USABLE_EFFICIENCY) -> EnergyMix:
    """Assemble an :class:`EnergyMix` for a region of the A2/A3 tables."""
    tables = tables or budget_table()
    a2, a3 = tables["A2"].scope(region), tables["A3"].scope(region)
    if not a2:
        raise DomainError(f"region {region!r} not in table A2", "region")
    shares = {}
    for key in ("oil", "coal", "gas", "nuclear", "hydro", "other"):
        entry = a2.get(f"{key}_share") or a2.get(f"{key}_share_max")
        if entry is not None and entry.value is not None:
            shares[key] = entry.value / 100.0
    electric_total = a3["electric_total"].watts() if "electric_total" in a3 else None
    electric = {k: a3[f"{k}_share"].value / 100.0 for k in ("thermal", "nuclear", "hydro")
                if f"{k}_share" in a3}
    return EnergyMix(a2["total"].watts(), shares, electric_total, electric, efficiency)


@dataclass(frozen=True)
class EstimatorCheck:
    name: str
    computed: float  # W
    reference: float  # W
    ratio: float
    within_factor_2: bool
    expected_discrepancy: bool = False


def estimator_checks(tables=None) -> list:
    """Compare each estimator with its Table A1 row."""
    a1 = (tables or budget_table())["A1"]
    dissipation = wind_dissipation_power()
    rows = [
        ("thermohaline", thermohaline_power().power, a1.get("thermohaline_circulation", "total_earth"), False),
        ("wind_upwelling", wind_upwelling_power().power, a1.get("atmospheric_circulation", "total_earth"), False),
        ("wind_dissipation_literal", dissipation.literal, a1.get("atmospheric_circulation", "total_earth"), True),
        ("wind_dissipation_printed", dissipation.printed_variant, a1.get("atmospheric_circulation", "total_earth"), True),
        ("hydropower", hydropower(), a1.get("river_hydropower", "land"), False),
        ("osmotic", osmotic_power().power, a1.get("osmotic_river_sea", "land"), False),
        ("biotic_disturbance", biotic_disturbance(100, Fraction(2, 3), Fraction(3, 5)) * TW,
         a1.get("photosynthesis_disturbed_land", "civilization"), False),
    ]
    out = []
    for name, computed, entry, expected in rows:
        ref = entry.watts()
        out.append(EstimatorCheck(name, computed, ref, computed / ref,
                                  within_factor(computed, ref), expected))
    return out
