"""Energy and power unit conversion with two explicitly separated constant sets.

``exact`` holds SI definitions plus measured constants (1 btu = 1055 J,
5.5 GJ per barrel of oil, Julian year).  ``paper-approximate`` holds SI
definitions plus the round-number equivalences used for back-of-envelope
comparisons (1 btu ~ 1 kJ, 1 barrel/day ~ 60 kW, ...).  A conversion draws
on one set only.  Factors are stored as exact rationals relative to the SI
unit of the dimension (J or W) and applied with a single final rounding.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, UnknownUnitError

EXACT = "exact"
APPROXIMATE = "paper-approximate"
CONSTANT_SETS = (EXACT, APPROXIMATE)

ENERGY = "energy"
POWER = "power"
TIME = "time"

YEAR_S = Fraction(31557600)  # Julian year
DAY_S = Fraction(86400)
BTU_J = Fraction(1055)
BARREL_J = Fraction(55, 10) * 10**9


@dataclass(frozen=True)
class Unit:
    name: str
    dimension: str
    factor: Fraction  # SI units (J, W or s) per one of this unit
    provenance: str  # "SI", "exact" or "paper-approximate"
    citation: str


def _si(name, dimension, factor, citation="SI definition"):
    return Unit(name, dimension, Fraction(factor), "SI", citation)


_SI_UNITS = [
    _si("J", ENERGY, 1),
    _si("kJ", ENERGY, 10**3),
    _si("MJ", ENERGY, 10**6),
    _si("GJ", ENERGY, 10**9),
    _si("EJ", ENERGY, 10**18),
    _si("kWh", ENERGY, 3600 * 10**3),
    _si("W", POWER, 1),
    _si("kW", POWER, 10**3),
    _si("MW", POWER, 10**6),
    _si("GW", POWER, 10**9),
    _si("TW", POWER, 10**12),
    _si("s", TIME, 1),
    _si("day", TIME, DAY_S),
]

_EXACT_UNITS = [
    Unit("year", TIME, YEAR_S, EXACT, "Julian year, 365.25 d"),
    Unit("btu", ENERGY, BTU_J, EXACT, "1 btu = 1055 J (country table notes)"),
    Unit("quad", ENERGY, BTU_J * 10**15, EXACT, "10^15 btu at 1055 J/btu"),
    Unit("barrel", ENERGY, BARREL_J, EXACT, "oil energy content 5.5 GJ per barrel"),
    Unit("btu_per_year", POWER, BTU_J / YEAR_S, EXACT, "1055 J per Julian year"),
    Unit("quad_per_year", POWER, BTU_J * 10**15 / YEAR_S, EXACT, "10^15 btu per Julian year"),
    Unit("barrel_per_day", POWER, BARREL_J / DAY_S, EXACT, "5.5 GJ per 86400 s"),
    Unit("kWh_per_year", POWER, Fraction(3600 * 10**3) / YEAR_S, EXACT, "3.6 MJ per Julian year"),
    Unit("GJ_per_year", POWER, Fraction(10**9) / YEAR_S, EXACT, "1 GJ per Julian year"),
]

_APPROX_UNITS = [
    Unit("btu", ENERGY, Fraction(1000), APPROXIMATE, "1 btu ~ 1 kJ"),
    Unit("g_oil", ENERGY, Fraction(50 * 10**3), APPROXIMATE, "1 g oil ~ 50 kJ"),
    Unit("barrel_per_day", POWER, Fraction(60 * 10**3), APPROXIMATE, "1 barrel/day ~ 60 kW"),
    Unit("kWh_per_year", POWER, Fraction(1, 10), APPROXIMATE, "1 kWh/year ~ 0.1 W"),
    Unit("btu_per_year", POWER, Fraction(33, 10) / 10**5, APPROXIMATE, "10^5 btu/year ~ 3.3 W"),
]


def _build(extra):
    reg = {u.name: u for u in _SI_UNITS}
    for u in extra:
        reg[u.name] = u
    return reg


REGISTRY = {EXACT: _build(_EXACT_UNITS), APPROXIMATE: _build(_APPROX_UNITS)}


def registry(constants=EXACT):
    try:
        return REGISTRY[constants]
    except KeyError:
        raise DomainError(f"unknown constant set {constants!r}; choose from {CONSTANT_SETS}",
                          "constants") from None


def lookup(name, constants=EXACT) -> Unit:
    reg = registry(constants)
    try:
        return reg[name]
    except KeyError:
        raise UnknownUnitError(
            f"unit {name!r} not in the {constants} registry; available: {', '.join(sorted(reg))}",
            "unit") from None


def factor(from_unit, to_unit, constants=EXACT) -> Fraction:
    """Exact multiplier taking a value in ``from_unit`` to ``to_unit``."""
    a, b = lookup(from_unit, constants), lookup(to_unit, constants)
    if a.dimension != b.dimension:
        raise UnknownUnitError(
            f"cannot convert {from_unit} ({a.dimension}) to {to_unit} ({b.dimension})", "unit")
    return a.factor / b.factor


def convert(value, from_unit, to_unit, constants=EXACT) -> float:
    if from_unit == to_unit:
        lookup(from_unit, constants)
        return value
    return float(Fraction(value) * factor(from_unit, to_unit, constants))
