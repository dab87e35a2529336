"""Named parameter presets and curve sampling for figure reproduction."""

import enum
import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

import numpy as np

from . import dynamics, econ, energy, price
from .dynamics import PiecewiseSystem
from .errors import DomainError, UnknownPresetError

STOCK_UNIT = "t C/ha"


class PresetKind(str, enum.Enum):
    ECOSYSTEM = "Ecosystem"
    PRICE = "Price"
    ECONOMY = "Economy"
    ENERGY_BUDGET = "EnergyBudget"


@dataclass(frozen=True)
class PricePreset:
    system: PiecewiseSystem
    c: float
    d_max: Optional[float] = None

    def build(self):
        return price.build_price_system(self.system, self.c, self.d_max)


@dataclass(frozen=True)
class WorldEconomy2005:
    gdp: float = 45e12  # USD/yr
    population: float = 6.3e9
    working_fraction: float = 0.5
    hours_per_year: float = 2100.0
    energy_consumption_gj: float = 4.7e11  # GJ/yr
    energy_consumption_w: float = 15e12
    oil_price_per_barrel: float = 55.0
    gj_per_barrel: float = 5.5
    sector2_revenue: float = 5e12  # rounded energy spend, USD/yr
    n1_over_n2: float = 300.0
    real_production_value: float = 35e12  # GDP minus energy and vacant activity

    def two_sector(self, revenue=None):
        return econ.TwoSectorEconomy.from_ratio(
            self.gdp, self.n1_over_n2, self.sector2_revenue if revenue is None else revenue)

    def computed_energy_revenue(self):
        unit = econ.price_per_gj(self.oil_price_per_barrel, self.gj_per_barrel)
        return econ.energy_revenue(self.energy_consumption_gj, unit)


@dataclass(frozen=True)
class BudgetInputs:
    thermohaline: energy.ThermohalineInput = energy.ThermohalineInput()
    wind: energy.WindCirculationInput = energy.WindCirculationInput()
    rivers: energy.HydroOsmoticInput = energy.HydroOsmoticInput()
    france_region: str = "France"
    world_region: str = "World"
    biota_power_tw: float = 100.0
    land_fraction: Fraction = Fraction(2, 3)
    disturbed_fraction: Fraction = Fraction(3, 5)


@dataclass(frozen=True)
class Preset:
    id: str
    kind: PresetKind
    parameters: Any
    citation: str
    notes: str = ""
    inconsistent: bool = False


_PRESETS = (
    Preset(
        "fig1a", PresetKind.ECOSYSTEM,
        PiecewiseSystem(8.0, 4.0, 4.0, 19.0, stock_unit=STOCK_UNIT),
        "ecosystem example: stable natural forest with an unstable grassland state",
        "rounded stocks 150 and 17 are quoted at the source; the exact products 152 and 16 are used",
    ),
    Preset(
        "fig1b_forestry", PresetKind.ECOSYSTEM,
        PiecewiseSystem(8.0, 8.0, 9.0, 9.0, stock_unit=STOCK_UNIT),
        "ecosystem example: exploited forest, periodically cut",
        "exact stocks are 72; quoted rounded to 70",
    ),
    Preset(
        "fig1b_agriculture", PresetKind.ECOSYSTEM,
        PiecewiseSystem(4.0, 4.0, 1.0, 1.0, stock_unit=STOCK_UNIT),
        "ecosystem example: agriculture on clear-cut areas",
    ),
    Preset(
        "fig1c", PresetKind.ECOSYSTEM,
        PiecewiseSystem.from_stocks(8.0, 16.0, 2.0, 2.0, stock_unit=STOCK_UNIT),
        "ecosystem example: alien herbivores in an island ecosystem",
        "source gives both P- = 5 and P- = 2 x 4 = 8 and no P+; "
        "rates back-derived from the stocks M_u = 16, M_s = 8 with T+ = T- = 2 "
        "(P+ = 4, P- = 8, alpha = 2)",
        inconsistent=True,
    ),
    Preset(
        "fig2_relative", PresetKind.PRICE,
        PricePreset(PiecewiseSystem.from_stocks(1.0, 0.25, 1.0, 1.0), c=1.0, d_max=40.0),
        "relative price curve: d_u ~ 4 d_s, breakdown at 40 d_s",
        "prices in units of d_s; turnover times normalised to 1 since only ratios are given",
    ),
    Preset(
        "sec5_oil_markup", PresetKind.ECONOMY, WorldEconomy2005(),
        "world economy 2005: GDP, energy spend and employment ratio",
        "n1/n2 = 300 is stored as n1 = 300, n2 = 1; only the ratio enters the markup",
    ),
    Preset(
        "sec6_three_sector", PresetKind.ECONOMY,
        econ.ThreeSectorEconomy(gdp=45e12, energy_revenue_share=0.10,
                                energy_employment_share=0.001, markup=100.0),
        "three-sector world: 0.1% of the population paid 10% of GDP at a hundredfold markup",
    ),
    Preset(
        "appendix_budget", PresetKind.ENERGY_BUDGET, BudgetInputs(),
        "global energy budget estimators and reference tables A1-A3",
        "wind dissipation formulas disagree with each other and with the 1e3 TW claim",
    ),
)

PRESETS = {p.id: p for p in _PRESETS}


def preset_ids():
    return tuple(PRESETS)


def preset(preset_id: str) -> Preset:
    try:
        return PRESETS[preset_id]
    except KeyError:
        raise UnknownPresetError(
            f"unknown preset {preset_id!r}; available: {', '.join(PRESETS)}", "preset") from None


def validate(p: Preset):
    """Push the payload through its owning module's validation."""
    payload = p.parameters
    if p.kind is PresetKind.ECOSYSTEM:
        return dynamics.derive(payload)
    if p.kind is PresetKind.PRICE:
        return payload.build()
    if isinstance(payload, WorldEconomy2005):
        return econ.markup_ratio(payload.two_sector())
    if isinstance(payload, econ.ThreeSectorEconomy):
        return econ.three_sector_report(payload)
    return energy.estimator_checks()


# -- curves -----------------------------------------------------------------

@dataclass(frozen=True)
class CurveSeries:
    x: np.ndarray
    y: np.ndarray
    x_unit: str
    y_unit: str
    label: str

    def __post_init__(self):
        if len(self.x) != len(self.y):
            raise DomainError("x and y lengths differ", "y")
        if len(self.x) > 1 and not np.all(np.diff(self.x) > 0):
            raise DomainError("x must be strictly increasing", "x")

    def __len__(self):
        return len(self.x)


@dataclass(frozen=True)
class Grid:
    start: float
    stop: float
    step: float

    def values(self):
        if not self.step > 0:
            raise DomainError(f"grid step must be positive, got {self.step!r}", "grid")
        if self.stop < self.start:
            raise DomainError("grid stop precedes start", "grid")
        n = int(round((self.stop - self.start) / self.step))
        # include stop when it lies on the lattice
        if self.start + n * self.step > self.stop * (1 + 1e-12) + 1e-300:
            n -= 1
        xs = self.start + self.step * np.arange(n + 1)
        if abs(xs[-1] - self.stop) <= 1e-9 * self.step:
            xs[-1] = self.stop
        return xs

    @classmethod
    def parse(cls, text):
        try:
            start, stop, step = (float(v) for v in text.split(":"))
        except ValueError:
            raise DomainError(f"grid must be START:STOP:STEP, got {text!r}", "grid") from None
        return cls(start, stop, step)


@dataclass(frozen=True)
class TrajectorySpec:
    x0: float
    dt: float
    n_steps: int


CURVES = ("potential", "flux", "trajectory")


def _override(payload, overrides):
    if not overrides:
        return payload
    names = {f.name for f in dataclasses.fields(payload)}
    own = {k: v for k, v in overrides.items() if k in names}
    rest = {k: v for k, v in overrides.items() if k not in names}
    if rest and isinstance(payload, PricePreset):
        own["system"] = _override(payload.system, rest)
    elif rest:
        raise DomainError(f"cannot override {sorted(rest)}; fields are {sorted(names)}",
                          sorted(rest)[0])
    return dataclasses.replace(payload, **own)


def emit_curve(preset_id: str, curve: str, grid, **overrides) -> CurveSeries:
    """Sample a preset's potential, flux or trajectory.

    ``grid`` is a :class:`Grid` for potential/flux and a
    :class:`TrajectorySpec` for trajectories.  Zero trajectory steps give an
    empty series.  Keyword overrides replace preset parameters (``p_plus``,
    ``c``, ``d_max``...) for sweeps.
    """
    p = preset(preset_id)
    if curve not in CURVES:
        raise DomainError(f"unknown curve {curve!r}; choose from {CURVES}", "curve")
    if p.kind not in (PresetKind.ECOSYSTEM, PresetKind.PRICE):
        raise DomainError(f"preset {preset_id!r} ({p.kind.value}) has no curves", "preset")
    payload = _override(p.parameters, overrides)
    if p.kind is PresetKind.ECOSYSTEM:
        sys = payload
        unit, t_unit = sys.stock_unit, sys.time_unit
        pot, flx = dynamics.potential, dynamics.flux
        lowest_ok = lambda v: v >= 0.0
        run = lambda spec: dynamics.integrate(sys, spec.x0, spec.dt, spec.n_steps)
        target = sys
    else:
        target = payload.build()
        unit, t_unit = "d_s", "year"
        pot = price.price_potential
        flx = lambda d, ps: price.price_flux(d, ps).value
        lowest_ok = lambda v: v > 0.0
        run = lambda spec: price.integrate_price(target, spec.x0, spec.dt, spec.n_steps)

    if curve == "trajectory":
        if not isinstance(grid, TrajectorySpec):
            raise DomainError("trajectory needs a TrajectorySpec (x0, dt, n_steps)", "grid")
        if not lowest_ok(grid.x0):
            raise DomainError(f"initial value {grid.x0!r} outside the domain", "x0")
        if grid.n_steps == 0:
            return CurveSeries(np.empty(0), np.empty(0), t_unit, unit, f"{preset_id}:trajectory")
        tr = run(grid)
        return CurveSeries(tr.t, tr.y, t_unit, unit, f"{preset_id}:trajectory")

    if not isinstance(grid, Grid):
        raise DomainError(f"{curve} needs a Grid (start, stop, step)", "grid")
    xs = grid.values()
    if len(xs) and not lowest_ok(float(xs[0])):
        raise DomainError(f"grid start {grid.start!r} outside the domain", "grid")
    fn = pot if curve == "potential" else flx
    ys = np.array([fn(float(x), target) for x in xs])
    y_unit = f"{unit}^2/{t_unit}" if curve == "potential" else f"{unit}/{t_unit}"
    return CurveSeries(xs, ys, unit, y_unit, f"{preset_id}:{curve}")
