"""Sector accounting: markup from a two-sector GDP split, wages, money/energy
equivalence, the three-sector (industry / energy / vacant) arithmetic and
ingestion of the country employment table.
"""

import csv
import io
import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import DomainError, TableParseError, TableWarning

SECTORS = ("food", "mining", "manuf", "electr", "constr", "trade", "transp", "other")

TABLE_COLUMNS = (
    "name",
    "energy_consumption_1e15btu",
    "energy_production_1e15btu",
    "population_1e3",
    "working_1e3",
) + tuple(f"{s}_pct" for s in SECTORS)

SHARE_SUM_TOL = 0.5
ENERGY_EXPENDITURE_THRESHOLD = 0.10  # of GDP, global scale
DEFAULT_ENERGY_FRACTION_OF_MINING = 0.5
DEFAULT_FOOD_THRESHOLD = 12.5
WORKDAYS_PER_WEEK = 5.0
CAREER_YEARS = 40.0


def _positive(name, value):
    if not math.isfinite(value) or value <= 0.0:
        raise DomainError(f"{name} must be strictly positive and finite, got {value!r}", name)


def _fraction(name, value, closed_right=False):
    ok = 0.0 < value <= 1.0 if closed_right else 0.0 < value < 1.0
    if not ok:
        bound = "(0, 1]" if closed_right else "(0, 1)"
        raise DomainError(f"{name} must lie in {bound}, got {value!r}", name)


# -- two-sector markup ------------------------------------------------------

@dataclass(frozen=True)
class TwoSectorEconomy:
    """GDP split between a cost-price sector (n1) and a marked-up one (n2)."""

    gdp: float
    n1: float
    n2: float
    sector2_revenue: float

    def __post_init__(self):
        for name in ("gdp", "n1", "n2", "sector2_revenue"):
            _positive(name, getattr(self, name))
        if self.sector2_revenue >= self.gdp:
            raise DomainError(
                f"sector2_revenue={self.sector2_revenue!r} must be below gdp={self.gdp!r}",
                "sector2_revenue")

    @classmethod
    def from_ratio(cls, gdp, n1_over_n2, sector2_revenue):
        return cls(gdp, float(n1_over_n2), 1.0, sector2_revenue)

    @property
    def cost_price_output(self):
        """Per-worker output value in the cost-price sector."""
        return (self.gdp - self.sector2_revenue) / self.n1

    @property
    def marked_up_output(self):
        return self.sector2_revenue / self.n2


def markup_ratio(e: TwoSectorEconomy) -> float:
    """Market over cost price of the second sector, ``G_t / G_s``."""
    return (e.n1 / e.n2) * e.sector2_revenue / (e.gdp - e.sector2_revenue)


def energy_revenue(consumption: float, unit_price: float) -> float:
    """Annual spend on energy: consumption (GJ/yr) times price per GJ."""
    _positive("consumption", consumption)
    _positive("unit_price", unit_price)
    return consumption * unit_price


def price_per_gj(price_per_barrel: float, gj_per_barrel: float) -> float:
    _positive("price_per_barrel", price_per_barrel)
    _positive("gj_per_barrel", gj_per_barrel)
    return price_per_barrel / gj_per_barrel


def mean_wage(gdp, population, working_fraction, hours_per_year):
    """GDP per hour worked by the working population."""
    for name, value in (("gdp", gdp), ("population", population),
                        ("working_fraction", working_fraction),
                        ("hours_per_year", hours_per_year)):
        _positive(name, value)
    if working_fraction > 1.0:
        raise DomainError(f"working_fraction must not exceed 1, got {working_fraction!r}",
                          "working_fraction")
    return gdp / (population * working_fraction * hours_per_year)


@dataclass(frozen=True)
class MoneyEnergyFactor:
    joule_per_currency: float
    currency_per_gj: float

    @property
    def mj_per_currency(self):
        return self.joule_per_currency / 1e6


def money_energy_factor(production_value: float, energy_consumption: float) -> MoneyEnergyFactor:
    """Energy consumed per unit of real production value, and its reciprocal.

    ``production_value`` in currency per year, ``energy_consumption`` in J
    per year.
    """
    _positive("production_value", production_value)
    _positive("energy_consumption", energy_consumption)
    return MoneyEnergyFactor(energy_consumption / production_value,
                             production_value / energy_consumption * 1e9)


# -- three-sector report ----------------------------------------------------

@dataclass(frozen=True)
class ThreeSectorEconomy:
    gdp: float
    energy_revenue_share: float = ENERGY_EXPENDITURE_THRESHOLD
    energy_employment_share: float = 0.001
    markup: float = 100.0

    def __post_init__(self):
        _positive("gdp", self.gdp)
        _fraction("energy_revenue_share", self.energy_revenue_share)
        _fraction("energy_employment_share", self.energy_employment_share)
        if not math.isfinite(self.markup) or self.markup < 1.0:
            raise DomainError(f"markup must be at least 1, got {self.markup!r}", "markup")


@dataclass(frozen=True)
class ThreeSectorReport:
    energy_revenue_share: float
    cost_labor_share: float
    vacant_share: float
    vacant_gdp: float
    implied_markup_from_employment: float
    expensive_energy_employment_share: float
    green_share: float
    workweek_reduction_days: float
    retirement_reduction_years: float
    decomposition: str = ("vacant share = energy revenue share minus its cost-price "
                          "labor content (share / markup)")


def three_sector_report(e: ThreeSectorEconomy) -> ThreeSectorReport:
    """Current economy, exhausted-cheap-energy scenario and cost-price scenario.

    The energy sector's revenue share splits into the labor it actually
    embodies (``share / markup``) and the surplus that supports a vacant
    population.  When cheap energy is gone (markup -> 1 at unchanged
    revenue) energy employment must rise to the revenue share.  When energy
    is sold at cost, the vacant share becomes a free "green" share of GDP,
    expressible as shorter working weeks or earlier retirement.
    """
    share = e.energy_revenue_share
    cost_labor = share / e.markup
    vacant = share - cost_labor
    n1_over_n2 = (1.0 - e.energy_employment_share) / e.energy_employment_share
    implied = n1_over_n2 * share / (1.0 - share)
    return ThreeSectorReport(
        energy_revenue_share=share,
        cost_labor_share=cost_labor,
        vacant_share=vacant,
        vacant_gdp=vacant * e.gdp,
        implied_markup_from_employment=implied,
        expensive_energy_employment_share=share,
        green_share=vacant,
        workweek_reduction_days=vacant * WORKDAYS_PER_WEEK,
        retirement_reduction_years=vacant * CAREER_YEARS,
    )


# -- country table ----------------------------------------------------------

@dataclass(frozen=True)
class CountryRecord:
    name: str
    energy_consumption: Optional[float]
    energy_production: Optional[float]
    population: Optional[float]
    working: Optional[float]
    sector_shares: dict = field(default_factory=dict)

    def share(self, sector):
        return self.sector_shares.get(sector)

    @property
    def share_sum(self):
        values = [v for v in self.sector_shares.values() if v is not None]
        return math.fsum(values) if values else None


@dataclass(frozen=True)
class Aggregates:
    n_records: int
    energy_consumption: float
    energy_production: float
    population: float
    working: float
    sector_shares: dict  # employment-weighted mean percent per sector

    def sector_employment(self, sector):
        return self.sector_shares[sector] / 100.0 * self.working


def _parse_number(text, column, row):
    text = text.strip()
    if text == "":
        return None
    try:
        value = int(text) if text.lstrip("+-").isdigit() else float(text)
    except ValueError:
        raise TableParseError(f"column {column!r}: cannot parse {text!r} as a number", row) from None
    if not math.isfinite(value):
        raise TableParseError(f"column {column!r}: non-finite value {text!r}", row)
    return value


def parse_records(lines: Iterable[str]) -> list:
    """Parse and validate CSV text lines against the country-table schema."""
    reader = csv.reader(lines)
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise TableParseError("empty input, header row required") from None
    if tuple(header) != TABLE_COLUMNS:
        raise TableParseError(
            f"header mismatch: expected {','.join(TABLE_COLUMNS)}, got {','.join(header)}", 0)

    records = []
    for row, cells in enumerate(reader, start=1):
        if not cells or all(not c.strip() for c in cells):
            continue
        if len(cells) != len(TABLE_COLUMNS):
            raise TableParseError(f"expected {len(TABLE_COLUMNS)} fields, got {len(cells)}", row)
        name = cells[0].strip()
        if not name:
            raise TableParseError("empty name", row)
        nums = [_parse_number(c, col, row) for c, col in zip(cells[1:], TABLE_COLUMNS[1:])]
        for value, col in zip(nums, TABLE_COLUMNS[1:]):
            if value is not None and value < 0:
                raise TableParseError(f"column {col!r}: negative value {value!r}", row)
        shares = dict(zip(SECTORS, nums[4:]))
        for sector, value in shares.items():
            if value is not None and value > 100.0:
                raise TableParseError(f"{sector}_pct={value!r} exceeds 100", row)
        rec = CountryRecord(name, nums[0], nums[1], nums[2], nums[3], shares)
        if rec.population is not None and rec.working is not None and rec.working > rec.population:
            raise TableParseError(
                f"working={rec.working!r} exceeds population={rec.population!r}", row)
        total = rec.share_sum
        if total is not None and abs(total - 100.0) > SHARE_SUM_TOL:
            warnings.warn(f"row {row} ({name}): sector shares sum to {total:g}, not 100",
                          TableWarning, stacklevel=2)
        records.append(rec)
    return records


def aggregate(records) -> Aggregates:
    def total(attr):
        return math.fsum(getattr(r, attr) for r in records if getattr(r, attr) is not None)

    weighted = {}
    for sector in SECTORS:
        pairs = [(r.share(sector), r.working) for r in records
                 if r.share(sector) is not None and r.working is not None]
        weight = math.fsum(w for _, w in pairs)
        weighted[sector] = math.fsum(s * w for s, w in pairs) / weight if weight else math.nan
    return Aggregates(
        n_records=len(records),
        energy_consumption=total("energy_consumption"),
        energy_production=total("energy_production"),
        population=total("population"),
        working=total("working"),
        sector_shares=weighted,
    )


def ingest_table(lines: Iterable[str]):
    """Parse a country table; return ``(records, aggregates)``."""
    records = parse_records(lines)
    return records, aggregate(records)


def load_table(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return ingest_table(fh)


def _format_number(value):
    if value is None:
        return ""
    return str(value) if isinstance(value, int) else repr(float(value))


def serialize_records(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TABLE_COLUMNS)
    for r in records:
        writer.writerow(
            [r.name]
            + [_format_number(v) for v in (r.energy_consumption, r.energy_production,
                                           r.population, r.working)]
            + [_format_number(r.share(s)) for s in SECTORS])
    return buf.getvalue()


@dataclass(frozen=True)
class EnergySplit:
    n1: float
    n2: float
    n1_over_n2: float


def energy_sector_split(agg: Aggregates,
                        energy_fraction_of_mining: float = DEFAULT_ENERGY_FRACTION_OF_MINING
                        ) -> EnergySplit:
    """Workers in energy output (a fraction of mining) versus everyone else."""
    _fraction("energy_fraction_of_mining", energy_fraction_of_mining, closed_right=True)
    n2 = agg.sector_employment("mining") * energy_fraction_of_mining
    n1 = agg.working - n2
    return EnergySplit(n1, n2, n1 / n2 if n2 > 0 else math.inf)


@dataclass(frozen=True)
class FoodGroup:
    names: tuple
    count: int
    mean: float
    min: float
    max: float
    population: float


def _food_group(records):
    shares = [r.share("food") for r in records]
    if not records:
        return FoodGroup((), 0, math.nan, math.nan, math.nan, 0.0)
    return FoodGroup(
        names=tuple(r.name for r in records),
        count=len(records),
        mean=math.fsum(shares) / len(shares),
        min=min(shares),
        max=max(shares),
        population=math.fsum(r.population for r in records if r.population is not None),
    )


def food_sector_groups(records, threshold_percent: float = DEFAULT_FOOD_THRESHOLD):
    """Split countries by food-sector employment share (``<`` vs ``>=`` threshold).

    Means are unweighted across countries.  Records with no food share are
    left out of both groups.
    """
    if not 0.0 < threshold_percent <= 100.0:
        raise DomainError(f"threshold_percent must lie in (0, 100], got {threshold_percent!r}",
                          "threshold_percent")
    known = [r for r in records if r.share("food") is not None]
    low = [r for r in known if r.share("food") < threshold_percent]
    high = [r for r in known if r.share("food") >= threshold_percent]
    return _food_group(low), _food_group(high)
