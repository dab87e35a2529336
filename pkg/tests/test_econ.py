import io
import math
import warnings

import pytest
from hypothesis import given
from hypothesis import strategies as st

from potdyn import econ
from potdyn.data import TABLE1, TABLE1_SUMMARY, data_path
from potdyn.errors import DomainError, TableParseError, TableWarning

HEADER = ",".join(econ.TABLE_COLUMNS)


@pytest.fixture(scope="module")
def table():
    return econ.load_table(data_path(TABLE1))


def lines(*rows):
    return io.StringIO("\n".join((HEADER,) + rows) + "\n")


# -- markup, wage, money/energy ---------------------------------------------

def test_markup_from_ratio():
    e = econ.TwoSectorEconomy.from_ratio(45e12, 300, 5e12)
    assert econ.markup_ratio(e) == pytest.approx(37.5, rel=1e-15)


def test_markup_independent_of_employment_scale():
    a = econ.TwoSectorEconomy(45e12, 300.0, 1.0, 5e12)
    b = econ.TwoSectorEconomy(45e12, 3.15e9 * 300 / 301, 3.15e9 / 301, 5e12)
    assert econ.markup_ratio(a) == pytest.approx(econ.markup_ratio(b), rel=1e-12)


def test_markup_equals_output_ratio():
    e = econ.TwoSectorEconomy(45e12, 600.0, 2.0, 5e12)
    assert econ.markup_ratio(e) == pytest.approx(e.marked_up_output / e.cost_price_output)


@pytest.mark.parametrize("kw", [
    dict(gdp=45e12, n1=300, n2=1, sector2_revenue=45e12),
    dict(gdp=45e12, n1=0, n2=1, sector2_revenue=5e12),
    dict(gdp=-1, n1=300, n2=1, sector2_revenue=5e12),
])
def test_two_sector_validation(kw):
    with pytest.raises(DomainError):
        econ.TwoSectorEconomy(**kw)


def test_energy_revenue_arithmetic():
    unit = econ.price_per_gj(55.0, 5.5)
    assert unit == 10.0
    assert econ.energy_revenue(4.7e11, unit) == pytest.approx(4.7e12)


def test_mean_wage():
    assert econ.mean_wage(45e12, 6.3e9, 0.5, 2100) == pytest.approx(45e12 / (3.15e9 * 2100))
    with pytest.raises(DomainError):
        econ.mean_wage(45e12, 6.3e9, 1.5, 2100)


def test_money_energy_factor():
    f = econ.money_energy_factor(35e12, 4.7e20)
    assert f.mj_per_currency == pytest.approx(13.428571428571429)
    assert f.currency_per_gj == pytest.approx(74.46808510638297)
    assert f.mj_per_currency * f.currency_per_gj == pytest.approx(1e3)


# -- three sectors ----------------------------------------------------------

def test_three_sector_worked_case():
    r = econ.three_sector_report(econ.ThreeSectorEconomy(45e12, 0.10, 0.001, 100.0))
    assert r.vacant_share == pytest.approx(0.099)
    assert r.cost_labor_share == pytest.approx(0.001)
    assert r.vacant_gdp == pytest.approx(0.099 * 45e12)
    assert r.expensive_energy_employment_share == 0.10
    assert r.green_share == r.vacant_share
    assert r.workweek_reduction_days == pytest.approx(0.495)
    assert r.retirement_reduction_years == pytest.approx(3.96)


def test_markup_one_leaves_no_vacancy():
    r = econ.three_sector_report(econ.ThreeSectorEconomy(1e12, 0.2, 0.2, 1.0))
    assert r.vacant_share == 0.0 and r.workweek_reduction_days == 0.0


@given(st.floats(min_value=0.001, max_value=0.5), st.floats(min_value=1.0, max_value=1e4))
def test_vacant_share_bounded(share, markup):
    r = econ.three_sector_report(econ.ThreeSectorEconomy(1e12, share, 0.001, markup))
    assert 0.0 <= r.vacant_share < share
    assert r.vacant_share + r.cost_labor_share == pytest.approx(share)


@pytest.mark.parametrize("kw", [dict(markup=0.5), dict(energy_revenue_share=1.0),
                                dict(energy_employment_share=0.0), dict(gdp=0.0)])
def test_three_sector_validation(kw):
    base = dict(gdp=1e12, energy_revenue_share=0.1, energy_employment_share=0.001, markup=100)
    base.update(kw)
    with pytest.raises(DomainError):
        econ.ThreeSectorEconomy(**base)


# -- country table ----------------------------------------------------------

def test_bundled_totals(table):
    records, agg = table
    assert agg.n_records == 28 == len(records)
    assert agg.energy_consumption == 366.2
    assert agg.energy_production == 385.4


def test_totals_match_transcribed_summary(table):
    _, agg = table
    with open(data_path(TABLE1_SUMMARY), newline="") as fh:
        summary = econ.parse_records(fh)
    row = {r.name: r for r in summary}["28 countries"]
    assert agg.energy_consumption == row.energy_consumption
    assert agg.population == row.population
    assert agg.working == row.working
    for s in econ.SECTORS:
        assert agg.sector_shares[s] == pytest.approx(row.share(s), abs=0.05)


def test_world_row_keeps_missing_cells_absent():
    with open(data_path(TABLE1_SUMMARY), newline="") as fh:
        world = {r.name: r for r in econ.parse_records(fh)}["World"]
    assert world.working is None and world.share("food") is None
    assert world.energy_consumption == 462.8


def test_weighted_mining_share(table):
    assert table[1].sector_shares["mining"] == pytest.approx(0.684, abs=5e-4)


def test_energy_sector_split(table):
    split = econ.energy_sector_split(table[1], 0.5)
    assert 270 <= split.n1_over_n2 <= 310
    assert split.n1 + split.n2 == pytest.approx(table[1].working)
    full = econ.energy_sector_split(table[1], 1.0)
    assert full.n1_over_n2 < split.n1_over_n2
    with pytest.raises(DomainError):
        econ.energy_sector_split(table[1], 0.0)


def test_food_groups_default_threshold(table):
    low, high = econ.food_sector_groups(table[0])
    assert (low.count, high.count) == (17, 11)
    assert low.mean == pytest.approx(4.4, abs=1e-9)
    assert (low.min, low.max) == (1.1, 10.2)
    assert high.min == 14.9


def test_food_groups_at_15_move_mexico(table):
    low, high = econ.food_sector_groups(table[0], 15)
    assert "Mexico" in low.names
    assert (low.count, high.count) == (18, 10)


def test_food_threshold_bounds(table):
    low, high = econ.food_sector_groups(table[0], 100)
    assert high.count == 0 and low.count == 28
    for bad in (0, -5, 100.5):
        with pytest.raises(DomainError):
            econ.food_sector_groups(table[0], bad)


def test_roundtrip_bit_exact():
    text = data_path(TABLE1).read_text(encoding="utf-8")
    records, _ = econ.ingest_table(io.StringIO(text))
    assert econ.serialize_records(records) == text
    again, _ = econ.ingest_table(io.StringIO(econ.serialize_records(records)))
    assert again == records


def test_parse_error_names_row():
    with pytest.raises(TableParseError) as exc:
        econ.parse_records(lines("A,1,1,10,5,x,0,0,0,0,0,0,100"))
    assert exc.value.row == 1
    assert "row 1" in str(exc.value) and "food_pct" in str(exc.value)


@pytest.mark.parametrize("row", [
    "A,1,1,10,5,50,50",                       # short row
    "A,-1,1,10,5,50,50,0,0,0,0,0,0",          # negative
    "A,1,1,10,20,50,50,0,0,0,0,0,0",          # working > population
    "A,1,1,10,5,150,0,0,0,0,0,0,0",           # share over 100
    ",1,1,10,5,50,50,0,0,0,0,0,0",            # empty name
    "A,1,inf,10,5,50,50,0,0,0,0,0,0",         # non-finite
])
def test_parse_rejects(row):
    with pytest.raises(TableParseError):
        econ.parse_records(lines(row))


def test_header_mismatch():
    with pytest.raises(TableParseError):
        econ.parse_records(io.StringIO("name,foo\nA,1\n"))
    with pytest.raises(TableParseError):
        econ.parse_records(io.StringIO(""))


def test_share_sum_warns_but_accepts():
    with pytest.warns(TableWarning):
        recs = econ.parse_records(lines("A,1,1,10,5,50,40,0,0,0,0,0,0"))
    assert len(recs) == 1


def test_bundled_table_parses_without_warnings():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        econ.load_table(data_path(TABLE1))


def test_env_override(tmp_path, monkeypatch):
    (tmp_path / TABLE1).write_text(HEADER + "\nA,2.5,1,10,5,50,50,0,0,0,0,0,0\n")
    monkeypatch.setenv("POTDYN_DATA_DIR", str(tmp_path))
    _, agg = econ.load_table(data_path(TABLE1))
    assert agg.energy_consumption == 2.5


@given(st.lists(st.tuples(st.floats(0, 1e3), st.integers(1, 10 ** 6)), min_size=1, max_size=10))
def test_serialize_roundtrip_property(rows):
    text = HEADER + "\n" + "\n".join(
        f"C{i},{e!r},{e!r},{p},{p},100.0,0,0,0,0,0,0,0" for i, (e, p) in enumerate(rows)) + "\n"
    records = econ.parse_records(io.StringIO(text))
    assert econ.parse_records(io.StringIO(econ.serialize_records(records))) == records


def test_food_threshold_below_all(table):
    low, high = econ.food_sector_groups(table[0], 0.5)
    assert low.count == 0 and high.count == 28


@given(st.floats(1e9, 1e15), st.floats(0.01, 0.9), st.floats(1.0, 1e4))
def test_gdp_closure(gdp, frac, ratio):
    e = econ.TwoSectorEconomy.from_ratio(gdp, ratio, frac * gdp)
    g = econ.markup_ratio(e)
    g_s = e.cost_price_output
    assert e.n1 * g_s + e.n2 * g * g_s == pytest.approx(gdp, rel=1e-12)


@given(st.floats(1e-6, 1e6))
def test_markup_currency_homogeneous(k):
    a = econ.TwoSectorEconomy.from_ratio(45e12, 300, 5e12)
    b = econ.TwoSectorEconomy.from_ratio(45e12 * k, 300, 5e12 * k)
    assert econ.markup_ratio(b) == pytest.approx(econ.markup_ratio(a), rel=1e-12)
