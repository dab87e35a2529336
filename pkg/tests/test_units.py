from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from potdyn import units
from potdyn.errors import DomainError, UnknownUnitError


def test_btu_per_year_exact():
    assert units.convert(1e5, "btu_per_year", "W") == pytest.approx(3.3431, abs=5e-5)


def test_btu_per_year_approximate():
    assert units.convert(1e5, "btu_per_year", "W", units.APPROXIMATE) == pytest.approx(3.3)


def test_barrel_per_day_both_sets():
    assert units.convert(1, "barrel_per_day", "kW") == pytest.approx(63.657407407, rel=1e-10)
    assert units.convert(1, "barrel_per_day", "kW", units.APPROXIMATE) == 60.0


def test_quad_per_year_to_tw():
    # 366.2 quad/yr of table consumption is about 12 TW
    assert units.convert(366.2, "quad_per_year", "TW") == pytest.approx(12.24, abs=0.01)


def test_kwh_per_year():
    assert units.convert(1, "kWh_per_year", "W") == pytest.approx(0.11408, abs=1e-5)
    assert units.convert(1, "kWh_per_year", "W", units.APPROXIMATE) == pytest.approx(0.1)


def test_factor_is_exact_rational():
    f = units.factor("barrel_per_day", "W")
    assert f == Fraction(5_500_000_000, 86_400)


def test_identity_returns_value_unchanged():
    x = 0.1 + 0.2
    assert units.convert(x, "TW", "TW") is x


def test_unknown_unit_lists_registry():
    with pytest.raises(UnknownUnitError) as exc:
        units.convert(1, "furlong", "W")
    assert "barrel_per_day" in str(exc.value)


def test_approximate_only_unit_not_in_exact():
    with pytest.raises(UnknownUnitError):
        units.lookup("g_oil", units.EXACT)
    assert units.convert(1, "g_oil", "kJ", units.APPROXIMATE) == 50.0


def test_dimension_mismatch():
    with pytest.raises(UnknownUnitError):
        units.convert(1, "J", "W")


def test_unknown_constant_set():
    with pytest.raises(DomainError):
        units.convert(1, "J", "kJ", "rough")


def test_every_unit_has_provenance():
    for reg in units.REGISTRY.values():
        for u in reg.values():
            assert u.provenance in ("SI", units.EXACT, units.APPROXIMATE)
            assert u.citation


names = {c: sorted(units.registry(c)) for c in units.CONSTANT_SETS}
pairs = st.sampled_from(units.CONSTANT_SETS).flatmap(
    lambda c: st.tuples(st.just(c), st.sampled_from(names[c]), st.sampled_from(names[c])))
values = st.floats(min_value=-1e12, max_value=1e12, allow_nan=False)


@given(pairs, values)
def test_round_trip(pair, x):
    c, a, b = pair
    if units.lookup(a, c).dimension != units.lookup(b, c).dimension:
        return
    back = units.convert(units.convert(x, a, b, c), b, a, c)
    assert back == pytest.approx(x, rel=1e-15, abs=1e-300)


@given(pairs, values, values)
def test_linearity(pair, x, y):
    c, a, b = pair
    if units.lookup(a, c).dimension != units.lookup(b, c).dimension:
        return
    f = units.convert
    assert f(x + y, a, b, c) == pytest.approx(f(x, a, b, c) + f(y, a, b, c), rel=1e-9, abs=1e-6 * (abs(f(x, a, b, c)) + abs(f(y, a, b, c)) + 1e-300))
