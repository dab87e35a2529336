import math
from dataclasses import replace
from fractions import Fraction

import pytest

from potdyn import energy
from potdyn.errors import DomainError


def test_thermohaline():
    est = energy.thermohaline_power()
    assert est.power == pytest.approx(1.386e15, rel=1e-12)
    assert est.upwelling_velocity == pytest.approx(3e7 / 3.6e14)
    # the printed upwelling speed is not the ratio of flux to area
    assert not math.isclose(est.upwelling_velocity, est.printed_velocity, rel_tol=0.1)


def test_thermohaline_linear_in_flux():
    a = energy.thermohaline_power(energy.ThermohalineInput(sink_flux=1e7)).power
    assert energy.thermohaline_power().power == pytest.approx(3 * a)


def test_wind_upwelling():
    est = energy.wind_upwelling_power()
    assert est.force_density == pytest.approx(0.588)
    assert est.power == pytest.approx(7.056e14, rel=1e-12)
    assert est.w_from_precip == pytest.approx(1.7e-3 / 0.7)


def test_wind_dissipation_discrepancy_flagged():
    est = energy.wind_dissipation_power()
    assert est.literal == pytest.approx(7.35e12, rel=1e-12)
    assert est.printed_variant == pytest.approx(2.45e14, rel=1e-12)
    assert set(est.flags) == {"literal_mismatch_claim", "printed_variant_mismatch_claim",
                              "formulas_disagree"}


def test_dissipation_flags_clear_when_consistent():
    # nu = l makes both forms agree; scaling u reaches the claim
    inp = replace(energy.WindCirculationInput(), eddy_viscosity=100.0, wind_speed=math.sqrt(200.0))
    est = energy.wind_dissipation_power(inp)
    assert est.flags == ()


def test_hydro_and_osmotic():
    assert energy.hydropower() == pytest.approx(2.94e12, rel=1e-12)
    assert energy.economic_hydropower() == pytest.approx(0.2 * 2.94e12)
    osm = energy.osmotic_power()
    assert osm.head == 280.0
    assert osm.power == pytest.approx(4.116e12, rel=1e-12)


def test_negative_inputs_rejected():
    with pytest.raises(DomainError):
        energy.HydroOsmoticInput(runoff=-1.0)
    with pytest.raises(DomainError):
        energy.ThermohalineInput(upwelling_area=0.0)


def test_biotic_disturbance_exact():
    assert energy.biotic_disturbance(100, Fraction(2, 3), Fraction(3, 5)) == 40.0
    assert energy.biotic_disturbance(100, Fraction(2, 3), 0.6) == 40.0
    with pytest.raises(DomainError):
        energy.biotic_disturbance(100, 1.5, 0.5)


def test_efficiency():
    assert energy.efficiency(3.0, 10.0) == 0.3
    with pytest.raises(DomainError):
        energy.efficiency(11.0, 10.0)


def test_france_nuclear():
    rep = energy.nuclear_usable(energy.mix_from_tables("France"))
    assert rep.route == "electric"
    assert rep.usable_total == pytest.approx(282.9e9, rel=1e-12)
    assert rep.usable_share == pytest.approx(0.1516, abs=1e-4)
    assert rep.waste_heat == pytest.approx(rep.nuclear_total - rep.usable_nuclear)


def test_efficiency_route_when_no_electric_data():
    mix = energy.EnergyMix(15e12, {"oil": 0.35, "coal": 0.25, "gas": 0.21, "nuclear": 0.07,
                                   "hydro": 0.06, "other": 0.06})
    rep = energy.nuclear_usable(mix)
    assert rep.route == "efficiency"
    assert rep.usable_nuclear == pytest.approx(0.3 * 0.07 * 15e12)
    assert rep.share_of_total == pytest.approx(0.021)


def test_mix_share_sum_checked():
    with pytest.raises(DomainError):
        energy.EnergyMix(1e12, {"oil": 0.5, "coal": 0.2})


def test_unknown_region():
    with pytest.raises(DomainError):
        energy.mix_from_tables("Atlantis")


def test_reference_table_lookup_and_missing_cells():
    a1 = energy.budget_table()["A1"]
    assert a1.get("thermohaline_circulation", "total_earth").watts() == 1e15
    assert a1.get("evaporation", "civilization").watts() is None
    with pytest.raises(KeyError):
        a1.get("unicorns", "land")


def test_estimator_checks():
    checks = {c.name: c for c in energy.estimator_checks()}
    for name in ("thermohaline", "wind_upwelling", "hydropower", "osmotic", "biotic_disturbance"):
        assert checks[name].within_factor_2, name
        assert not checks[name].expected_discrepancy
    for name in ("wind_dissipation_literal", "wind_dissipation_printed"):
        assert checks[name].expected_discrepancy and not checks[name].within_factor_2
