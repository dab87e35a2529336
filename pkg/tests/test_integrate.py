import math

import numpy as np
import pytest

from potdyn.errors import DomainError
from potdyn.integrate import ABSORBED, BREAKDOWN, JUNCTION_CROSS, rk4_integrate, rk4_step


def test_single_step_matches_taylor_to_fifth_order():
    h = 0.1
    y = rk4_step(lambda y: -y, 1.0, h)
    assert abs(y - math.exp(-h)) < h ** 5 / 100


def test_global_error_is_fourth_order():
    errs = []
    for n in (50, 100, 200):
        tr = rk4_integrate(lambda y: -2.0 * y, 1.0, 1.0 / n, n)
        errs.append(abs(tr.y[-1] - math.exp(-2.0)))
    assert errs[0] / errs[1] > 14 and errs[1] / errs[2] > 14


def test_times_are_exact_multiples():
    tr = rk4_integrate(lambda y: 0.0, 1.0, 0.1, 30)
    assert len(tr) == 31
    assert tr.t[-1] == pytest.approx(3.0, abs=1e-15)
    assert not tr.halted


def test_junction_crossing_direction_and_time():
    # y = 1 - t crosses 0.5 at t = 0.5
    tr = rk4_integrate(lambda y: -1.0, 1.0, 0.1, 10, junction=0.5)
    (ev,) = tr.events_of(JUNCTION_CROSS)
    assert ev.direction == -1
    assert ev.t == pytest.approx(0.5, abs=1e-12)


def test_lower_boundary_absorbs_and_halts():
    tr = rk4_integrate(lambda y: -1.0, 1.0, 0.3, 10, lower=0.0)
    assert tr.halted
    (ev,) = tr.events_of(ABSORBED)
    assert ev.t == pytest.approx(1.0, abs=1e-12)
    assert tr.y[-1] == 0.0
    assert len(tr) == 5


def test_upper_boundary_breakdown():
    tr = rk4_integrate(lambda y: 1.0, 0.0, 0.25, 100, upper=2.0)
    assert tr.halted
    assert tr.events_of(BREAKDOWN)[0].t == pytest.approx(2.0)
    assert tr.y[-1] == 2.0


def test_start_on_lower_boundary_is_absorbed_immediately():
    tr = rk4_integrate(lambda y: -1.0, 0.0, 0.1, 5, lower=0.0)
    assert tr.halted and len(tr) == 1
    assert tr.events_of(ABSORBED)[0].t == 0.0


@pytest.mark.parametrize("dt,n", [(0.0, 5), (-1.0, 5), (0.1, 0), (0.1, -3), (math.nan, 2)])
def test_bad_step_arguments(dt, n):
    with pytest.raises(DomainError):
        rk4_integrate(lambda y: y, 1.0, dt, n)


def test_output_arrays_are_numpy():
    tr = rk4_integrate(lambda y: -y, 1.0, 0.1, 3)
    assert isinstance(tr.t, np.ndarray) and isinstance(tr.y, np.ndarray)
