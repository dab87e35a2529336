"""Market price and employment views of the piecewise stock system.

Price is tied to the stock by ``d = c / m``.  A large stock (saturated
consumption, ``m >= m_r``) maps to a low price ``d <= d_r`` and vice versa,
so the lower price branch carries the ``t_minus`` dynamics around the cost
price ``d_s`` and the upper branch the ``t_plus`` dynamics around the
novel-goods price ``d_u``.

The flux is defined as minus the derivative of the price potential:

    lower (d <= d_r):  U = -(d^2 / 2 t_minus) (1 - 2d / 3d_s)
                       dd/dt = (d / t_minus)(1 - d/d_s)
    upper (d >= d_r):  U =  (d^2 / 2 t_plus)(1 - 2d / 3d_u) - r_D
                       dd/dt = -(d / t_plus)(1 - d/d_u)

which makes ``d_s`` a stable minimum and ``d_u`` an unstable maximum.  The
opposite overall sign on the Verhulst right-hand sides would contradict both
of those classifications, so the potential is taken as authoritative.
"""

import enum
import math
from dataclasses import dataclass
from typing import Optional

from . import dynamics
from .dynamics import PiecewiseSystem, PointKind, Regime, StationaryPoint
from .errors import DomainError, UnsupportedRegimeError
from .integrate import Trajectory, rk4_integrate


@dataclass(frozen=True)
class PriceSystem:
    c: float
    d_s: float
    d_u: float
    d_r: float
    t_plus: float
    t_minus: float
    d_max: Optional[float] = None

    @property
    def r_d(self):
        """Continuity constant of the price potential at ``d_r``."""
        return self.d_r ** 2 * (self.t_plus + self.t_minus) / (6.0 * self.t_plus * self.t_minus)

    @property
    def is_inflection(self):
        return math.isclose(self.d_s, self.d_u, rel_tol=dynamics.REGIME_TOL, abs_tol=0.0)


class Phase(str, enum.Enum):
    SATURATED = "Saturated"
    START_UP = "StartUp"


@dataclass(frozen=True)
class EmploymentSystem:
    a: float
    n_s: float
    n_u: float
    n_r: float
    t_plus: float
    t_minus: float

    def as_piecewise(self):
        """The same algebra with employment in place of stock."""
        return PiecewiseSystem(self.n_s / self.t_minus, self.n_u / self.t_plus,
                               self.t_plus, self.t_minus, stock_unit="persons")


def _positive(name, value):
    if not math.isfinite(value) or value <= 0.0:
        raise DomainError(f"{name} must be strictly positive and finite, got {value!r}", name)


def junction_price(d_s, d_u, t_plus, t_minus):
    return (t_plus + t_minus) * d_s * d_u / (d_u * t_plus + d_s * t_minus)


def price_from_amount(c: float, m: float) -> float:
    _positive("c", c)
    if not math.isfinite(m) or m <= 0.0:
        raise DomainError(f"price is undefined at non-positive stock m={m!r}", "m")
    return c / m


def build_price_system(sys: PiecewiseSystem, c: float, d_max: Optional[float] = None) -> PriceSystem:
    _positive("c", c)
    regime = dynamics.classify_regime(sys).tag
    if regime is Regime.NON_STATIONARY:
        raise UnsupportedRegimeError(
            "price landscape requires a Bistable or Inflection system "
            f"(alpha = {dynamics.derive(sys).alpha:.6g} > 1)", "sys")
    d = dynamics.derive(sys)
    d_s, d_u = c / d.m_s, c / d.m_u
    if d_max is not None:
        _positive("d_max", d_max)
        if d_max <= d_u:
            raise DomainError(f"d_max={d_max!r} must exceed d_u={d_u!r}", "d_max")
    d_r = junction_price(d_s, d_u, sys.t_plus, sys.t_minus)
    return PriceSystem(c, d_s, d_u, d_r, sys.t_plus, sys.t_minus, d_max)


def price_system_from_ratios(d_s, d_u, t_plus=1.0, t_minus=1.0, d_max=None, c=1.0):
    """Build the landscape from prices alone; stocks follow from ``m = c/d``."""
    _positive("d_s", d_s)
    _positive("d_u", d_u)
    sys = PiecewiseSystem.from_stocks(c / d_s, c / d_u, t_plus, t_minus)
    return build_price_system(sys, c, d_max)


def _check_price(d):
    if not math.isfinite(d) or d <= 0.0:
        raise DomainError(f"price must be finite and positive, got {d!r}", "d")


def _lower_price_potential(d, p):
    return -(d * d / (2.0 * p.t_minus)) * (1.0 - (2.0 / 3.0) * d / p.d_s)


def _upper_price_potential(d, p):
    return (d * d / (2.0 * p.t_plus)) * (1.0 - (2.0 / 3.0) * d / p.d_u) - p.r_d


def price_potential(d: float, psys: PriceSystem) -> float:
    _check_price(d)
    if d <= psys.d_r:
        return _lower_price_potential(d, psys)
    return _upper_price_potential(d, psys)


def _price_flux(d, p):
    if d <= p.d_r:
        return (d / p.t_minus) * (1.0 - d / p.d_s)
    return -(d / p.t_plus) * (1.0 - d / p.d_u)


@dataclass(frozen=True)
class PriceFlux:
    value: float
    breakdown: bool = False

    def __float__(self):
        return self.value


def price_flux(d: float, psys: PriceSystem) -> PriceFlux:
    """``dd/dt`` at price ``d``; ``breakdown`` is set beyond ``d_max``."""
    _check_price(d)
    return PriceFlux(_price_flux(d, psys), psys.d_max is not None and d > psys.d_max)


def price_stationary_points(psys: PriceSystem) -> list:
    # D -> 0+ is an open boundary (no market); reported symbolically at 0
    points = [StationaryPoint(0.0, PointKind.UNSTABLE_MAXIMUM, boundary=True)]
    if psys.is_inflection:
        points.append(StationaryPoint(psys.d_s, PointKind.INFLECTION_POINT))
    else:
        points.append(StationaryPoint(psys.d_s, PointKind.STABLE_MINIMUM))
        points.append(StationaryPoint(psys.d_u, PointKind.UNSTABLE_MAXIMUM))
    if psys.d_max is not None:
        points.append(StationaryPoint(psys.d_max, PointKind.STABLE_MINIMUM, boundary=True))
    return sorted(points, key=lambda p: p.location)


def integrate_price(psys: PriceSystem, d0: float, dt: float, n_steps: int) -> Trajectory:
    """RK4 price path; crossing ``d_max`` halts with a Breakdown event."""
    _check_price(d0)
    return rk4_integrate(lambda d: _price_flux(d, psys), d0, dt, n_steps,
                         junction=psys.d_r, upper=psys.d_max)


# -- calibration and employment ---------------------------------------------

def calibrate(d_s: float, n_s: float, p_s_minus: float, t_minus: float):
    """Return ``(c, a)`` from the cost price and saturated employment."""
    for name, value in (("d_s", d_s), ("n_s", n_s), ("p_s_minus", p_s_minus), ("t_minus", t_minus)):
        _positive(name, value)
    return d_s * p_s_minus * t_minus, p_s_minus / n_s


def employment_from_output(p: float, a: float) -> float:
    _positive("a", a)
    if not math.isfinite(p) or p < 0.0:
        raise DomainError(f"output rate must be non-negative, got {p!r}", "p")
    return p / a


def build_employment_system(sys: PiecewiseSystem, a: float) -> EmploymentSystem:
    _positive("a", a)
    n_s = sys.p_plus / a
    n_u = sys.p_minus / a
    n_r = dynamics.junction(n_s, n_u, sys.t_plus, sys.t_minus)
    return EmploymentSystem(a, n_s, n_u, n_r, sys.t_plus, sys.t_minus)


def employment_flux(n: float, esys: EmploymentSystem, branch: Phase) -> float:
    """``dN/dt`` on the named goods-lifecycle phase."""
    if not math.isfinite(n) or n < 0.0:
        raise DomainError(f"employment must be non-negative, got {n!r}", "n")
    sys = esys.as_piecewise()
    if Phase(branch) is Phase.SATURATED:
        return dynamics.upper_flux(n, sys)
    return dynamics.lower_flux(n, sys)


def employment_flux_switched(n: float, esys: EmploymentSystem) -> float:
    """Phase chosen by the junction ``n_r``, exactly as for the stock."""
    if not math.isfinite(n) or n < 0.0:
        raise DomainError(f"employment must be non-negative, got {n!r}", "n")
    return dynamics.flux(n, esys.as_piecewise())
