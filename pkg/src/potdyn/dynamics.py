"""Piecewise-linear production/consumption dynamics and its Lyapunov potential.

A stock ``m`` (biomass, goods in a market, ...) evolves as

    dm/dt = (m_s - m) / t_minus      for m >= m_r   (saturated production)
    dm/dt = (m - m_u) / t_plus       for m <  m_r   (start-up / recovery)

with ``m_s = p_plus * t_minus`` and ``m_u = p_minus * t_plus``.  The junction
``m_r`` is where both right-hand sides agree, which makes the flux continuous
and the potential ``U`` (``dm/dt = -dU/dm``) continuously differentiable.
"""

import enum
import math
import numbers
import warnings
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError, StepSizeWarning
from .integrate import ABSORBED, JUNCTION_CROSS, Event, Trajectory, rk4_integrate

REGIME_TOL = 1e-9


class Regime(str, enum.Enum):
    BISTABLE = "Bistable"
    INFLECTION = "Inflection"
    NON_STATIONARY = "NonStationary"


class PointKind(str, enum.Enum):
    STABLE_MINIMUM = "StableMinimum"
    UNSTABLE_MAXIMUM = "UnstableMaximum"
    INFLECTION_POINT = "InflectionPoint"
    ABSORBING_BOUNDARY = "AbsorbingBoundary"


def _check_positive(name, value):
    if not isinstance(value, numbers.Real) or isinstance(value, bool):
        raise DomainError(f"{name} must be a real number, got {value!r}", name)
    if not math.isfinite(value) or value <= 0.0:
        raise DomainError(f"{name} must be strictly positive and finite, got {value!r}", name)


@dataclass(frozen=True)
class PiecewiseSystem:
    """The four fundamental parameters of the switched linear system.

    Rates are in stock units per time unit, turnover times in time units.
    ``stock_unit``/``time_unit`` are carried as labels only.
    """

    p_plus: float
    p_minus: float
    t_plus: float
    t_minus: float
    stock_unit: str = ""
    time_unit: str = "year"

    def __post_init__(self):
        for name in ("p_plus", "p_minus", "t_plus", "t_minus"):
            _check_positive(name, getattr(self, name))
            object.__setattr__(self, name, float(getattr(self, name)))

    def scaled(self, factor):
        """Return the system with both rates multiplied by ``factor``."""
        return PiecewiseSystem(
            self.p_plus * factor, self.p_minus * factor, self.t_plus, self.t_minus,
            self.stock_unit, self.time_unit,
        )

    @classmethod
    def from_stocks(cls, m_s, m_u, t_plus, t_minus, **labels):
        """Back out the rates from the two stationary stocks."""
        _check_positive("m_s", m_s)
        _check_positive("m_u", m_u)
        return cls(m_s / t_minus, m_u / t_plus, t_plus, t_minus, **labels)


@dataclass(frozen=True)
class DerivedQuantities:
    m_s: float
    m_u: float
    m_r: float
    alpha: float
    r: float


@dataclass(frozen=True)
class RegimeClass:
    tag: Regime
    alpha: float


@dataclass(frozen=True)
class StationaryPoint:
    location: float
    kind: PointKind
    boundary: bool = False


def junction(m_s, m_u, t_plus, t_minus):
    return (m_s * t_plus + m_u * t_minus) / (t_plus + t_minus)


def derive(sys: PiecewiseSystem) -> DerivedQuantities:
    m_s = sys.p_plus * sys.t_minus
    m_u = sys.p_minus * sys.t_plus
    m_r = junction(m_s, m_u, sys.t_plus, sys.t_minus)
    r = m_r * m_r * (sys.t_plus + sys.t_minus) / (2.0 * sys.t_plus * sys.t_minus)
    return DerivedQuantities(m_s=m_s, m_u=m_u, m_r=m_r, alpha=m_u / m_s, r=r)


def _check_stock(m, name="m"):
    if not math.isfinite(m) or m < 0.0:
        raise DomainError(f"{name} must be a finite non-negative stock, got {m!r}", name)


def upper_flux(m, sys):
    """Saturated-production branch ``(m_s - m)/t_minus``, without switching."""
    return (sys.p_plus * sys.t_minus - m) / sys.t_minus


def lower_flux(m, sys):
    """Start-up branch ``(m - m_u)/t_plus``, without switching."""
    return (m - sys.p_minus * sys.t_plus) / sys.t_plus


def _flux(m, sys, m_r):
    return upper_flux(m, sys) if m >= m_r else lower_flux(m, sys)


def flux(m: float, sys: PiecewiseSystem) -> float:
    """Rate of change ``dm/dt`` of the switched system at stock ``m``."""
    _check_stock(m)
    return _flux(m, sys, derive(sys).m_r)


def production_rate(m, sys):
    """Stock-dependent production on each branch.

    Saturated: ``p_plus * (2 - m/m_s)``, which keeps consumption fixed at
    ``p_plus`` and reproduces the upper-branch flux.  Start-up: ``m/t_plus``.
    """
    _check_stock(m)
    d = derive(sys)
    if m >= d.m_r:
        return sys.p_plus * (2.0 - m / d.m_s)
    return m / sys.t_plus


def _upper_potential(m, d, sys):
    return -(m * d.m_s / sys.t_minus) * (1.0 - m / (2.0 * d.m_s)) + d.r


def _lower_potential(m, d, sys):
    return (m * d.m_u / sys.t_plus) * (1.0 - m / (2.0 * d.m_u))


def potential(m: float, sys: PiecewiseSystem) -> float:
    """Lyapunov potential ``U(m)`` with ``U(0) = 0`` and ``-dU/dm = flux``."""
    _check_stock(m)
    d = derive(sys)
    if m >= d.m_r:
        return _upper_potential(m, d, sys)
    return _lower_potential(m, d, sys)


def classify_regime(sys: PiecewiseSystem, tol: float = REGIME_TOL) -> RegimeClass:
    alpha = derive(sys).alpha
    if abs(alpha - 1.0) <= tol:
        tag = Regime.INFLECTION
    elif alpha < 1.0:
        tag = Regime.BISTABLE
    else:
        tag = Regime.NON_STATIONARY
    return RegimeClass(tag, alpha)


def stationary_points(sys: PiecewiseSystem, tol: float = REGIME_TOL) -> list:
    d = derive(sys)
    tag = classify_regime(sys, tol).tag
    points = [StationaryPoint(0.0, PointKind.ABSORBING_BOUNDARY, boundary=True)]
    if tag is Regime.BISTABLE:
        points.append(StationaryPoint(d.m_u, PointKind.UNSTABLE_MAXIMUM))
        points.append(StationaryPoint(d.m_s, PointKind.STABLE_MINIMUM))
    elif tag is Regime.INFLECTION:
        points.append(StationaryPoint(d.m_s, PointKind.INFLECTION_POINT))
    return sorted(points, key=lambda p: p.location)


# -- analytic solution ------------------------------------------------------

def _start_on_upper(m, sys, m_r):
    if m != m_r:
        return m > m_r
    return upper_flux(m, sys) >= 0.0


def closed_form_path(sys: PiecewiseSystem, m0: float, t: float):
    """Exact solution of the switched system from ``m0`` over ``[0, t]``.

    Returns ``(m(t), events)`` where events are the junction crossings and a
    possible absorption at zero, with analytically computed times.  Each
    branch is solved in closed form and restarted at a crossing.
    """
    _check_stock(m0, "m0")
    if not math.isfinite(t) or t < 0.0:
        raise DomainError(f"t must be finite and non-negative, got {t!r}", "t")
    d = derive(sys)
    events = []
    m, elapsed = float(m0), 0.0
    while True:
        remaining = t - elapsed
        if _start_on_upper(m, sys, d.m_r):
            # relaxation toward m_s; leaves the branch only if m_s < m_r
            gap = m - d.m_s
            t_cross = math.inf
            if d.m_s < d.m_r and m >= d.m_r:
                t_cross = sys.t_minus * math.log(gap / (d.m_r - d.m_s))
            if t_cross >= remaining:
                return d.m_s + gap * math.exp(-remaining / sys.t_minus), events
            elapsed += t_cross
            events.append(Event(JUNCTION_CROSS, elapsed, -1))
            m = math.nextafter(d.m_r, -math.inf)
        else:
            # runaway away from m_u: upward to the junction or down to zero
            gap = m - d.m_u
            if gap == 0.0:
                return m, events
            if gap > 0.0:
                t_exit = sys.t_plus * math.log((d.m_r - d.m_u) / gap)
                target, kind, direction = d.m_r, JUNCTION_CROSS, 1
            else:
                t_exit = sys.t_plus * math.log(d.m_u / (d.m_u - m))
                target, kind, direction = 0.0, ABSORBED, 0
            if t_exit >= remaining:
                return d.m_u + gap * math.exp(remaining / sys.t_plus), events
            elapsed += t_exit
            events.append(Event(kind, elapsed, direction))
            if kind == ABSORBED:
                return 0.0, events
            m = target


def closed_form_state(sys: PiecewiseSystem, m0: float, t: float) -> float:
    return closed_form_path(sys, m0, t)[0]


def absorption_time(sys: PiecewiseSystem, m0: float) -> Optional[float]:
    """Time for a start-up-branch state below ``m_u`` to collapse to zero."""
    d = derive(sys)
    _check_stock(m0, "m0")
    if m0 >= min(d.m_u, d.m_r):
        return None
    return sys.t_plus * math.log(d.m_u / (d.m_u - m0))


# -- numerical solution -----------------------------------------------------

def integrate(sys: PiecewiseSystem, m0: float, dt: float, n_steps: int) -> Trajectory:
    """RK4 trajectory from ``m0`` with junction-crossing and absorption events."""
    _check_stock(m0, "m0")
    if not (dt > 0.0):
        raise DomainError(f"dt must be positive, got {dt!r}", "dt")
    limit = min(sys.t_plus, sys.t_minus) / 50.0
    if dt > limit:
        warnings.warn(
            f"dt={dt:g} exceeds min(t_plus, t_minus)/50 = {limit:g}",
            StepSizeWarning, stacklevel=2,
        )
    m_r = derive(sys).m_r
    # the stage evaluations may probe slightly negative stocks near absorption
    return rk4_integrate(
        lambda m: _flux(m, sys, m_r), m0, dt, n_steps, junction=m_r, lower=0.0,
    )
