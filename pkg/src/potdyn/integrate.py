"""Fixed-step fourth-order Runge-Kutta integration of scalar flows with events.

The right-hand sides integrated here are continuous but only piecewise
smooth (a kink at the junction value), so no step-size control is attempted:
the kink costs a local order of accuracy in the one step that straddles it
and nothing more.  Events are located by linear interpolation inside the
step in which they occur.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainError

JUNCTION_CROSS = "JunctionCross"
ABSORBED = "Absorbed"
BREAKDOWN = "Breakdown"


@dataclass(frozen=True)
class Event:
    kind: str
    t: float
    direction: int = 0  # +1 crossing upward, -1 downward, 0 not applicable


@dataclass
class Trajectory:
    """Sampled solution ``y(t)`` plus the events met along the way."""

    t: np.ndarray
    y: np.ndarray
    events: list = field(default_factory=list)
    halted: bool = False

    def __len__(self):
        return len(self.t)

    def events_of(self, kind):
        return [e for e in self.events if e.kind == kind]


def rk4_step(f, y, h):
    k1 = f(y)
    k2 = f(y + 0.5 * h * k1)
    k3 = f(y + 0.5 * h * k2)
    k4 = f(y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _crossing_time(t, h, y0, y1, level):
    if y1 == y0:
        return t
    return t + h * (level - y0) / (y1 - y0)


def rk4_integrate(
    f: Callable[[float], float],
    y0: float,
    dt: float,
    n_steps: int,
    *,
    junction: Optional[float] = None,
    lower: Optional[float] = None,
    upper: Optional[float] = None,
    t0: float = 0.0,
) -> Trajectory:
    """Integrate the autonomous flow ``dy/dt = f(y)`` with classical RK4.

    ``junction`` produces a JunctionCross event each time ``y`` passes it.
    Reaching ``lower`` (inclusive) produces an Absorbed event; exceeding
    ``upper`` produces a Breakdown event.  Both halt the integration and
    clamp the final sample to the bound.
    """
    if not (dt > 0.0) or not np.isfinite(dt):
        raise DomainError(f"dt must be positive and finite, got {dt!r}", "dt")
    if int(n_steps) != n_steps or n_steps <= 0:
        raise DomainError(f"n_steps must be a positive integer, got {n_steps!r}", "n_steps")
    n_steps = int(n_steps)

    ts = [t0]
    ys = [float(y0)]
    events = []
    halted = False
    y = float(y0)
    t = t0
    if lower is not None and y <= lower:
        events.append(Event(ABSORBED, t0))
        n_steps, halted = 0, True
    elif upper is not None and y > upper:
        events.append(Event(BREAKDOWN, t0, 1))
        n_steps, halted = 0, True
    for i in range(n_steps):
        y_next = float(rk4_step(f, y, dt))
        t_next = t0 + (i + 1) * dt

        if junction is not None and (y >= junction) != (y_next >= junction):
            tc = _crossing_time(t, dt, y, y_next, junction)
            events.append(Event(JUNCTION_CROSS, tc, 1 if y_next > y else -1))

        if lower is not None and y_next <= lower:
            events.append(Event(ABSORBED, _crossing_time(t, dt, y, y_next, lower)))
            ts.append(t_next)
            ys.append(float(lower))
            halted = True
            break
        if upper is not None and y_next > upper:
            events.append(Event(BREAKDOWN, _crossing_time(t, dt, y, y_next, upper), 1))
            ts.append(t_next)
            ys.append(float(upper))
            halted = True
            break

        ts.append(t_next)
        ys.append(y_next)
        y, t = y_next, t_next

    return Trajectory(np.asarray(ts), np.asarray(ys), events, halted)
