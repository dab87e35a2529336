"""Potential-landscape dynamics for ecosystems, markets and energy budgets."""

from .dynamics import (PiecewiseSystem, Regime, PointKind, derive, flux, potential,
                       classify_regime, stationary_points, integrate, closed_form_state)
from .errors import (DomainError, UnsupportedRegimeError, UnknownUnitError,
                     UnknownPresetError, TableParseError, TableWarning, StepSizeWarning)
from .price import (PriceSystem, build_price_system, price_potential, price_flux,
                    price_stationary_points, integrate_price)
from .scenarios import preset, emit_curve

__version__ = "0.1.0"
