"""Jump relations across the stationary heating discontinuity at x = 0.

Only the weak branch is implemented: it reduces to the identity as the heat
input vanishes, on both the subsonic and the supersonic side.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Optional

from .errors import (
    BackflowUnsupported,
    BranchUnavailable,
    InputError,
    MaxHeatExceeded,
    NonPositiveMach,
    SonicUpstream,
)
from .gas import IdealGas, PrimitiveState, enthalpy, mach

SONIC_TOL = 1e-9
# relative slack on I**2 below zero that is still treated as exact choking
CHOKE_CLAMP = 1e-12
EPS = sys.float_info.epsilon


@dataclass(frozen=True)
class HeatingContext:
    """Ratio of specific heats and the dimensionless heating parameter ``k``."""

    gamma: float
    k: float

    def __post_init__(self):
        IdealGas(self.gamma)
        if not (self.k > 0.0 and math.isfinite(self.k)):
            raise InputError(f"heating parameter k must be positive and finite, got {self.k!r}")

    @property
    def gas(self) -> IdealGas:
        return IdealGas(self.gamma)

    @property
    def choke_product(self) -> float:
        """``k (gamma**2 - 1)``; the supersonic root exists only below 1."""
        return self.k * (self.gamma**2 - 1.0)


@dataclass(frozen=True)
class HeatJump:
    upstream: PrimitiveState
    downstream: PrimitiveState
    m_minus: float
    m_plus: float
    i_value: float


def k_max(m_minus: float, gas: IdealGas) -> float:
    """Largest admissible heating parameter for upstream Mach ``m_minus``."""
    if not m_minus > 0.0:
        raise NonPositiveMach(f"upstream Mach must be positive, got {m_minus!r}")
    g = gas.gamma
    m2 = m_minus * m_minus
    return (1.0 - m2) ** 2 / (2.0 * (g + 1.0) * m2 * (1.0 + 0.5 * (g - 1.0) * m2))


def m_star(ctx: HeatingContext) -> float:
    """Subsonic upstream Mach at which heating by ``k`` chokes the flow."""
    g, k = ctx.gamma, ctx.k
    # rationalised form of the smaller root; free of the 0/0 at k(g^2-1) = 1
    return 1.0 / math.sqrt(k * (g + 1.0) + 1.0 + (g + 1.0) * math.sqrt(k * (k + 1.0)))


def m_star_star(ctx: HeatingContext) -> Optional[float]:
    """Supersonic upstream Mach at which heating by ``k`` chokes the flow.

    Returns None when ``k (gamma**2 - 1) >= 1``: every supersonic stream then
    chokes, and only subsonic upstream states are admissible.
    """
    d = 1.0 - ctx.choke_product
    if d <= 0.0:
        return None
    ms = m_star(ctx)
    return 1.0 / (ms * math.sqrt(d))


def i_squared(m: float, ctx: HeatingContext) -> float:
    """``I**2`` written as ``(1/M^2 - 1)^2 - 2(g+1)(1/M^2 + (g-1)/2) k``."""
    g = ctx.gamma
    w = 1.0 / (m * m)
    return (w - 1.0) ** 2 - 2.0 * (g + 1.0) * (w + 0.5 * (g - 1.0)) * ctx.k


def i_value(m: float, ctx: HeatingContext) -> float:
    if not m > 0.0:
        raise NonPositiveMach(f"upstream Mach must be positive, got {m!r}")
    i2 = i_squared(m, ctx)
    if i2 >= 0.0:
        return math.sqrt(i2)
    w = 1.0 / (m * m)
    # a rounding error in m alone moves I^2 by about 4 eps w |w - 1|
    slack = max(CHOKE_CLAMP * (w - 1.0) ** 2, 64.0 * EPS * w * abs(w - 1.0))
    if -i2 <= slack:
        return 0.0
    raise MaxHeatExceeded(
        f"k={ctx.k} exceeds k_max={k_max(m, ctx.gas):.12g} at upstream Mach {m:.12g}"
    )


def _ratios(m: float, ctx: HeatingContext, i: float, subsonic: bool):
    g = ctx.gamma
    w = g + 1.0 / (m * m)
    if subsonic:
        ru = (w - i) / (g + 1.0)
        rp = m * m * (w + g * i) / (g + 1.0)
        mp = math.sqrt((w - i) / (w + g * i))
    else:
        ru = (w + i) / (g + 1.0)
        rp = m * m * (w - g * i) / (g + 1.0)
        mp = math.sqrt((w + i) / (w - g * i))
    return ru, rp, mp


def subsonic_ratios(m: float, ctx: HeatingContext, choked: bool = False) -> tuple[float, float, float]:
    """``(u+/u-, p+/p-, M+)`` across subsonic heating; ``choked`` forces ``I = 0``."""
    return _ratios(m, ctx, 0.0 if choked else i_value(m, ctx), subsonic=True)


def phi(m: float, ctx: HeatingContext) -> float:
    """Velocity ratio ``u+/u-`` across subsonic heating (increasing in ``m``)."""
    return _ratios(m, ctx, i_value(m, ctx), subsonic=True)[0]


def psi(m: float, ctx: HeatingContext) -> float:
    """Pressure ratio ``p+/p-`` across subsonic heating (decreasing in ``m``)."""
    return _ratios(m, ctx, i_value(m, ctx), subsonic=True)[1]


def heat_jump(upstream: PrimitiveState, ctx: HeatingContext, choked: bool = False) -> HeatJump:
    """Downstream state of the heating discontinuity.

    The branch follows the upstream Mach number. With ``choked=True`` the
    discriminant is set to zero, which is exact when the upstream Mach equals
    the critical value for ``ctx.k`` and keeps the downstream Mach at exactly 1
    instead of ``1 - O(sqrt(eps))``.
    """
    if not upstream.u > 0.0:
        raise BackflowUnsupported("velocity at the heating point must be positive")
    gas = ctx.gas
    m = mach(upstream, gas)
    if abs(m - 1.0) < SONIC_TOL:
        raise SonicUpstream("sonic flow admits no heat addition (k_max = 0)")
    i = 0.0 if choked else i_value(m, ctx)
    ru, rp, mp = _ratios(m, ctx, i, subsonic=m < 1.0)
    down = PrimitiveState(upstream.rho / ru, upstream.u * ru, upstream.p * rp)
    return HeatJump(upstream, down, m, mp, i)


def heating_residuals(left: PrimitiveState, right: PrimitiveState, ctx: HeatingContext):
    """Relative residuals of mass, momentum and total-enthalpy balance."""
    gas = ctx.gas
    m_l, m_r = left.rho * left.u, right.rho * right.u
    mom_l = m_l * left.u + left.p
    mom_r = m_r * right.u + right.p
    h_l = 0.5 * left.u**2 + enthalpy(left, gas)
    h_r = 0.5 * right.u**2 + enthalpy(right, gas)
    return (
        abs(m_l - m_r) / abs(m_l),
        abs(mom_l - mom_r) / abs(mom_l),
        abs(h_l * (1.0 + ctx.k) - h_r) / abs(h_r),
    )


def prandtl_pair_check(ctx: HeatingContext) -> tuple[float, float]:
    """Residuals of the normal-shock-like duality between the two critical Machs."""
    mss = m_star_star(ctx)
    if mss is None:
        raise BranchUnavailable("no supersonic critical Mach when k (gamma^2 - 1) >= 1")
    ms = m_star(ctx)
    g = ctx.gamma

    def partner(m):
        return math.sqrt(((g - 1.0) * m * m + 2.0) / (2.0 * g * m * m - g + 1.0))

    return abs(ms - partner(mss)), abs(mss - partner(ms))


def q_from_k(upstream: PrimitiveState, ctx: HeatingContext) -> float:
    """Heat flux per unit time implied by ``k`` for the given pre-heating state."""
    if not upstream.u > 0.0:
        raise BackflowUnsupported("velocity at the heating point must be positive")
    h = enthalpy(upstream, ctx.gas)
    return ctx.k * upstream.rho * upstream.u * (0.5 * upstream.u**2 + h)
