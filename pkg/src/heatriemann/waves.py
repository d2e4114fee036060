"""Elementary waves of the homogeneous Euler equations.

Contains the two-branch pressure function, an exact Riemann solver with
self-similar sampling, and the shock-frame relations that tie the Mach
number ahead of a left-facing shock to the shock Mach number ``s / a1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from scipy.optimize import brentq

from .errors import DomainViolation, LaxViolation, NoConvergence, NonPositivePressure, VacuumGenerated
from .gas import IdealGas, PrimitiveState, sound_speed

LAX_SLACK = 1e-12


def f_pressure(p: float, ref: PrimitiveState, gas: IdealGas) -> float:
    """Velocity jump across a wave connecting ``ref`` to pressure ``p``."""
    if not p > 0.0:
        raise NonPositivePressure(f"pressure must be positive, got {p!r}")
    g = gas.gamma
    if p > ref.p:
        a = 2.0 / ((g + 1.0) * ref.rho)
        b = ref.p * (g - 1.0) / (g + 1.0)
        return (p - ref.p) * math.sqrt(a / (p + b))
    a_ref = sound_speed(ref, gas)
    return 2.0 * a_ref / (g - 1.0) * ((p / ref.p) ** ((g - 1.0) / (2.0 * g)) - 1.0)


def f_pressure_slope(p: float, ref: PrimitiveState, gas: IdealGas) -> float:
    g = gas.gamma
    if p > ref.p:
        a = 2.0 / ((g + 1.0) * ref.rho)
        b = ref.p * (g - 1.0) / (g + 1.0)
        return math.sqrt(a / (b + p)) * (1.0 - 0.5 * (p - ref.p) / (b + p))
    a_ref = sound_speed(ref, gas)
    return (p / ref.p) ** (-(g + 1.0) / (2.0 * g)) / (ref.rho * a_ref)


@dataclass(frozen=True)
class Wave:
    """A genuinely nonlinear wave. Shocks have ``head == tail == speed``."""

    kind: str  # "shock" or "rarefaction"
    head: float
    tail: float

    @property
    def is_shock(self) -> bool:
        return self.kind == "shock"

    @property
    def speed(self) -> float:
        return self.head


def rarefaction_state(ref: PrimitiveState, xi: float, gas: IdealGas, side: str) -> PrimitiveState:
    """State inside a centred fan adjacent to ``ref`` at ``xi = x/t``.

    ``side="left"`` is a 1-fan with ``ref`` on its left, ``"right"`` a 3-fan
    with ``ref`` on its right.
    """
    g = gas.gamma
    a_ref = sound_speed(ref, gas)
    if side == "left":
        u = 2.0 / (g + 1.0) * (a_ref + 0.5 * (g - 1.0) * ref.u + xi)
        a = 2.0 / (g + 1.0) * (a_ref + 0.5 * (g - 1.0) * (ref.u - xi))
    else:
        u = 2.0 / (g + 1.0) * (-a_ref + 0.5 * (g - 1.0) * ref.u + xi)
        a = 2.0 / (g + 1.0) * (a_ref - 0.5 * (g - 1.0) * (ref.u - xi))
    ratio = a / a_ref
    return PrimitiveState(ref.rho * ratio ** (2.0 / (g - 1.0)), u, ref.p * ratio ** (2.0 * g / (g - 1.0)))


def _star_density(p_star: float, ref: PrimitiveState, gas: IdealGas) -> float:
    g = gas.gamma
    r = p_star / ref.p
    if p_star > ref.p:
        g6 = (g - 1.0) / (g + 1.0)
        return ref.rho * (r + g6) / (g6 * r + 1.0)
    return ref.rho * r ** (1.0 / g)


def _wave(p_star: float, u_star: float, ref: PrimitiveState, gas: IdealGas, side: str) -> Wave:
    g = gas.gamma
    a = sound_speed(ref, gas)
    sign = -1.0 if side == "left" else 1.0
    if p_star > ref.p:
        s = ref.u + sign * a * math.sqrt((g + 1.0) / (2.0 * g) * p_star / ref.p + (g - 1.0) / (2.0 * g))
        return Wave("shock", s, s)
    a_star = a * (p_star / ref.p) ** ((g - 1.0) / (2.0 * g))
    return Wave("rarefaction", ref.u + sign * a, u_star + sign * a_star)


@dataclass(frozen=True)
class CrpSolution:
    left: PrimitiveState
    right: PrimitiveState
    gas: IdealGas
    p_star: float
    u_star: float
    rho_star_left: float
    rho_star_right: float
    left_wave: Wave
    right_wave: Wave

    @property
    def star_left(self) -> PrimitiveState:
        return PrimitiveState(self.rho_star_left, self.u_star, self.p_star)

    @property
    def star_right(self) -> PrimitiveState:
        return PrimitiveState(self.rho_star_right, self.u_star, self.p_star)

    def sample(self, xi: float) -> PrimitiveState:
        return crp_sample(self, xi)


def pressure_residual(p: float, left: PrimitiveState, right: PrimitiveState, gas: IdealGas) -> float:
    return f_pressure(p, left, gas) + f_pressure(p, right, gas) + (right.u - left.u)


def crp_solve(left: PrimitiveState, right: PrimitiveState, gas: IdealGas) -> CrpSolution:
    """Exact solution of the classical Riemann problem."""
    g = gas.gamma
    a_l, a_r = sound_speed(left, gas), sound_speed(right, gas)
    if 2.0 * (a_l + a_r) / (g - 1.0) <= right.u - left.u:
        raise VacuumGenerated("initial states separate fast enough to create vacuum")

    if left == right:
        p_star = left.p
    else:
        res = lambda p: pressure_residual(p, left, right, gas)  # noqa: E731
        lo = 1e-12 * min(left.p, right.p)
        hi = 10.0 * max(left.p, right.p)
        while res(hi) < 0.0:
            hi *= 10.0
            if hi > 1e300:
                raise NoConvergence("could not bracket the star pressure")
        if res(lo) > 0.0:
            raise NoConvergence("star pressure below the lower bracket")
        p_star = brentq(res, lo, hi, xtol=1e-300, rtol=1e-15, maxiter=500)
        # one safeguarded Newton polish; brentq stops on the bracket width
        r = res(p_star)
        d = f_pressure_slope(p_star, left, gas) + f_pressure_slope(p_star, right, gas)
        trial = p_star - r / d
        if trial > 0.0 and abs(res(trial)) < abs(r):
            p_star = trial

    u_star = 0.5 * (left.u + right.u) + 0.5 * (f_pressure(p_star, right, gas) - f_pressure(p_star, left, gas))
    return CrpSolution(
        left=left,
        right=right,
        gas=gas,
        p_star=p_star,
        u_star=u_star,
        rho_star_left=_star_density(p_star, left, gas),
        rho_star_right=_star_density(p_star, right, gas),
        left_wave=_wave(p_star, u_star, left, gas, "left"),
        right_wave=_wave(p_star, u_star, right, gas, "right"),
    )


def crp_sample(sol: CrpSolution, xi: float) -> PrimitiveState:
    """Self-similar state at ``xi = x/t``."""
    if xi <= sol.u_star:
        w = sol.left_wave
        if xi < w.head:
            return sol.left
        if w.is_shock or xi >= w.tail:
            return sol.star_left
        return rarefaction_state(sol.left, xi, sol.gas, "left")
    w = sol.right_wave
    if xi > w.head:
        return sol.right
    if w.is_shock or xi <= w.tail:
        return sol.star_right
    return rarefaction_state(sol.right, xi, sol.gas, "right")


# --- shock-frame relations ---------------------------------------------------


@dataclass(frozen=True)
class ShockFrame:
    """Pre-shock Mach ``m1`` and shock Mach ``m_sl = s_L / a1`` of a left-facing shock."""

    m1: float
    m_sl: float

    def __post_init__(self):
        if self.m1 - self.m_sl < 1.0 - LAX_SLACK:
            raise LaxViolation(f"m1 - m_sl = {self.m1 - self.m_sl!r} < 1")

    @property
    def relative_mach(self) -> float:
        return self.m1 - self.m_sl


class ShockRatios(NamedTuple):
    rho: float  # rho4 / rho1
    p: float  # p4 / p1
    rel_velocity: float  # (u4 - s) / (u1 - s)
    u: float  # u4 / u1
    mach: float  # M4


def shock_family(frame: ShockFrame, gas: IdealGas) -> ShockRatios:
    g = gas.gamma
    x2 = frame.relative_mach**2
    f1 = (g + 1.0) * x2 / ((g - 1.0) * x2 + 2.0)
    f2 = (2.0 * g * x2 - g + 1.0) / (g + 1.0)
    f3 = ((g - 1.0) * x2 + 2.0) / ((g + 1.0) * x2)
    f4 = f3 + frame.m_sl / frame.m1 * (1.0 - f3)
    f5 = shock_mach_behind(frame.m1, frame.m_sl, gas)
    return ShockRatios(f1, f2, f3, f4, f5)


def shock_mach_behind(m1: float, m_sl: float, gas: IdealGas) -> float:
    """Lab-frame Mach number behind the shock."""
    g = gas.gamma
    x = m1 - m_sl
    num = ((g - 1.0) * m1 + 2.0 * m_sl) * x + 2.0
    den = 2.0 * g * (g - 1.0) * x**4 + (6.0 * g - g * g - 1.0) * x**2 - 2.0 * (g - 1.0)
    return num / math.sqrt(den)


def shocked_state(ahead: PrimitiveState, frame: ShockFrame, gas: IdealGas) -> tuple[PrimitiveState, float]:
    """State behind a left-facing shock and the shock speed."""
    r = shock_family(frame, gas)
    s = frame.m_sl * sound_speed(ahead, gas)
    u = s + r.rel_velocity * (ahead.u - s)
    return PrimitiveState(ahead.rho * r.rho, u, ahead.p * r.p), s


def f6_inverse(m1: float, m4: float, gas: IdealGas) -> float:
    """Shock Mach number that slows Mach ``m1`` down to ``m4``.

    Solves ``shock_mach_behind(m1, m_sl) = m4`` on the Lax-admissible branch
    through the monotone function ``sigma(x)``, ``x = m1 - m_sl >= 1``.
    """
    if not (m4 > 0.0 and m1 > 0.0):
        raise DomainViolation("Mach numbers must be positive")
    if m4 > m1:
        raise DomainViolation(f"a shock cannot raise the Mach number ({m4!r} > {m1!r})")
    if m4 == m1:
        return m1 - 1.0
    g = gas.gamma

    def sigma(x):
        return (
            m4 * math.sqrt((g - 1.0) * x * x + 2.0) * math.sqrt(2.0 * g - (g - 1.0) / (x * x))
            + 2.0 * x
            - (g + 1.0) * m1
            - 2.0 / x
        )

    hi = max(2.0, m1 + 2.0)
    while sigma(hi) <= 0.0:
        hi *= 2.0
        if hi > 1e300:
            raise NoConvergence("sigma never changes sign")
    x = brentq(sigma, 1.0, hi, xtol=1e-15, rtol=1e-15, maxiter=500)
    return m1 - x


def quartic_coefficients(m1: float, m4: float, gas: IdealGas) -> tuple[float, float, float, float, float]:
    """Coefficients (highest power first) of the quartic in ``m1 - m_sl``."""
    g = gas.gamma
    return (
        4.0 - 2.0 * g * (g - 1.0) * m4**2,
        -4.0 * (g + 1.0) * m1,
        (g + 1.0) ** 2 * m1**2 - 8.0 - (6.0 * g - g * g - 1.0) * m4**2,
        4.0 * (g + 1.0) * m1,
        4.0 + 2.0 * (g - 1.0) * m4**2,
    )


def quartic_residual(m1: float, m4: float, m_sl: float, gas: IdealGas) -> float:
    x = m1 - m_sl
    a, b, c, d, e = quartic_coefficients(m1, m4, gas)
    return (((a * x + b) * x + c) * x + d) * x + e


def lax_ok(frame_or_m1, m_sl: Optional[float] = None) -> bool:
    if m_sl is None:
        return frame_or_m1.relative_mach >= 1.0 - LAX_SLACK
    return frame_or_m1 - m_sl >= 1.0 - LAX_SLACK
