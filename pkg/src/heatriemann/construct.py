"""Exact self-similar solution with a point heat source at x = 0.

The flow on each side of the heating point is a classical Riemann fan. The
two fans are coupled through the heating jump, and only three wave patterns
survive:

* ``TYPE1``: left shock, heating, contact, right shock;
* ``TYPE2``: left shock, heating to a choked (sonic) state, right
  rarefaction whose head sits on x = 0, contact, right shock;
* ``TYPE3``: heating of the unperturbed supersonic stream, right
  rarefaction, contact, right shock.

Region numbering follows the usual layout: 1 is the ambient state on the
left, 4 and 5 are the states either side of x = 0, 6 and 7 either side of the
contact, 8 (= 1) the ambient state on the right.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from scipy.optimize import brentq

from .errors import (
    AmbiguousClassification,
    BackflowUnsupported,
    DomainViolation,
    InvariantError,
    NoBracket,
    StructureMismatch,
)
from .gas import IdealGas, PrimitiveState, entropy, flux, mach, prim_to_cons, sound_speed
from .heating import (
    HeatingContext,
    heat_jump,
    heating_residuals,
    i_value,
    m_star,
    m_star_star,
    phi,
    psi,
    q_from_k,
    subsonic_ratios,
)
from .waves import (
    CrpSolution,
    ShockFrame,
    crp_sample,
    crp_solve,
    f6_inverse,
    f_pressure,
    rarefaction_state,
    shock_family,
    shocked_state,
)

TIE_TOL = 1e-9


class SolutionType(enum.Enum):
    TYPE1 = 1
    TYPE2 = 2
    TYPE3 = 3

    def __str__(self):
        return f"Type{self.value}"

    @classmethod
    def parse(cls, text: str) -> "SolutionType":
        t = text.strip().lower().replace(" ", "").replace("_", "")
        for member in cls:
            if t in (str(member).lower(), str(member.value)):
                return member
        raise ValueError(f"unknown solution type {text!r}")


@dataclass(frozen=True)
class WaveFan:
    kind: SolutionType
    ctx: HeatingContext
    u1: PrimitiveState
    u4: Optional[PrimitiveState]
    u5: PrimitiveState
    u6: PrimitiveState
    u7: PrimitiveState
    s_left: Optional[float]
    raref_head: Optional[float]
    raref_tail: Optional[float]
    contact_speed: float
    s_right: float
    m_sl: Optional[float] = None

    @property
    def gas(self) -> IdealGas:
        return self.ctx.gas

    @property
    def pre_heating(self) -> PrimitiveState:
        """State just left of x = 0."""
        return self.u1 if self.u4 is None else self.u4

    @property
    def heat_flux(self) -> float:
        return q_from_k(self.pre_heating, self.ctx)

    def regions(self) -> dict[int, PrimitiveState]:
        return {1: self.u1, 4: self.pre_heating, 5: self.u5, 6: self.u6, 7: self.u7, 8: self.u1}

    def wave_speeds(self) -> dict[str, Optional[float]]:
        return {
            "s_left": self.s_left,
            "raref_head": self.raref_head,
            "raref_tail": self.raref_tail,
            "contact": self.contact_speed,
            "s_right": self.s_right,
        }

    def max_speed(self) -> float:
        return max(abs(v) for v in self.wave_speeds().values() if v is not None)


# --- coupling residuals --------------------------------------------------------


def big_x(m1: float, m4: float, ctx: HeatingContext, choked: bool = False) -> float:
    """Coupling residual between left shock, heating jump and right shock.

    Equals ``(u5 - u1 - f_R(p5)) / a1`` for the state reached by a left shock
    slowing ``m1`` to ``m4`` and subsonic heating of that state; zero when
    the right side needs only a contact and a shock. ``choked`` evaluates
    the heating with ``I = 0``, exact when ``m4`` is the critical Mach.
    """
    gas = ctx.gas
    if m4 > m_star(ctx) * (1.0 + 1e-12):
        raise DomainViolation(f"m4={m4!r} exceeds the subsonic critical Mach")
    r = shock_family(ShockFrame(m1, f6_inverse(m1, m4, gas)), gas)
    ru, rp, _ = subsonic_ratios(m4, ctx, choked)
    p_ratio = r.p * rp
    return m1 * (r.u * ru - 1.0) - math.sqrt(gas.beta / gas.gamma) * (p_ratio - 1.0) / math.sqrt(
        1.0 + gas.tau * p_ratio
    )


def big_y(m1: float, ctx: HeatingContext) -> float:
    """``big_x`` at the choke point ``m4 = M*``; its sign separates Type 1 from Type 2."""
    return big_x(m1, m_star(ctx), ctx, choked=True)


def y_root(ctx: HeatingContext) -> float:
    """Ambient Mach number at the Type 1 / Type 2 boundary."""
    lo = m_star(ctx)
    y_lo = big_y(lo, ctx)
    mss = m_star_star(ctx)
    hi = mss if mss is not None else 2.0 * lo + 1.0
    while big_y(hi, ctx) > 0.0:
        hi *= 1.5
        if hi > 1e4:
            raise NoBracket(f"Y(M1) has no sign change on [{lo}, {hi}]")
    if y_lo < 0.0:
        raise NoBracket("Y(M*) is negative; no Type 1 region")
    return brentq(lambda m: big_y(m, ctx), lo, hi, xtol=1e-15, rtol=1e-15, maxiter=500)


# --- classification --------------------------------------------------------------


class Classification(NamedTuple):
    kind: SolutionType
    m1: float
    m_star: float
    m_star_star: Optional[float]
    y: Optional[float]


def classify_detail(u1: PrimitiveState, ctx: HeatingContext) -> Classification:
    if not u1.u > 0.0:
        raise BackflowUnsupported("ambient velocity must be positive")
    m1 = mach(u1, ctx.gas)
    ms, mss = m_star(ctx), m_star_star(ctx)
    y = big_y(m1, ctx) if m1 >= ms else None
    if mss is not None and (m1 >= mss or abs(m1 - mss) < TIE_TOL):
        if y is not None and y > TIE_TOL:
            raise AmbiguousClassification(
                f"M1={m1:.6g} lies above M**={mss:.6g} but Y(M1)={y:.3g} > 0; the Type 1 and Type 3 regions overlap"
            )
        kind = SolutionType.TYPE3
    elif y is None or y > TIE_TOL:
        kind = SolutionType.TYPE1
    else:
        kind = SolutionType.TYPE2
    return Classification(kind, m1, ms, mss, y)


def classify(u1: PrimitiveState, ctx: HeatingContext) -> SolutionType:
    return classify_detail(u1, ctx).kind


# --- constructions ----------------------------------------------------------------


def _left_shock_from_pressure(u1: PrimitiveState, p4: float, gas: IdealGas):
    g = gas.gamma
    a1 = sound_speed(u1, gas)
    r = p4 / u1.p
    g6 = (g - 1.0) / (g + 1.0)
    rho4 = u1.rho * (r + g6) / (g6 * r + 1.0)
    u4 = u1.u - f_pressure(p4, u1, gas)
    s = u1.u - a1 * math.sqrt((g + 1.0) / (2.0 * g) * r + (g - 1.0) / (2.0 * g))
    return rho4, u4, s


def _right_shock(u7_p: float, u1: PrimitiveState, gas: IdealGas):
    g = gas.gamma
    r = u7_p / u1.p
    g6 = (g - 1.0) / (g + 1.0)
    rho = u1.rho * (r + g6) / (g6 * r + 1.0)
    s = u1.u + sound_speed(u1, gas) * math.sqrt((g + 1.0) / (2.0 * g) * r + (g - 1.0) / (2.0 * g))
    return rho, s


def type1_pressure_residual(p4: float, u1: PrimitiveState, ctx: HeatingContext) -> float:
    """``u1 + f_R(p5) - u5`` as a function of the pressure behind the left shock."""
    gas = ctx.gas
    rho4, u4, _ = _left_shock_from_pressure(u1, p4, gas)
    m4 = u4 / math.sqrt(gas.gamma * p4 / rho4)
    return u1.u + f_pressure(p4 * psi(m4, ctx), u1, gas) - phi(m4, ctx) * u4


def construct_type1(u1: PrimitiveState, ctx: HeatingContext) -> WaveFan:
    gas = ctx.gas
    a1 = sound_speed(u1, gas)
    m1 = mach(u1, gas)
    ms = m_star(ctx)
    res = lambda p: type1_pressure_residual(p, u1, ctx)  # noqa: E731

    # weakest admissible left shock: none at all, or the one that brings M4 to M*
    frame_lo = None
    if m1 <= ms:
        p_lo = u1.p
        r_lo = res(p_lo)
    else:
        # evaluated with the exact choked jump; recovering M4 from p4 here would
        # amplify rounding through the square-root behaviour of I near M*
        frame_lo = ShockFrame(m1, f6_inverse(m1, ms, gas))
        state_lo, _ = shocked_state(u1, frame_lo, gas)
        p_lo = state_lo.p
        ru, rp, _ = subsonic_ratios(ms, ctx, choked=True)
        r_lo = u1.u + f_pressure(p_lo * rp, u1, gas) - ru * state_lo.u
    # strongest: the one that brings the flow at x = 0 to rest
    p_rest = brentq(lambda p: f_pressure(p, u1, gas) - u1.u, u1.p, _grow(lambda p: f_pressure(p, u1, gas) - u1.u, u1.p))
    p_hi = p_lo + (p_rest - p_lo) * (1.0 - 1e-9)

    at_choke = frame_lo is not None and abs(r_lo) <= TIE_TOL * a1
    if at_choke:
        state4, s_left = shocked_state(u1, frame_lo, gas)
        state5 = heat_jump(state4, ctx, choked=True).downstream
    else:
        if abs(r_lo) <= 1e-13 * a1:
            p4 = p_lo
        else:
            r_hi = res(p_hi)
            if not (r_lo < 0.0 < r_hi):
                raise NoBracket(f"type-1 pressure residual has no sign change: r({p_lo})={r_lo}, r({p_hi})={r_hi}")
            p4 = brentq(res, p_lo, p_hi, xtol=1e-300, rtol=1e-15, maxiter=500)
        rho4, u4v, s_left = _left_shock_from_pressure(u1, p4, gas)
        state4 = PrimitiveState(rho4, u4v, p4)
        state5 = heat_jump(state4, ctx).downstream

    crp = crp_solve(state5, u1, gas)
    if abs(crp.p_star - state5.p) > 1e-8 * state5.p or not crp.right_wave.is_shock:
        raise StructureMismatch(
            f"type-1 right fan is not contact + shock (p*={crp.p_star}, p5={state5.p}, right={crp.right_wave.kind})"
        )
    rho7, s_right = _right_shock(state5.p, u1, gas)
    state7 = PrimitiveState(rho7, state5.u, state5.p)
    return WaveFan(
        kind=SolutionType.TYPE1,
        ctx=ctx,
        u1=u1,
        u4=state4,
        u5=state5,
        u6=state5,
        u7=state7,
        s_left=s_left,
        raref_head=None,
        raref_tail=None,
        contact_speed=state5.u,
        s_right=s_right,
        m_sl=s_left / a1,
    )


def _grow(fn, x0):
    x = 2.0 * x0
    while fn(x) < 0.0:
        x *= 2.0
        if x > 1e300:
            raise NoBracket("could not bracket")
    return x


def _right_fan(state5: PrimitiveState, u1: PrimitiveState, gas: IdealGas, label: str):
    crp = crp_solve(state5, u1, gas)
    if crp.p_star > state5.p * (1.0 + 1e-9) or not crp.right_wave.is_shock:
        raise StructureMismatch(
            f"{label} right fan is not rarefaction + contact + shock "
            f"(p*={crp.p_star}, p5={state5.p}, right={crp.right_wave.kind})"
        )
    lw = crp.left_wave
    return crp, crp.star_left, crp.star_right, lw.head, lw.tail, crp.u_star, crp.right_wave.speed


def construct_type2(u1: PrimitiveState, ctx: HeatingContext) -> WaveFan:
    gas = ctx.gas
    m1 = mach(u1, gas)
    m_sl = f6_inverse(m1, m_star(ctx), gas)
    if m_sl > 1e-9:
        raise StructureMismatch(f"type-2 left shock would move right (M_SL={m_sl:.3g}); M1 exceeds M**")
    state4, s_left = shocked_state(u1, ShockFrame(m1, m_sl), gas)
    state5 = heat_jump(state4, ctx, choked=True).downstream
    _, u6, u7, head, tail, contact, s_right = _right_fan(state5, u1, gas, "type-2")
    return WaveFan(SolutionType.TYPE2, ctx, u1, state4, state5, u6, u7, s_left, head, tail, contact, s_right, m_sl)


def construct_type3(u1: PrimitiveState, ctx: HeatingContext) -> WaveFan:
    gas = ctx.gas
    m1 = mach(u1, gas)
    mss = m_star_star(ctx)
    choked = mss is not None and abs(m1 - mss) < TIE_TOL
    state5 = heat_jump(u1, ctx, choked=choked).downstream
    _, u6, u7, head, tail, contact, s_right = _right_fan(state5, u1, gas, "type-3")
    return WaveFan(SolutionType.TYPE3, ctx, u1, None, state5, u6, u7, None, head, tail, contact, s_right, None)


_BUILDERS = {
    SolutionType.TYPE1: construct_type1,
    SolutionType.TYPE2: construct_type2,
    SolutionType.TYPE3: construct_type3,
}


def solve(u1: PrimitiveState, ctx: HeatingContext, check: bool = True) -> WaveFan:
    """Classify the ambient state and build the corresponding fan."""
    fan = _BUILDERS[classify(u1, ctx)](u1, ctx)
    if check:
        verify_fan(fan)
    return fan


# --- sampling ---------------------------------------------------------------------


def sample(fan: WaveFan, x: float, t: float) -> PrimitiveState:
    """State at ``(x, t)``; ``x = 0`` itself returns the post-heating side."""
    if not t > 0.0:
        raise ValueError("t must be positive")
    xi = x / t
    if xi < 0.0:
        if fan.s_left is not None and xi >= fan.s_left:
            return fan.u4
        return fan.u1
    if xi < fan.contact_speed:
        if fan.raref_head is None or xi <= fan.raref_head:
            return fan.u5
        if xi >= fan.raref_tail:
            return fan.u6
        return rarefaction_state(fan.u5, xi, fan.gas, "left")
    if xi <= fan.s_right:
        return fan.u7
    return fan.u1


def sample_array(fan: WaveFan, x, t: float):
    """Vectorised :func:`sample`; returns ``(rho, u, p)`` arrays."""
    if not t > 0.0:
        raise ValueError("t must be positive")
    xi = np.asarray(x, dtype=float) / t
    g = fan.gas.gamma
    out = np.empty((3,) + xi.shape)
    out[:] = np.array(fan.u1.astuple()).reshape((3,) + (1,) * xi.ndim)

    def put(mask, state):
        for i, v in enumerate(state.astuple()):
            out[i][mask] = v

    left = xi < 0.0
    if fan.s_left is not None:
        put(left & (xi >= fan.s_left), fan.u4)
    right = ~left
    below_contact = right & (xi < fan.contact_speed)
    put(below_contact, fan.u5)
    if fan.raref_head is not None:
        put(below_contact & (xi >= fan.raref_tail), fan.u6)
        inside = below_contact & (xi > fan.raref_head) & (xi < fan.raref_tail)
        s5 = fan.u5
        a5 = sound_speed(s5, fan.gas)
        z = xi[inside]
        u = 2.0 / (g + 1.0) * (a5 + 0.5 * (g - 1.0) * s5.u + z)
        a = 2.0 / (g + 1.0) * (a5 + 0.5 * (g - 1.0) * (s5.u - z))
        ratio = a / a5
        out[0][inside] = s5.rho * ratio ** (2.0 / (g - 1.0))
        out[1][inside] = u
        out[2][inside] = s5.p * ratio ** (2.0 * g / (g - 1.0))
    put(right & (xi >= fan.contact_speed) & (xi <= fan.s_right), fan.u7)
    return out[0], out[1], out[2]


# --- independent wave-strength route ----------------------------------------------


class WaveStrengths(NamedTuple):
    p4_p1: float
    p6_p5: float
    p8_p7: float


def _rarefaction_ratio(m1: float, u5_u1: float, m5: float, p5_p1: float, gas: IdealGas) -> float:
    """Pressure ratio ``p6/p5`` across the right rarefaction.

    Matches velocity behind the rarefaction with velocity behind the right
    shock, everything scaled by ``a1``.
    """
    g = gas.gamma
    e = (g - 1.0) / (2.0 * g)
    a = -2.0 / (g - 1.0) * m1 / m5 * u5_u1
    b = u5_u1 * m1 + 2.0 / (g - 1.0) * m1 / m5 * u5_u1
    c = (g + 1.0) * p5_p1

    def residual(r):
        return (a * r**e + b - m1) * math.sqrt(c * r + g - 1.0) - math.sqrt(2.0 / g) * (c / (g + 1.0) * r - 1.0)

    if residual(1.0) >= 0.0:
        return 1.0
    lo = 1e-3
    while residual(lo) <= 0.0:
        lo *= 1e-3
        if lo < 1e-300:
            raise NoBracket("rarefaction strength equation has no sign change")
    return brentq(residual, lo, 1.0, xtol=1e-300, rtol=1e-15, maxiter=500)


def wave_strength_oracle(m1: float, ctx: HeatingContext, kind: SolutionType) -> WaveStrengths:
    """Pressure ratios of the nonlinear waves computed from Mach numbers only.

    Takes a route separate from the constructions: the Type 1 left shock comes
    from the zero of ``big_x`` in the Mach number behind it, and the right
    rarefaction strength from a scalar equation in ``p6/p5``.
    """
    gas = ctx.gas
    ms = m_star(ctx)
    if kind is SolutionType.TYPE1:
        top = min(m1, ms)
        if big_x(m1, top, ctx) <= 0.0:
            m4 = top
        else:
            lo = 1e-3 * top
            while big_x(m1, lo, ctx) >= 0.0:
                lo *= 1e-3
                if lo < 1e-300:
                    raise NoBracket("coupling residual has no sign change")
            m4 = brentq(lambda m: big_x(m1, m, ctx), lo, top, xtol=1e-15, rtol=1e-15, maxiter=500)
        f2 = shock_family(ShockFrame(m1, f6_inverse(m1, m4, gas)), gas).p
        return WaveStrengths(f2, 1.0, 1.0 / (f2 * psi(m4, ctx)))
    if kind is SolutionType.TYPE2:
        r = shock_family(ShockFrame(m1, f6_inverse(m1, ms, gas)), gas)
        u5_u1 = r.u * phi(ms, ctx)
        p5_p1 = r.p * psi(ms, ctx)
        ratio = _rarefaction_ratio(m1, u5_u1, 1.0, p5_p1, gas)
        return WaveStrengths(r.p, ratio, 1.0 / (p5_p1 * ratio))
    g = gas.gamma
    i = i_value(m1, ctx)
    w = g + 1.0 / (m1 * m1)
    u5_u1 = (w + i) / (g + 1.0)
    p5_p1 = m1 * m1 * (w - g * i) / (g + 1.0)
    m5 = math.sqrt((w + i) / (w - g * i))
    ratio = _rarefaction_ratio(m1, u5_u1, m5, p5_p1, gas)
    return WaveStrengths(1.0, ratio, 1.0 / (p5_p1 * ratio))


def fan_strengths(fan: WaveFan) -> WaveStrengths:
    return WaveStrengths(fan.pre_heating.p / fan.u1.p, fan.u6.p / fan.u5.p, fan.u1.p / fan.u7.p)


# --- invariants -------------------------------------------------------------------


def _rh_residual(a: PrimitiveState, b: PrimitiveState, s: float, gas: IdealGas) -> float:
    ca, cb = prim_to_cons(a, gas).astuple(), prim_to_cons(b, gas).astuple()
    fa, fb = flux(a, gas), flux(b, gas)
    scale = max(max(abs(v) for v in fa + fb), max(abs(v) for v in ca + cb) * max(abs(s), 1e-300))
    return max(abs(fb[i] - fa[i] - s * (cb[i] - ca[i])) for i in range(3)) / scale


def fan_violations(fan: WaveFan, tol: float = 1e-10) -> list[str]:
    """Every broken structural invariant of ``fan``, as readable messages."""
    gas = fan.gas
    bad = []
    pre = fan.pre_heating
    res = heating_residuals(pre, fan.u5, fan.ctx)
    if max(res) > tol:
        bad.append(f"heating balance residuals {res}")
    if abs(fan.u6.p - fan.u7.p) > tol * fan.u7.p or abs(fan.u6.u - fan.u7.u) > tol * max(1.0, abs(fan.u7.u)):
        bad.append("pressure or velocity jumps across the contact")
    if abs(fan.contact_speed - fan.u6.u) > tol * max(1.0, abs(fan.u6.u)):
        bad.append("contact speed differs from u6")
    if _rh_residual(fan.u7, fan.u1, fan.s_right, gas) > tol:
        bad.append("right shock violates Rankine-Hugoniot")
    # the entropy rise is cubic in shock strength, so allow rounding for weak shocks
    if entropy(fan.u7, gas) < entropy(fan.u1, gas) * (1.0 - 1e-13):
        bad.append("right shock decreases entropy")
    if fan.s_left is not None:
        if _rh_residual(fan.u1, fan.u4, fan.s_left, gas) > tol:
            bad.append("left shock violates Rankine-Hugoniot")
        if fan.s_left > 1e-8:
            bad.append(f"left shock moves right (s={fan.s_left})")
        a1 = sound_speed(fan.u1, gas)
        if fan.u1.u - fan.s_left < a1 * (1.0 - 1e-12):
            bad.append("left shock violates the Lax condition")
    speeds = [fan.contact_speed, fan.s_right]
    if fan.raref_head is not None:
        speeds = [fan.raref_head, fan.raref_tail] + speeds
        if fan.raref_head < -1e-8:
            bad.append(f"rarefaction head moves left (head={fan.raref_head})")
    if any(b < a - 1e-12 for a, b in zip(speeds, speeds[1:])):
        bad.append(f"wave speeds out of order {speeds}")
    m4, m5 = mach(pre, gas), mach(fan.u5, gas)
    if fan.kind is SolutionType.TYPE1:
        if not (m4 < m5 < 1.0 and fan.u5.u > pre.u > 0.0):
            bad.append(f"type 1 needs M4 < M5 < 1 and u5 > u4 > 0 (M4={m4}, M5={m5})")
    elif fan.kind is SolutionType.TYPE2:
        if abs(m5 - 1.0) > 1e-8:
            bad.append(f"type 2 needs M5 = 1 (M5={m5})")
        if abs(fan.raref_head) > 1e-8:
            bad.append(f"type 2 rarefaction head must sit at x = 0 (head={fan.raref_head})")
    else:
        if not (m4 > m5 >= 1.0 - 1e-8) or fan.u4 is not None:
            bad.append(f"type 3 needs M4 > M5 >= 1 with U4 = U1 (M4={m4}, M5={m5})")
    return bad


def verify_fan(fan: WaveFan, tol: float = 1e-10) -> WaveFan:
    bad = fan_violations(fan, tol)
    if bad:
        raise InvariantError("; ".join(bad))
    return fan


# --- conservation audit -----------------------------------------------------------


class ConservationAudit(NamedTuple):
    mass: float
    momentum: float
    energy: float


def conservation_audit(fan: WaveFan, t: float = 1.0, n_points: int = 10**6, margin: float = 1.0) -> ConservationAudit:
    """Relative balance errors of the sampled fan over a control volume.

    The volume spans every wave with some room to spare, so mass and momentum
    must be unchanged since t = 0 and energy must have grown by ``Q t``. The
    composite midpoint rule runs separately between consecutive wave
    positions, so jumps never fall inside a quadrature cell.
    """
    gas = fan.gas
    reach = fan.max_speed() * t + margin
    knots = {-reach, 0.0, reach}
    for v in fan.wave_speeds().values():
        if v is not None:
            knots.add(v * t)
    knots = np.array(sorted(knots))
    widths = np.diff(knots)
    per = np.maximum(1, np.floor(n_points * widths / widths.sum()).astype(int))
    totals = np.zeros(3)
    for a, w, n in zip(knots[:-1], widths, per):
        if w <= 0.0:
            continue
        h = w / n
        x = a + h * (np.arange(n) + 0.5)
        rho, u, p = sample_array(fan, x, t)
        totals += h * np.array([rho.sum(), (rho * u).sum(), (p / (gas.gamma - 1.0) + 0.5 * rho * u * u).sum()])
    length = 2.0 * reach
    c1 = prim_to_cons(fan.u1, gas)
    initial = np.array(c1.astuple()) * length
    gained = fan.heat_flux * t
    return ConservationAudit(
        abs(totals[0] - initial[0]) / abs(initial[0]),
        abs(totals[1] - initial[1]) / abs(initial[1]),
        abs(totals[2] - initial[2] - gained) / abs(gained),
    )
