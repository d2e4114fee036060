"""Ideal-gas states and conversions."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidGamma, NonPhysical


@dataclass(frozen=True)
class IdealGas:
    """Polytropic ideal gas, ``p = (gamma - 1) rho e``."""

    gamma: float = 1.4

    def __post_init__(self):
        if not (1.0 < self.gamma < 3.0):
            raise InvalidGamma(f"gamma must lie strictly inside (1, 3), got {self.gamma!r}")

    @property
    def beta(self) -> float:
        return 2.0 / (self.gamma - 1.0)

    @property
    def tau(self) -> float:
        return (self.gamma + 1.0) / (self.gamma - 1.0)


@dataclass(frozen=True)
class PrimitiveState:
    rho: float
    u: float
    p: float

    def __post_init__(self):
        if not (0.0 < self.rho < math.inf and 0.0 < self.p < math.inf and math.isfinite(self.u)):
            raise NonPhysical(f"invalid primitive state {self}")

    def astuple(self) -> tuple[float, float, float]:
        return (self.rho, self.u, self.p)

    def scaled(self, factor: float) -> "PrimitiveState":
        """Scale density and pressure jointly; sound speed and Mach stay fixed."""
        return PrimitiveState(self.rho * factor, self.u, self.p * factor)


@dataclass(frozen=True)
class ConservedState:
    rho: float
    mom: float
    energy: float

    def astuple(self) -> tuple[float, float, float]:
        return (self.rho, self.mom, self.energy)


def sound_speed(s: PrimitiveState, gas: IdealGas) -> float:
    return math.sqrt(gas.gamma * s.p / s.rho)


def mach(s: PrimitiveState, gas: IdealGas) -> float:
    return s.u / sound_speed(s, gas)


def internal_energy(s: PrimitiveState, gas: IdealGas) -> float:
    return s.p / ((gas.gamma - 1.0) * s.rho)


def enthalpy(s: PrimitiveState, gas: IdealGas) -> float:
    return gas.gamma * s.p / ((gas.gamma - 1.0) * s.rho)


def total_energy(s: PrimitiveState, gas: IdealGas) -> float:
    return s.p / (gas.gamma - 1.0) + 0.5 * s.rho * s.u * s.u


def entropy(s: PrimitiveState, gas: IdealGas) -> float:
    """The entropy measure ``p / rho**gamma``."""
    return s.p / s.rho**gas.gamma


def prim_to_cons(s: PrimitiveState, gas: IdealGas) -> ConservedState:
    return ConservedState(s.rho, s.rho * s.u, total_energy(s, gas))


def cons_to_prim(c: ConservedState, gas: IdealGas) -> PrimitiveState:
    if not c.rho > 0.0:
        raise NonPhysical(f"non-positive density {c.rho!r}")
    u = c.mom / c.rho
    p = (gas.gamma - 1.0) * (c.energy - 0.5 * c.mom * u)
    if not p > 0.0:
        raise NonPhysical(f"non-positive pressure {p!r} recovered from {c}")
    return PrimitiveState(c.rho, u, p)


def flux(s: PrimitiveState, gas: IdealGas) -> tuple[float, float, float]:
    """Physical Euler flux ``(rho u, rho u^2 + p, (E + p) u)``."""
    m = s.rho * s.u
    return (m, m * s.u + s.p, (total_energy(s, gas) + s.p) * s.u)
