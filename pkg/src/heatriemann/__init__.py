"""Exact Riemann solutions of the Euler equations with a point heat source."""

from .construct import (
    SolutionType,
    WaveFan,
    big_x,
    big_y,
    classify,
    construct_type1,
    construct_type2,
    construct_type3,
    sample,
    sample_array,
    solve,
    wave_strength_oracle,
    y_root,
)
from .gas import ConservedState, IdealGas, PrimitiveState, cons_to_prim, mach, prim_to_cons, sound_speed
from .heating import HeatingContext, heat_jump, k_max, m_star, m_star_star, phi, psi, q_from_k

__version__ = "0.1.0"

__all__ = [
    "ConservedState",
    "HeatingContext",
    "IdealGas",
    "PrimitiveState",
    "SolutionType",
    "WaveFan",
    "big_x",
    "big_y",
    "classify",
    "cons_to_prim",
    "construct_type1",
    "construct_type2",
    "construct_type3",
    "heat_jump",
    "k_max",
    "m_star",
    "m_star_star",
    "mach",
    "phi",
    "prim_to_cons",
    "psi",
    "q_from_k",
    "sample",
    "sample_array",
    "solve",
    "sound_speed",
    "wave_strength_oracle",
    "y_root",
]
