import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import oracles
from heatriemann.errors import BackflowUnsupported, BranchUnavailable, MaxHeatExceeded, NonPositiveMach, SonicUpstream
from heatriemann.gas import IdealGas, PrimitiveState, mach
from heatriemann.heating import (
    HeatingContext,
    heat_jump,
    heating_residuals,
    k_max,
    m_star,
    m_star_star,
    phi,
    prandtl_pair_check,
    psi,
    q_from_k,
)

AIR = IdealGas(1.4)
CTX = HeatingContext(1.4, 0.2)


def test_k_must_be_positive():
    for k in (0.0, -0.1, float("nan")):
        with pytest.raises(ValueError):
            HeatingContext(1.4, k)


# --- k_max ----------------------------------------------------------------------


@pytest.mark.parametrize("g", [1.05, 1.4, 5 / 3, 2.9])
def test_k_max_vanishes_at_sonic(g):
    assert k_max(1.0, IdealGas(g)) == 0.0


def test_k_max_values():
    assert k_max(0.5, AIR) == pytest.approx(0.5625 / 1.26, rel=1e-15)
    assert k_max(0.5, AIR) == pytest.approx(0.446429, abs=5e-7)
    assert k_max(100.0, AIR) == pytest.approx(1 / (1.4**2 - 1), rel=0.01)


@pytest.mark.parametrize("m", [0.01, 0.3, 0.9, 1.2, 3.0, 40.0])
@pytest.mark.parametrize("g", [1.1, 1.4, 2.5])
def test_k_max_against_rayleigh_line(m, g):
    assert k_max(m, IdealGas(g)) == pytest.approx(float(oracles.kmax(m, g)), rel=1e-12)


@pytest.mark.parametrize("m", [0.0, -1.0])
def test_k_max_rejects_nonpositive_mach(m):
    with pytest.raises(NonPositiveMach):
        k_max(m, AIR)


# --- critical Mach numbers -------------------------------------------------------


def test_critical_machs_reference_case():
    assert m_star(CTX) == pytest.approx(0.6136, abs=5e-5)
    assert m_star_star(CTX) == pytest.approx(1.8130, abs=5e-5)


def test_unbounded_supersonic_critical_mach():
    ctx = HeatingContext(1.4, 2.0)
    assert m_star_star(ctx) is None
    ms = m_star(ctx)
    assert ms == pytest.approx(0.292618, abs=5e-7)
    assert k_max(ms, AIR) == pytest.approx(2.0, rel=1e-12)


def test_equal_branch_formula():
    g, k = math.sqrt(3.0), 0.5
    ctx = HeatingContext(g, k)
    assert ctx.choke_product == pytest.approx(1.0, rel=1e-15)
    assert m_star(ctx) == pytest.approx(math.sqrt(1 / (2 * (k * (g + 1) + 1))), rel=1e-14)


@pytest.mark.parametrize("g", [1.05, 1.2, 1.4, 5 / 3, 2.2, 2.9])
@pytest.mark.parametrize("k", [1e-6, 0.01, 0.1, 0.3, 1.0, 2.0, 10.0])
def test_critical_machs_against_oracle(g, k):
    ctx = HeatingContext(g, k)
    lo, hi = oracles.critical_machs(g, k)
    ms, mss = m_star(ctx), m_star_star(ctx)
    assert 0.0 < ms < 1.0
    assert ms == pytest.approx(float(lo), rel=1e-12)
    assert k_max(ms, ctx.gas) == pytest.approx(k, rel=1e-10)
    if hi is None:
        assert mss is None
    else:
        assert mss > 1.0
        assert mss == pytest.approx(float(hi), rel=1e-10)
        assert k_max(mss, ctx.gas) == pytest.approx(k, rel=1e-10)


@pytest.mark.parametrize("g,k", [(1.4, 0.2), (1.1, 0.05), (2.9, 0.1)])
def test_prandtl_duality(g, k):
    r1, r2 = prandtl_pair_check(HeatingContext(g, k))
    assert r1 < 1e-10 and r2 < 1e-10


def test_prandtl_duality_needs_finite_branch():
    with pytest.raises(BranchUnavailable):
        prandtl_pair_check(HeatingContext(1.4, 2.0))


# --- heat_jump ------------------------------------------------------------------


def test_subsonic_reference_jump():
    u = 0.5 * math.sqrt(1.4)
    j = heat_jump(PrimitiveState(1.0, u, 1.0), CTX)
    assert j.i_value == pytest.approx(2.22890, abs=5e-6)
    assert j.downstream.u / u == pytest.approx(1.32129, abs=5e-6)
    assert j.downstream.p == pytest.approx(0.88755, abs=5e-6)
    assert j.m_plus == pytest.approx(0.610061, abs=5e-7)
    assert max(heating_residuals(j.upstream, j.downstream, CTX)) < 1e-12


@pytest.mark.parametrize(
    "state,g,k",
    [
        ((1.0, 0.3, 1.0), 1.4, 0.2),
        ((2.0, 0.1, 0.7), 1.4, 1.5),
        ((1.0, 2.8, 1.0), 1.4, 0.2),
        ((0.5, 5.0, 3.0), 1.2, 0.05),
        ((1.0, 1.9, 1.0), 2.5, 0.005),
    ],
)
def test_jump_against_rayleigh_oracle(state, g, k):
    ctx = HeatingContext(g, k)
    s = PrimitiveState(*state)
    assert k < k_max(mach(s, ctx.gas), ctx.gas)
    j = heat_jump(s, ctx)
    rho, u, p, m = (float(v) for v in oracles.heated(*state, g, k))
    assert j.downstream.rho == pytest.approx(rho, rel=1e-12)
    assert j.downstream.u == pytest.approx(u, rel=1e-12)
    assert j.downstream.p == pytest.approx(p, rel=1e-12)
    assert j.m_plus == pytest.approx(m, rel=1e-12)


def test_small_k_subsonic_is_nearly_identity():
    s = PrimitiveState(1.0, 0.5, 1.0)
    j = heat_jump(s, HeatingContext(1.4, 1e-12))
    assert np.allclose(j.downstream.astuple(), s.astuple(), rtol=1e-9)


def test_choke_point_gives_sonic_downstream():
    u = m_star(CTX) * math.sqrt(1.4)
    j = heat_jump(PrimitiveState(1.0, u, 1.0), CTX)
    assert j.i_value == pytest.approx(0.0, abs=1e-6)
    assert j.m_plus == pytest.approx(1.0, abs=1e-6)
    jc = heat_jump(PrimitiveState(1.0, u, 1.0), CTX, choked=True)
    assert jc.i_value == 0.0
    assert jc.m_plus == pytest.approx(1.0, abs=1e-14)


def test_jump_errors():
    with pytest.raises(MaxHeatExceeded):
        heat_jump(PrimitiveState(1.0, 0.9 * math.sqrt(1.4), 1.0), CTX)
    with pytest.raises(SonicUpstream):
        heat_jump(PrimitiveState(1.0, math.sqrt(1.4), 1.0), CTX)
    with pytest.raises(BackflowUnsupported):
        heat_jump(PrimitiveState(1.0, -0.1, 1.0), CTX)
    with pytest.raises(BackflowUnsupported):
        heat_jump(PrimitiveState(1.0, 0.0, 1.0), CTX)


jump_inputs = st.tuples(
    st.floats(0.05, 20.0),  # density
    st.floats(0.05, 20.0),  # pressure
    st.floats(1.05, 2.9),  # gamma
    st.floats(0.02, 8.0),  # upstream Mach
    st.floats(0.01, 0.95),  # fraction of k_max
)


@settings(max_examples=300, deadline=None)
@given(jump_inputs)
def test_jump_balances_and_trends(args):
    rho, p, g, m, frac = args
    assume(abs(m - 1.0) > 1e-3)
    gas = IdealGas(g)
    k = frac * k_max(m, gas)
    assume(k > 0.0)
    ctx = HeatingContext(g, k)
    s = PrimitiveState(rho, m * math.sqrt(g * p / rho), p)
    j = heat_jump(s, ctx)
    assert max(heating_residuals(s, j.downstream, ctx)) < 1e-12
    d = j.downstream
    if m < 1.0:
        assert d.u > s.u and d.p < s.p and d.rho < s.rho and m < j.m_plus <= 1.0
    else:
        assert d.u < s.u and d.p > s.p and d.rho > s.rho and 1.0 <= j.m_plus < m


@settings(max_examples=200, deadline=None)
@given(st.floats(1.05, 2.9), st.floats(0.01, 3.0), st.floats(0.02, 0.999))
def test_phi_psi_trends(g, k, frac):
    ctx = HeatingContext(g, k)
    m = frac * m_star(ctx)
    assert phi(m, ctx) >= 1.0
    assert psi(m, ctx) <= 1.0


def test_phi_psi_reference_values():
    assert phi(0.5, CTX) == pytest.approx(1.32129, abs=5e-6)
    assert psi(0.5, CTX) == pytest.approx(0.88755, abs=5e-6)


def test_q_from_k():
    s = PrimitiveState(1.0, 0.59161, 1.0)
    expected = 0.2 * 0.59161 * (0.5 * 0.59161**2 + 3.5)
    assert q_from_k(s, CTX) == pytest.approx(expected, rel=1e-15)
    assert q_from_k(s, CTX) == pytest.approx(0.4348335, abs=5e-8)
