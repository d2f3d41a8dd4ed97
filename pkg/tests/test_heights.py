import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from effmordell.angles import TauResult, tau
from effmordell.errors import InvalidParams, NegativePhip, TauNotPositive
from effmordell.heights import (
    delta_sum_from_faltings,
    faltings_upper_via_isogeny,
    gap_cos_bound,
    gap_defect,
    genus2_m_constant,
    m_constant,
    neron_tate_bound,
    product_faltings_height,
    round_up,
    wilms_floor,
    x_height_bound,
)

# 50-digit reference values (mpmath)
WILMS_G2 = -21.088266895830184023963766107481645658658717544086
WILMS_G1 = -10.544133447915092011981883053740822829329358772043
DELTA_FROM_MINUS_ONE = 2.7030165312747638684852757824898822377823595782045
DELTA_FROM_ZERO = 14.703016531274763868485275782489882237782359578205
M_EXAMPLE = 102.6770977294269025889976933949722397431887256057
NT_EXAMPLE = 123.94222094174507575309371804952598169271258341069
ISOGENY_EXAMPLE = -1.0068528194400546905827678785418234319244998656397
POSITIVITY_FLOOR_G2 = 9.6147496354445798445215096750082365791236420341185


def test_wilms_floor_values():
    assert wilms_floor(2, 1) == pytest.approx(WILMS_G2, rel=1e-14)
    assert wilms_floor(1, 1) == pytest.approx(WILMS_G1, rel=1e-14)
    assert wilms_floor(2, 2) == 2 * wilms_floor(2, 1)


def test_wilms_floor_rejects_zero_degree():
    with pytest.raises(InvalidParams):
        wilms_floor(2, 0)


def test_delta_from_faltings():
    assert delta_sum_from_faltings(2, 1, -1) == pytest.approx(DELTA_FROM_MINUS_ONE, rel=1e-14)
    assert delta_sum_from_faltings(2, 1, 0) == pytest.approx(DELTA_FROM_ZERO, rel=1e-14)
    assert delta_sum_from_faltings(2, 1, 0.5) - delta_sum_from_faltings(2, 1, -0.5) == pytest.approx(12)


def test_isogeny_transfer():
    h = faltings_upper_via_isogeny(product_faltings_height([-0.85, -0.85]), 1, 4)
    assert h == pytest.approx(ISOGENY_EXAMPLE, rel=1e-14)
    assert h < -1
    assert faltings_upper_via_isogeny(-0.3, 1, 1) == -0.3
    c4 = faltings_upper_via_isogeny(0.0, 1, 4)
    assert faltings_upper_via_isogeny(0.0, 1, 16) == pytest.approx(2 * c4)


def test_m_constant_example():
    M = m_constant(2, 1, delta_sum_from_faltings(2, 1, -1), [(2, 4)])
    assert M == pytest.approx(M_EXAMPLE, rel=1e-13)
    assert 102.6 < M < 103


@settings(max_examples=300)
@given(st.floats(-50, 500), st.lists(st.tuples(st.sampled_from([2, 3, 5, 7, 11, 13]), st.fractions(0, 20)), max_size=4))
def test_m_constant_genus_two_closed_form(delta, fibral):
    a = m_constant(2, 1, delta, fibral)
    b = genus2_m_constant(delta, fibral)
    assert a == pytest.approx(b, rel=1e-12, abs=1e-12)


@given(st.integers(2, 12), st.integers(1, 6), st.floats(0, 100),
       st.lists(st.tuples(st.integers(2, 1000), st.floats(0, 50)), max_size=3))
def test_m_constant_positive_above_floor(g, degK, excess, fibral):
    assert m_constant(g, degK, wilms_floor(g, degK) + excess, fibral) > 0


def test_m_constant_floor_margin():
    # without bad fibres and at the delta floor, M / (2 g (g-1)^2 [K:Q]) exceeds 9
    M = m_constant(2, 1, wilms_floor(2, 1), [])
    assert M / 4 == pytest.approx(POSITIVITY_FLOOR_G2, rel=1e-13)
    assert M / 4 > 9


@given(st.floats(-20, 20), st.floats(0, 5), st.floats(0, 10))
def test_m_constant_monotone(delta, d_delta, d_phi):
    base = m_constant(3, 1, delta, [(2, 1.0)])
    assert m_constant(3, 1, delta + d_delta, [(2, 1.0)]) >= base
    assert m_constant(3, 1, delta, [(2, 1.0 + d_phi)]) >= base


def test_m_constant_rejects_negative_phi():
    with pytest.raises(NegativePhip):
        m_constant(2, 1, 0.0, [(2, -1)])


def test_neron_tate_published_figure():
    assert neron_tate_bound(103, 2, TauResult(0.2, None, "exact-polygon", False)) == pytest.approx(128.75)


def test_neron_tate_with_exact_tau():
    nt = neron_tate_bound(M_EXAMPLE, 2, tau(2, 2, 8))
    assert nt == pytest.approx(NT_EXAMPLE, rel=1e-8)
    assert nt <= 128.75


def test_neron_tate_rejects_nonpositive_tau():
    with pytest.raises(TauNotPositive):
        neron_tate_bound(100, 2, tau(2, 2, 6))


@given(st.floats(1, 1000), st.floats(0.01, 1), st.floats(0, 1))
def test_neron_tate_monotone(M, t, dt):
    slow = neron_tate_bound(M, 2, TauResult(t + dt, None, "x", False))
    assert slow <= neron_tate_bound(M, 2, TauResult(t, None, "x", False))
    assert neron_tate_bound(M + dt, 2, TauResult(t, None, "x", False)) >= neron_tate_bound(M, 2, TauResult(t, None, "x", False))


def test_gap_cos_symmetric_heights():
    assert gap_cos_bound(100, 100, 2, 100) == pytest.approx(0.75)
    assert gap_cos_bound(7.0, 7.0, 3, 20.0) == pytest.approx(20 / 42 + 1 / 3)


@given(st.floats(0.1, 1e4), st.floats(0.1, 1e4), st.floats(1, 500))
def test_gap_cos_swap_symmetric(hP, hQ, M):
    assert gap_cos_bound(hP, hQ, 2, M) == pytest.approx(gap_cos_bound(hQ, hP, 2, M))


def test_gap_cos_rejects_zero_height():
    with pytest.raises(InvalidParams):
        gap_cos_bound(0, 1, 2, 1)


@pytest.mark.parametrize("args, expected", [
    ((0, 0, 0, 2, 1.0), (0, True)),
    ((10, 10, 10, 2, 50), (-20, True)),
    ((100, 100, 100, 2, 50), (-200, False)),
])
def test_gap_defect(args, expected):
    assert gap_defect(*args) == expected


def test_x_height_bound():
    assert x_height_bound(128.75, 4.08) == pytest.approx(66.415)
    assert x_height_bound(128.75, 4.08) < 67
    assert x_height_bound(0, 0) == 0
    assert x_height_bound(10, 3) - x_height_bound(10, 1) == pytest.approx(1)


def test_round_up_never_lowers():
    for x in (0.0, 1 / 3, M_EXAMPLE, NT_EXAMPLE, -2.5):
        assert round_up(x) >= x + 1e-6
        assert round_up(x) - x < 3e-6


def test_full_chain_dominated_by_published_figures():
    h_j = faltings_upper_via_isogeny(product_faltings_height([-0.85, -0.85]), 1, 4)
    assert h_j < -1
    M = m_constant(2, 1, delta_sum_from_faltings(2, 1, -1), [(2, 4)])
    nt = neron_tate_bound(M, 2, tau(2, 2, 8))
    xb = x_height_bound(nt, 4.08)
    assert round_up(M) < 103 and round_up(nt) <= 128.75 and round_up(xb) < 67
    assert math.isclose(xb, (NT_EXAMPLE + 4.08) / 2, rel_tol=1e-8)
