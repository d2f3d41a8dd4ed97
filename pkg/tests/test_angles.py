import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from effmordell.angles import CAP_PACKING, POLYGON, RANK_ONE, cap_area_fraction, cap_cos_lower, tau
from effmordell.errors import InvalidParams

PUBLISHED_TABLE = (-1, -0.5, -0.19, 0, 0.12, 0.20, 0.26, 0.30, 0.34, 0.36)


def truncate2(x):
    return math.trunc(x * 100) / 100


def test_rank_one():
    t = tau(2, 1, 3)
    assert t.tau == 0.5 and t.method == RANK_ONE and not t.conservative


def test_rank_two_octagon():
    t = tau(2, 2, 8)
    assert t.method == POLYGON
    assert t.tau == pytest.approx(math.cos(math.pi / 4) - 0.5, abs=2e-9)
    assert t.tau <= math.cos(math.pi / 4) - 0.5
    assert truncate2(t.tau) == 0.20


def test_rank_two_hexagon_is_exactly_zero():
    t = tau(2, 2, 6)
    assert t.tau == 0
    assert not t.applicable


def test_published_table():
    assert tuple(truncate2(tau(2, 2, n).tau) for n in range(3, 13)) == PUBLISHED_TABLE


def test_higher_rank_is_conservative():
    t = tau(2, 3, 20)
    assert t.method == CAP_PACKING and t.conservative
    assert t.cos_theta_lower == cap_cos_lower(3, 20)


@pytest.mark.parametrize("args", [(1, 2, 3), (2, 0, 3), (2, 2, 1)])
def test_tau_rejects_bad_params(args):
    with pytest.raises(InvalidParams):
        tau(*args)


@pytest.mark.parametrize("r", [2, 3, 4, 5, 8])
def test_tau_monotone_in_n(r):
    values = [tau(2, r, n).tau for n in range(2, 30)]
    assert all(a <= b + 1e-12 for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("r, n", [(1, 3), (2, 8), (3, 10), (4, 30)])
def test_tau_increasing_in_g(r, n):
    values = [tau(g, r, n).tau for g in range(2, 8)]
    assert all(a < b for a, b in zip(values, values[1:]))


@given(st.floats(0, math.pi))
def test_cap_fraction_circle(rho):
    assert cap_area_fraction(2, rho) == pytest.approx(rho / math.pi)


@given(st.floats(0, math.pi))
def test_cap_fraction_sphere(rho):
    assert cap_area_fraction(3, rho) == pytest.approx((1 - math.cos(rho)) / 2)


@pytest.mark.parametrize("r", range(2, 12))
def test_cap_fraction_landmarks(r):
    assert cap_area_fraction(r, math.pi / 2) == pytest.approx(0.5, abs=1e-12)
    assert cap_area_fraction(r, math.pi) == pytest.approx(1.0, abs=1e-12)
    assert cap_area_fraction(r, 0.0) == 0.0
    grid = [cap_area_fraction(r, k * math.pi / 40) for k in range(41)]
    assert all(a < b for a, b in zip(grid, grid[1:]))


# 50-digit quadrature reference values
@pytest.mark.parametrize("r, rho, expected", [
    (4, 0.3, 0.0056273251346833224037642128117533620235326638644754),
    (4, 1.0, 0.17359070596374243801894258899451848950362696387239),
    (4, 2.5, 0.94839225382292549425931850630710391123810688028032),
    (5, 0.3, 0.0014738478837631422665969274147115211010675437839029),
    (5, 1.0, 0.13420542191164356788249985864262182900097044486394),
    (5, 2.5, 0.97230799110983932777957152814862878488930398623222),
    (7, 0.3, 0.00010767278485390519336401006187836307714373354201453),
    (7, 1.0, 0.083413496673352449861993248049731659981672623887364),
    (7, 2.5, 0.99157824390773422073401641939815037713846822225052),
])
def test_cap_fraction_against_reference(r, rho, expected):
    assert cap_area_fraction(r, rho) == pytest.approx(expected, abs=1e-11)


def test_cap_fraction_rejects_bad_radius():
    with pytest.raises(InvalidParams):
        cap_area_fraction(3, -0.1)
    with pytest.raises(InvalidParams):
        cap_area_fraction(3, 4.0)


def test_cap_bound_octahedron_case():
    value = cap_cos_lower(3, 6)
    assert value == pytest.approx(-1 / 9, abs=1e-8)
    assert value <= -1 / 9
    assert value <= 0.0  # exact value cos(pi/2) = 0


def test_cap_bound_antipodal():
    assert cap_cos_lower(3, 2) == -1.0


@pytest.mark.parametrize("n", range(3, 65))
def test_cap_bound_reproduces_polygon(n):
    value = cap_cos_lower(2, n, allow_circle=True)
    assert value == pytest.approx(math.cos(2 * math.pi / n), abs=1e-8)
    assert value <= math.cos(2 * math.pi / n)


def test_cap_bound_requires_rank_three():
    with pytest.raises(InvalidParams):
        cap_cos_lower(2, 5)


@pytest.mark.parametrize("r, n", [(3, 4), (3, 12), (4, 24), (8, 240)])
def test_cap_bound_below_known_codes(r, n):
    # tetrahedron, icosahedron, 24-cell, E8 root system: all optimal or near-optimal codes
    known = {(3, 4): -1 / 3, (3, 12): 1 / math.sqrt(5), (4, 24): 0.5, (8, 240): 0.5}[(r, n)]
    assert cap_cos_lower(r, n) <= known


