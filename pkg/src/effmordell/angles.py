"""The angle constant tau(g, r, n).

For rank 2 the optimal configuration of ``n`` unit vectors is the regular
n-gon.  For rank >= 3 no exact value is used; instead a spherical-cap
packing argument gives a certified lower bound on ``cos theta(r, n)``:
``n`` unit vectors with pairwise angles >= alpha have pairwise disjoint
caps of angular radius alpha/2, so ``n * cap_area_fraction(r, alpha/2) <= 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from scipy import integrate

from .errors import InvalidParams

SLACK = 1e-9
BISECTION_TOL = 1e-10
QUAD_TOL = 1e-12

RANK_ONE = "rank-one-rule"
POLYGON = "exact-polygon"
CAP_PACKING = "cap-packing"

# cos(2 pi / n) is rational exactly for these n
_RATIONAL_COS = {1: Fraction(1), 2: Fraction(-1), 3: Fraction(-1, 2), 4: Fraction(0), 6: Fraction(1, 2)}


@dataclass(frozen=True)
class TauResult:
    tau: float
    cos_theta_lower: float | None
    method: str
    conservative: bool

    @property
    def applicable(self) -> bool:
        return self.tau > 0


def polygon_cos(n: int) -> float:
    """``cos(2 pi / n)``, exact where it is rational, else rounded down by SLACK."""
    if n in _RATIONAL_COS:
        return float(_RATIONAL_COS[n])
    return math.cos(2 * math.pi / n) - SLACK


def tau(g: int, r: int, n: int) -> TauResult:
    if g < 2 or r < 1 or n < 2:
        raise InvalidParams(f"tau needs g >= 2, r >= 1, n >= 2; got g={g}, r={r}, n={n}")
    if r == 1:
        return TauResult(float(1 - Fraction(1, g)), None, RANK_ONE, False)
    if r == 2:
        c = polygon_cos(n)
        return TauResult(_minus_inverse(c, g), c, POLYGON, False)
    c = cap_cos_lower(r, n)
    return TauResult(_minus_inverse(c, g), c, CAP_PACKING, True)


def _minus_inverse(c: float, g: int) -> float:
    # exact when c is a dyadic rational such as 1/2, which keeps tau(2, 2, 6) == 0
    return float(Fraction(c) - Fraction(1, g))


@lru_cache(maxsize=None)
def _sphere_normaliser(r: int) -> float:
    # integral of sin^(r-2) over [0, pi]
    return math.sqrt(math.pi) * math.exp(math.lgamma((r - 1) / 2) - math.lgamma(r / 2))


def cap_area_fraction(r: int, rho: float) -> float:
    """Normalised measure of a cap of angular radius ``rho`` on the unit sphere in R^r."""
    if r < 2:
        raise InvalidParams(f"cap_area_fraction needs r >= 2, got {r}")
    if not 0 <= rho <= math.pi:
        raise InvalidParams(f"cap radius must lie in [0, pi], got {rho}")
    if r == 2:
        return rho / math.pi
    if r == 3:
        return (1 - math.cos(rho)) / 2
    if rho == math.pi:
        return 1.0
    if rho > math.pi / 2:
        return 1.0 - cap_area_fraction(r, math.pi - rho)
    value, _ = integrate.quad(lambda t: math.sin(t) ** (r - 2), 0.0, rho, epsabs=QUAD_TOL, epsrel=QUAD_TOL, limit=200)
    return value / _sphere_normaliser(r)


def cap_angle_upper(r: int, n: int) -> float:
    """Smallest bisection endpoint alpha with ``n * cap_area_fraction(r, alpha/2) >= 1``.

    The returned angle is >= the largest feasible alpha, hence >= theta(r, n).
    """
    if r < 2 or n < 2:
        raise InvalidParams(f"cap bound needs r >= 2, n >= 2; got r={r}, n={n}")
    lo, hi = 0.0, math.pi
    if n * cap_area_fraction(r, hi / 2) <= 1:
        return hi
    while hi - lo >= BISECTION_TOL:
        mid = 0.5 * (lo + hi)
        if n * cap_area_fraction(r, mid / 2) <= 1:
            lo = mid
        else:
            hi = mid
    return hi


def cap_cos_lower(r: int, n: int, *, allow_circle: bool = False) -> float:
    """Certified lower bound for ``cos theta(r, n)``.

    ``allow_circle`` runs the same construction at r = 2, where it must
    reproduce the regular polygon; it exists to test the bound.
    """
    if r < 3 and not (allow_circle and r == 2):
        raise InvalidParams(f"cap_cos_lower needs r >= 3, got {r}")
    if n < 2:
        raise InvalidParams(f"cap_cos_lower needs n >= 2, got {n}")
    alpha = cap_angle_upper(r, n)
    return max(-1.0, math.cos(alpha) - SLACK)
