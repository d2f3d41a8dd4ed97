"""Explicit constants of the effective Mordell bound.

Heights are normalised to the base field K (no division by [K:Q]).
Neron-Tate heights and pairings are never computed here; they enter as
caller-supplied numbers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .angles import TauResult
from .errors import InvalidParams, NegativePhip, TauNotPositive

REPORT_SLACK = 1e-6


def _check_int(name, value, minimum):
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise InvalidParams(f"{name} must be an integer >= {minimum}, got {value!r}")


def _check_real(name, value):
    if not isinstance(value, (int, float)) or isinstance(value, bool) or not math.isfinite(value):
        raise InvalidParams(f"{name} must be a finite real, got {value!r}")


def wilms_floor(g: int, degK: int) -> float:
    """Lower bound for the sum of delta-invariants over the degK complex embeddings."""
    _check_int("g", g, 1)
    _check_int("degK", degK, 1)
    return -2 * degK * g * math.log(2 * math.pi**4)


def delta_sum_from_faltings(g: int, degK: int, hJ_upper: float) -> float:
    """Upper bound for the delta-sum from an upper bound on the Faltings height of the jacobian."""
    _check_int("g", g, 1)
    _check_int("degK", degK, 1)
    _check_real("hJ_upper", hJ_upper)
    return 12 * hJ_upper + 4 * g * degK * math.log(2 * math.pi)


def faltings_upper_via_isogeny(h_target_related: float, degK: int, isogeny_degree: int) -> float:
    """Transfer a Faltings height upper bound across an isogeny of principally polarised varieties."""
    _check_real("h_target_related", h_target_related)
    _check_int("degK", degK, 1)
    _check_int("isogeny_degree", isogeny_degree, 1)
    return h_target_related + degK / 2 * math.log(isogeny_degree)


def product_faltings_height(factor_heights: Iterable[float]) -> float:
    """Faltings height of a product of abelian varieties, the sum of the factor heights.

    Used for the E x E route, where h(E x E) = 2 h(E).
    """
    heights = list(factor_heights)
    if not heights:
        raise InvalidParams("need at least one factor height")
    for h in heights:
        _check_real("factor height", h)
    return math.fsum(heights)


def m_constant(g: int, degK: int, delta_sum_upper: float, fibral: Sequence[tuple[int, float]]) -> float:
    """The constant M(X) from a delta-sum bound and the (N(p), phi_p) pairs of the bad fibres."""
    _check_int("g", g, 2)
    _check_int("degK", degK, 1)
    _check_real("delta_sum_upper", delta_sum_upper)
    fibral_sum = []
    for norm, phi in fibral:
        _check_int("prime norm", norm, 2)
        if phi < 0:
            raise NegativePhip(f"phi_p must be >= 0, got {phi} at N(p) = {norm}")
        fibral_sum.append(float(phi) * math.log(norm))
    archimedean = (g - 1) ** 2 / 3 * max(6, g + 1) * delta_sum_upper
    fibral_term = 2 * (g + 1) * math.fsum(fibral_sum)
    constant = 2 * degK * g * (g - 1) ** 2 * (3 * g * math.log(g) + 16)
    return math.fsum([archimedean, fibral_term, constant])


def genus2_m_constant(delta: float, fibral: Sequence[tuple[int, float]]) -> float:
    """Closed form of M(X) for genus 2 over Q: 2 delta + 6 sum phi_p log p + 8 (3 log 2 + 8)."""
    return 2 * delta + 6 * math.fsum(float(phi) * math.log(p) for p, phi in fibral) + 8 * (3 * math.log(2) + 8)


def neron_tate_bound(M: float, g: int, tau: TauResult) -> float:
    """Bound on the Neron-Tate height of j(P) for points with trivial stabiliser."""
    _check_real("M", M)
    if M <= 0:
        raise InvalidParams(f"M must be positive, got {M}")
    _check_int("g", g, 2)
    if not tau.tau > 0:
        raise TauNotPositive(tau.tau)
    return M / (2 * g * tau.tau)


def gap_cos_bound(hP: float, hQ: float, g: int, M: float) -> float:
    """Upper bound on the cosine of the angle between j(P) and j(Q) in J(K) (x) R."""
    if not (hP > 0 and hQ > 0):
        raise InvalidParams(f"heights must be positive, got {hP}, {hQ}")
    _check_int("g", g, 2)
    return M / (2 * g * math.sqrt(hP * hQ)) + (math.sqrt(hP / hQ) + math.sqrt(hQ / hP)) / (2 * g)


def gap_defect(hP: float, hQ: float, pairing: float, g: int, M: float) -> tuple[float, bool]:
    """Left side of the explicit gap inequality and whether it clears ``-M``."""
    lhs = hP + hQ - 2 * g * pairing
    return lhs, lhs >= -M


def x_height_bound(nt_bound: float, c_X: float) -> float:
    """Bound on h(x(P)) from 2 h(x(P)) <= h^(j(P)) + c_X."""
    _check_real("nt_bound", nt_bound)
    _check_real("c_X", c_X)
    return (nt_bound + c_X) / 2


@dataclass(frozen=True)
class HeightBoundReport:
    """Outcome of the bound chain; ``neron_tate_bound`` is None when tau <= 0."""

    M: float
    tau_used: TauResult
    neron_tate_bound: float | None
    x_height_bound: float | None
    provenance: dict = field(default_factory=dict)

    @property
    def applicable(self) -> bool:
        return self.neron_tate_bound is not None


def round_up(value: float, digits: int = 6) -> float:
    """Add REPORT_SLACK and round upward to ``digits`` decimals; bounds stay valid."""
    scale = 10**digits
    return math.ceil((value + REPORT_SLACK) * scale) / scale
