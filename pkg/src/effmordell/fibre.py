"""Special fibres of a minimal regular model and their fibral invariants.

All quantities here are geometric intersection numbers; the ``log N(p)``
scaling only enters when the fibral terms are folded into ``M(X)``.
Component indices are 0-based throughout the library.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DegreeNotZero, EmptyJp, InvalidParams, MultiplicityNotOne
from .rational import RationalMatrix, as_rational, bilinear_form, solve_exact

# failure names reported by validate_fibre
SHAPE = "shape"
PRIME_NORM = "prime_norm"
MULTIPLICITY = "multiplicity_positive"
GENERA = "genera_nonnegative"
INTEGRALITY = "integer_entries"
SYMMETRY = "symmetry"
OFF_DIAGONAL = "off_diagonal_nonnegative"
DIAGONAL = "diagonal_sign"
TRIVIALITY = "fibre_triviality"
CONNECTIVITY = "connectivity"
GENUS_IDENTITY = "genus_identity"


@dataclass(frozen=True)
class FibreData:
    prime_norm: int
    multiplicities: tuple[int, ...]
    genera: tuple[int, ...]
    intersection: RationalMatrix

    def __post_init__(self):
        object.__setattr__(self, "multiplicities", tuple(int(m) for m in self.multiplicities))
        object.__setattr__(self, "genera", tuple(int(x) for x in self.genera))
        if not isinstance(self.intersection, RationalMatrix):
            object.__setattr__(self, "intersection", RationalMatrix(self.intersection))

    @property
    def size(self) -> int:
        return len(self.multiplicities)

    @property
    def multiplicity_one(self) -> list[int]:
        """Indices of components of multiplicity one (the set J_p)."""
        return [j for j, m in enumerate(self.multiplicities) if m == 1]

    def permuted(self, perm: Sequence[int]) -> "FibreData":
        return FibreData(
            self.prime_norm,
            tuple(self.multiplicities[p] for p in perm),
            tuple(self.genera[p] for p in perm),
            self.intersection.permuted(perm),
        )


@dataclass(frozen=True)
class FibreValidationReport:
    genus_from_fibre: Fraction | None
    mu_p: Fraction | None
    failures: tuple[str, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.failures


def _connected(M: RationalMatrix) -> bool:
    s = M.rows
    seen = {0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in range(s):
            if j not in seen and (M[i, j] > 0 or M[j, i] > 0):
                seen.add(j)
                queue.append(j)
    return len(seen) == s


def validate_fibre(F: FibreData, g: int) -> FibreValidationReport:
    """Check every structural invariant of ``F`` against genus ``g``.

    Violations are collected, never raised, so a hand-assembled fibre gets a
    complete diagnosis in one pass.
    """
    failures = []
    s = F.size
    M = F.intersection
    if s < 1 or len(F.genera) != s or M.shape != (s, s):
        return FibreValidationReport(None, None, (SHAPE,))
    if F.prime_norm < 2:
        failures.append(PRIME_NORM)
    if any(m < 1 for m in F.multiplicities):
        failures.append(MULTIPLICITY)
    if any(x < 0 for x in F.genera):
        failures.append(GENERA)
    if not M.is_integral():
        failures.append(INTEGRALITY)
    if not M.is_symmetric():
        failures.append(SYMMETRY)
    if any(M[i, j] < 0 for i in range(s) for j in range(s) if i != j):
        failures.append(OFF_DIAGONAL)
    if s == 1:
        if M[0, 0] != 0:
            failures.append(DIAGONAL)
    elif any(M[i, i] > 0 for i in range(s)):
        failures.append(DIAGONAL)

    m = F.multiplicities
    if any(sum(m[j] * M[i, j] for j in range(s)) != 0 for i in range(s)):
        failures.append(TRIVIALITY)
    if not _connected(M):
        failures.append(CONNECTIVITY)

    mu = -sum((m[j] * M[j, j] for j in range(s)), Fraction(0))
    canonical_degree = mu + sum(2 * (F.genera[j] - 1) * m[j] for j in range(s))
    genus_from_fibre = canonical_degree / 2 + 1
    if genus_from_fibre != g:
        failures.append(GENUS_IDENTITY)
    return FibreValidationReport(genus_from_fibre, mu, tuple(failures))


def phi_correction(F: FibreData, g: int, d: Sequence) -> list[Fraction]:
    """Coefficients of the fibral correction for a divisor with local intersections ``d``.

    ``d[i]`` is the geometric intersection of component ``i`` with the
    finite part of the divisor.  The result ``a`` sums to zero and satisfies
    ``M a = d``.
    """
    s = F.size
    if len(d) != s:
        raise InvalidParams(f"expected {s} local intersections, got {len(d)}")
    d = [as_rational(x) for x in d]
    if sum(m * x for m, x in zip(F.multiplicities, d)) != 0:
        raise DegreeNotZero("sum of m_i * d_i must vanish for a fibre-degree-0 divisor")
    A = F.intersection.stacked([[1] * s])
    return solve_exact(A, d + [Fraction(0)])


def xi_rhs(F: FibreData, g: int, k: int) -> list[Fraction]:
    """Right-hand side of the system attached to the multiplicity-one component ``k``."""
    M = F.intersection
    rhs = []
    for i in range(F.size):
        value = Fraction(2 * (F.genera[i] - 1)) - M[i, i]
        if i == k:
            value -= Fraction(2 * (g - 1), F.multiplicities[i])
        rhs.append(value)
    return rhs


def xi_solution(F: FibreData, g: int, k: int) -> list[Fraction]:
    """Solve for the correction of ``omega - 2(g-1) D_P`` when ``D_P`` meets component ``k``."""
    if not 0 <= k < F.size:
        raise InvalidParams(f"component index {k} out of range for a fibre with {F.size} components")
    if F.multiplicities[k] != 1:
        raise MultiplicityNotOne(f"component {k} has multiplicity {F.multiplicities[k]}")
    return phi_correction(F, g, xi_rhs(F, g, k))


def xi_self_intersections(F: FibreData, g: int) -> dict[int, Fraction]:
    """Self-intersection of the correction for every multiplicity-one component."""
    out = {}
    for k in F.multiplicity_one:
        b = xi_solution(F, g, k)
        out[k] = bilinear_form(b, F.intersection, b)
    return out


def phi_p(F: FibreData, g: int) -> Fraction:
    """The invariant phi_p: worst absolute self-intersection over multiplicity-one components."""
    if F.size == 1:
        return Fraction(0)
    values = xi_self_intersections(F, g)
    if not values:
        raise EmptyJp("no component of multiplicity one; phi_p is never needed for such a fibre")
    return max(abs(v) for v in values.values())
