"""Genus-2 models y^2 = f(x) over Q, their automorphisms and rational points.

Points live in weighted projective coordinates [X:Y:Z] of weights (1, 3, 1),
so x = X/Z and y = Y/Z^3, and lie on Y^2 = F(X, Z) with
F(X, Z) = sum_i a_i X^i Z^(6-i).

Automorphisms preserve the canonical height of the Jacobian image of a
point. That is assumed by the height bounds but is not checked here,
because canonical heights are never computed in this package.
Points with a nontrivial stabilizer are reported as their own class. The
search proves nothing about them beyond the radius it was run with.
"""
from __future__ import annotations

import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import _kernels
from .errors import CapExceeded, DegeneratePoint, InvalidParams
from .rational import as_rational, integer_sqrt

# ----------------------------------------------------------------------------
# univariate polynomials over Q, coefficient lists in increasing degree


def _trim(poly):
    poly = list(poly)
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def _poly_mul(f, g):
    if not f or not g:
        return []
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return out


def _poly_mod(f, g):
    f = _trim(Fraction(x) for x in f)
    g = _trim(g)
    while len(f) >= len(g):
        factor = f[-1] / g[-1]
        shift = len(f) - len(g)
        for i, b in enumerate(g):
            f[i + shift] -= factor * b
        f = _trim(f)
    return f


def _poly_gcd(f, g):
    f, g = _trim(f), _trim(g)
    while g:
        f, g = g, _poly_mod(f, g)
    return f


def _derivative(f):
    return [i * a for i, a in enumerate(f)][1:]


# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class SexticCurve:
    """The model y^2 = a6 x^6 + ... + a0 with integer coefficients ``coeffs = (a0, ..., a6)``."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(a) for a in self.coeffs)
        if len(coeffs) != 7:
            raise InvalidParams(f"expected 7 coefficients a0..a6, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)
        if self.degree not in (5, 6):
            raise InvalidParams(f"f must have degree 5 or 6 for a genus-2 model, got degree {self.degree}")
        if len(_poly_gcd(list(coeffs), _derivative(list(coeffs)))) > 1:
            raise InvalidParams("f is not squarefree")

    @property
    def degree(self) -> int:
        return len(_trim(self.coeffs)) - 1

    def form(self, X, Z):
        """F(X, Z) evaluated exactly."""
        total = 0
        for i, a in enumerate(self.coeffs):
            if a:
                total += a * X**i * Z ** (6 - i)
        return total

    def __str__(self):
        terms = []
        for i in range(6, -1, -1):
            a = self.coeffs[i]
            if not a:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            coeff = str(a) if (a not in (1, -1) or i == 0) else ("-" if a == -1 else "")
            terms.append(f"{coeff}{mono}")
        return "y^2 = " + " + ".join(terms).replace("+ -", "- ")


_POINT_RE = re.compile(r"^\[\s*(-?\d+)\s*:\s*(-?\d+)\s*:\s*(-?\d+)\s*\]$")


@dataclass(frozen=True, order=True)
class CurvePoint:
    X: int
    Y: int
    Z: int

    @classmethod
    def normalized(cls, X, Y, Z) -> "CurvePoint":
        """Unique representative of [X:Y:Z] with coprime integral X, Z and Z > 0 (or Z = 0, X = 1).

        Rescaling by lambda multiplies (X, Y, Z) by (lambda, lambda^3, lambda).
        """
        X, Y, Z = as_rational(X), as_rational(Y), as_rational(Z)
        if X == 0 and Z == 0:
            raise DegeneratePoint("X and Z both vanish")
        num = math.gcd(X.numerator, Z.numerator)
        den = math.lcm(X.denominator, Z.denominator)
        lam = Fraction(den, num)
        if Z < 0 or (Z == 0 and X < 0):
            lam = -lam
        X, Y, Z = X * lam, Y * lam**3, Z * lam
        if Y.denominator != 1:
            raise DegeneratePoint(f"[{X}:{Y}:{Z}] has non-integral Y after normalisation")
        return cls(int(X), int(Y), int(Z))

    @classmethod
    def parse(cls, text: str) -> "CurvePoint":
        match = _POINT_RE.match(text.strip())
        if not match:
            raise ValueError(f"not a point literal: {text!r}")
        return cls.normalized(*map(int, match.groups()))

    @property
    def x(self) -> Fraction | None:
        return None if self.Z == 0 else Fraction(self.X, self.Z)

    def __str__(self):
        return f"[{self.X}:{self.Y}:{self.Z}]"


def is_on_curve(C: SexticCurve, P: CurvePoint) -> bool:
    return P.Y * P.Y == C.form(P.X, P.Z)


# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Automorphism:
    """[X:Y:Z] -> [aX + bZ : eY : cX + dZ], stored up to the weighted rescaling.

    Coefficients are rescaled so the first nonzero of (a, b, c, d) is 1, which
    makes equality of maps equality of tuples.
    """

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    e: Fraction

    def __post_init__(self):
        a, b, c, d, e = (as_rational(v) for v in (self.a, self.b, self.c, self.d, self.e))
        if a * d - b * c == 0:
            raise InvalidParams("ad - bc must be nonzero")
        if e == 0:
            raise InvalidParams("e must be nonzero")
        lead = next(v for v in (a, b, c, d) if v)
        lam = 1 / lead
        for name, value in zip("abcde", (a * lam, b * lam, c * lam, d * lam, e * lam**3)):
            object.__setattr__(self, name, value)

    @classmethod
    def identity(cls) -> "Automorphism":
        return cls(1, 0, 0, 1, 1)

    @property
    def key(self) -> tuple[Fraction, ...]:
        return (self.a, self.b, self.c, self.d, self.e)

    def __lt__(self, other):
        return self.key < other.key

    def compose(self, other: "Automorphism") -> "Automorphism":
        """``self`` after ``other``."""
        return Automorphism(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.e * other.e,
        )

    def __call__(self, P: CurvePoint) -> CurvePoint:
        return apply_automorphism(self, P)

    def is_identity(self) -> bool:
        return self == Automorphism.identity()

    def __str__(self):
        return "(" + ", ".join(str(v) for v in self.key) + ")"


def verify_automorphism(C: SexticCurve, sigma: Automorphism) -> bool:
    """Check F(aX + bZ, cX + dZ) == e^2 F(X, Z) coefficient by coefficient."""
    lin_x = [sigma.b, sigma.a]
    lin_z = [sigma.d, sigma.c]
    pulled = [Fraction(0)] * 7
    for i, coeff in enumerate(C.coeffs):
        if not coeff:
            continue
        term = [Fraction(coeff)]
        for _ in range(i):
            term = _poly_mul(term, lin_x)
        for _ in range(6 - i):
            term = _poly_mul(term, lin_z)
        for k, v in enumerate(term):
            pulled[k] += v
    e2 = sigma.e * sigma.e
    return all(pulled[k] == e2 * C.coeffs[k] for k in range(7))


def apply_automorphism(sigma: Automorphism, P: CurvePoint) -> CurvePoint:
    X = sigma.a * P.X + sigma.b * P.Z
    Z = sigma.c * P.X + sigma.d * P.Z
    if X == 0 and Z == 0:
        raise DegeneratePoint(f"{sigma} collapses {P}")
    return CurvePoint.normalized(X, sigma.e * P.Y, Z)


def group_closure(gens: Iterable[Automorphism], cap: int = 1024) -> list[Automorphism]:
    """The finite group generated by ``gens``, identity first, then sorted."""
    gens = list(gens)
    identity = Automorphism.identity()
    seen = {identity}
    frontier = [identity]
    while frontier:
        fresh = []
        for elem in frontier:
            for gen in gens:
                prod = gen.compose(elem)
                if prod not in seen:
                    seen.add(prod)
                    fresh.append(prod)
                    if len(seen) > cap:
                        raise CapExceeded(f"generated group has more than {cap} elements")
        frontier = fresh
    return [identity] + sorted(seen - {identity})


def stabilizer(H: Sequence[Automorphism], P: CurvePoint) -> list[Automorphism]:
    return [sigma for sigma in H if apply_automorphism(sigma, P) == P]


def orbit(H: Sequence[Automorphism], P: CurvePoint) -> list[CurvePoint]:
    return sorted({apply_automorphism(sigma, P) for sigma in H})


def classify_points(C: SexticCurve, H: Sequence[Automorphism], points: Iterable[CurvePoint]):
    """Split points into (trivial stabiliser, nontrivial stabiliser) lists."""
    trivial, nontrivial = [], []
    for P in points:
        (trivial if len(stabilizer(H, P)) == 1 else nontrivial).append(P)
    return trivial, nontrivial


# ----------------------------------------------------------------------------


def points_at_infinity(C: SexticCurve) -> list[CurvePoint]:
    a6 = C.coeffs[6]
    if a6 == 0:
        return [CurvePoint(1, 0, 0)]
    root, exact = integer_sqrt(a6) if a6 > 0 else (0, False)
    if not exact:
        return []
    return sorted({CurvePoint(1, root, 0), CurvePoint(1, -root, 0)})


def _exact_points(C: SexticCurve, ps, qs) -> list[CurvePoint]:
    found = []
    for p, q in zip(ps.tolist(), qs.tolist()):
        value = C.form(p, q)
        if value < 0:
            continue
        root, exact = integer_sqrt(value)
        if exact:
            found.append(CurvePoint(p, root, q))
            if root:
                found.append(CurvePoint(p, -root, q))
    return found


def _search_rows(C, B, q_lo, q_hi, tables, backend):
    ps, qs = _kernels.prefilter_block(q_lo, q_hi, B, tables, backend=backend)
    return _exact_points(C, ps, qs)


def enumerate_points(C: SexticCurve, B: int, *, jobs: int = 1, backend: str | None = None,
                     rows_per_task: int = 256) -> list[CurvePoint]:
    """All rational points with x = p/q, max(|p|, q) <= B, plus the points at infinity.

    The q-range is split into blocks; with ``jobs > 1`` blocks run on a thread
    pool (the JIT kernel releases the GIL).  Output is sorted, so it does not
    depend on scheduling.
    """
    if B < 1:
        raise InvalidParams(f"search bound must be >= 1, got {B}")
    tables = _kernels.residue_tables(C.coeffs)
    blocks = [(lo, min(lo + rows_per_task - 1, B)) for lo in range(1, B + 1, rows_per_task)]
    found = set(points_at_infinity(C))
    if jobs <= 1:
        for lo, hi in blocks:
            found.update(_search_rows(C, B, lo, hi, tables, backend))
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            for chunk in pool.map(lambda blk: _search_rows(C, B, blk[0], blk[1], tables, backend), blocks):
                found.update(chunk)
    return sorted(found)
