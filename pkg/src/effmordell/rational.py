"""Exact rational linear algebra.

Rationals are :class:`fractions.Fraction`; they are always stored reduced
with a positive denominator, and ``str`` renders them as ``p/q`` (``p``
when ``q == 1``).  Matrices are immutable row-major tuples of Fractions.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NegativeInput, NoSolution, NonUniqueSolution

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected: they would silently carry binary rounding into
    exact computations.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError as exc:
            raise ValueError(f"not a rational literal: {value!r}") from exc
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact rational")


def render_rational(q: Fraction) -> str:
    return str(Fraction(q))


def parse_rational(text: str) -> Fraction:
    return as_rational(text)


class RationalMatrix:
    """Immutable dense matrix of exact rationals."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, entries: Iterable[Iterable]):
        data = tuple(tuple(as_rational(x) for x in row) for row in entries)
        if not data:
            raise DimensionMismatch("matrix needs at least one row")
        widths = {len(row) for row in data}
        if len(widths) != 1:
            raise DimensionMismatch(f"ragged rows: widths {sorted(widths)}")
        self.rows = len(data)
        self.cols = widths.pop()
        self._entries = data

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, index):
        i, j = index
        return self._entries[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._entries[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self._entries)

    def tolist(self) -> list[list[Fraction]]:
        return [list(row) for row in self._entries]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(
            self._entries[i][j] == self._entries[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self._entries for x in row)

    def matvec(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} against {self.rows}x{self.cols} matrix")
        v = [as_rational(x) for x in v]
        return [sum((a * x for a, x in zip(row, v)), Fraction(0)) for row in self._entries]

    def permuted(self, perm: Sequence[int]) -> "RationalMatrix":
        """Simultaneous row/column permutation; entry (i, j) becomes (perm[i], perm[j])."""
        return RationalMatrix([[self._entries[pi][pj] for pj in perm] for pi in perm])

    def with_entry(self, i: int, j: int, value) -> "RationalMatrix":
        data = self.tolist()
        data[i][j] = as_rational(value)
        return RationalMatrix(data)

    def stacked(self, extra_rows: Iterable[Iterable]) -> "RationalMatrix":
        return RationalMatrix(self.tolist() + [list(r) for r in extra_rows])

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self):
        return hash(self._entries)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(map(str, row)) + "]" for row in self._entries)
        return f"RationalMatrix([{body}])"


def solve_exact(A: RationalMatrix, b: Sequence) -> list[Fraction]:
    """Return the unique exact solution of ``A x = b`` for an m x n system, m >= n.

    Raises :class:`NoSolution` when the system is inconsistent and
    :class:`NonUniqueSolution` when ``A`` has a nontrivial kernel.
    """
    m, n = A.shape
    if len(b) != m:
        raise DimensionMismatch(f"right-hand side has length {len(b)}, expected {m}")
    if m < n:
        raise NonUniqueSolution(f"underdetermined system: {m} equations in {n} unknowns")

    aug = [list(A.row(i)) + [as_rational(b[i])] for i in range(m)]
    pivot_row = 0
    for col in range(n):
        # largest numerator magnitude keeps intermediate numbers small in practice
        best = None
        for r in range(pivot_row, m):
            x = aug[r][col]
            if x and (best is None or abs(x.numerator) > abs(aug[best][col].numerator)):
                best = r
        if best is None:
            raise NonUniqueSolution(f"column {col} has no pivot; kernel is nontrivial")
        aug[pivot_row], aug[best] = aug[best], aug[pivot_row]
        prow = aug[pivot_row]
        inv = 1 / prow[col]
        for k in range(col, n + 1):
            prow[k] *= inv
        for r in range(m):
            if r != pivot_row and aug[r][col]:
                factor = aug[r][col]
                row = aug[r]
                for k in range(col, n + 1):
                    if prow[k]:
                        row[k] -= factor * prow[k]
        pivot_row += 1

    for r in range(n, m):
        if aug[r][n]:
            raise NoSolution(f"inconsistent equation {r} after elimination")

    x = [aug[i][n] for i in range(n)]
    residual = [lhs - as_rational(rhs) for lhs, rhs in zip(A.matvec(x), b)]
    if any(residual):
        raise NoSolution("nonzero residual after elimination")
    return x


def bilinear_form(u: Sequence, M: RationalMatrix, v: Sequence) -> Fraction:
    """Exact value of ``u^T M v``."""
    if len(u) != M.rows or len(v) != M.cols:
        raise DimensionMismatch(
            f"cannot pair vectors of lengths {len(u)}, {len(v)} through a {M.rows}x{M.cols} matrix"
        )
    Mv = M.matvec(v)
    return sum((as_rational(a) * b for a, b in zip(u, Mv)), Fraction(0))


def integer_sqrt(n: int) -> tuple[int, bool]:
    """Return ``(floor(sqrt(n)), n is a perfect square)``."""
    if n < 0:
        raise NegativeInput(f"integer_sqrt of negative number {n}")
    root = math.isqrt(n)
    return root, root * root == n
