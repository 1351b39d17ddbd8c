"""Exact dense linear algebra over the rationals.

Determinants and solves run fraction-free: each row is scaled to clear
denominators, elimination is integer Bareiss (exact divisions only), and
the rational answer is recovered at the end. No pivoting heuristics beyond
the first nonzero entry; exactness makes stability a non-issue.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import NotSquare, SingularMatrix
from .series import SeriesFamily, rational

__all__ = [
    "ExactMatrix",
    "ToeplitzBlockSpec",
    "toeplitz_block",
    "hstack",
    "vstack",
    "det_exact",
    "solve_exact",
]

_ZERO = Fraction(0)


class ExactMatrix:
    """Immutable rational matrix (row-major tuples)."""

    __slots__ = ("_entries", "_rows", "_cols")

    def __init__(self, entries: Sequence[Sequence[int | str | Fraction]], cols: int | None = None):
        rows = tuple(tuple(rational(x) for x in row) for row in entries)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
        else:
            if cols is None:
                cols = 0
            width = cols
        self._entries = rows
        self._rows = len(rows)
        self._cols = width

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def entries(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._entries

    def at(self, r: int, c: int) -> Fraction:
        return self._entries[r][c]

    def row(self, r: int) -> tuple[Fraction, ...]:
        return self._entries[r]

    def is_square(self) -> bool:
        return self._rows == self._cols

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(
            [[self._entries[r][c] for r in range(self._rows)] for c in range(self._cols)],
            cols=self._rows,
        )

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self._rows != other._rows or self._cols != other._cols:
            raise ValueError(f"{self!r} + {other!r}")
        return ExactMatrix(
            [
                [self._entries[r][c] + other._entries[r][c] for c in range(self._cols)]
                for r in range(self._rows)
            ],
            cols=self._cols,
        )

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> ExactMatrix:
        return self.scale(-1)

    def scale(self, factor: int | str | Fraction) -> ExactMatrix:
        f = rational(factor)
        return ExactMatrix(
            [[f * x for x in row] for row in self._entries], cols=self._cols
        )

    def __mul__(self, other: ExactMatrix) -> ExactMatrix:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self._cols != other._rows:
            raise ValueError(f"{self!r} * {other!r}")
        return ExactMatrix(
            [
                [
                    sum(
                        (self._entries[r][k] * other._entries[k][c] for k in range(self._cols)),
                        start=Fraction(0),
                    )
                    for c in range(other._cols)
                ]
                for r in range(self._rows)
            ],
            cols=other._cols,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self._cols == other._cols and self._entries == other._entries

    def __repr__(self) -> str:
        return f"ExactMatrix({self._rows}x{self._cols})"


def hstack(blocks: Sequence[ExactMatrix]) -> ExactMatrix:
    """Concatenate blocks left to right; row counts must agree."""
    if not blocks:
        raise ValueError("no blocks")
    rows = blocks[0].rows
    if any(b.rows != rows for b in blocks):
        raise ValueError("row counts differ")
    return ExactMatrix(
        [sum((list(b.row(r)) for b in blocks), []) for r in range(rows)],
        cols=sum(b.cols for b in blocks),
    )


def vstack(blocks: Sequence[ExactMatrix]) -> ExactMatrix:
    """Concatenate blocks top to bottom; column counts must agree."""
    if not blocks:
        raise ValueError("no blocks")
    cols = blocks[0].cols
    if any(b.cols != cols for b in blocks):
        raise ValueError("column counts differ")
    out: list[tuple[Fraction, ...]] = []
    for b in blocks:
        out.extend(b.entries)
    return ExactMatrix(out, cols=cols)


@dataclass(frozen=True)
class ToeplitzBlockSpec:
    """A height x width window onto one family member's coefficients.

    Entry (alpha, beta), 1-based, is b^i_{offset + alpha - beta}; indices
    below zero read as exact zeros, indices at or beyond the trusted order
    raise InsufficientOrder.
    """

    series_index: int
    offset: int
    height: int
    width: int

    def __post_init__(self):
        if self.series_index < 0:
            raise ValueError("series index must be nonnegative")
        if self.height < 0 or self.width < 0:
            raise ValueError("block dimensions must be nonnegative")


def toeplitz_block(fam: SeriesFamily, spec: ToeplitzBlockSpec) -> ExactMatrix:
    s = fam.series(spec.series_index)
    return ExactMatrix(
        [
            [s.coefficient(spec.offset + r - c) for c in range(spec.width)]
            for r in range(spec.height)
        ],
        cols=spec.width,
    )


def _clear_denominators(m: ExactMatrix) -> tuple[list[list[int]], Fraction]:
    """Scale each row to integers; returns (int rows, product of scales)."""
    out: list[list[int]] = []
    scale = Fraction(1)
    for row in m.entries:
        d = lcm(*(x.denominator for x in row)) if row else 1
        scale *= d
        out.append([int(x * d) for x in row])
    return out, scale


def det_exact(m: ExactMatrix) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination. Empty matrix: 1."""
    if not m.is_square():
        raise NotSquare(f"determinant of {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    a, scale = _clear_denominators(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i = a[i]
            head = row_i[k]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - head * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return Fraction(sign * a[n - 1][n - 1]) / scale


def solve_exact(m: ExactMatrix, rhs: Sequence[int | str | Fraction]) -> tuple[Fraction, ...]:
    """Unique solution of m x = rhs for square nonsingular m."""
    if not m.is_square():
        raise NotSquare(f"solve with {m.rows}x{m.cols} matrix")
    n = m.rows
    b = [rational(x) for x in rhs]
    if len(b) != n:
        raise ValueError("rhs length mismatch")
    if n == 0:
        return ()
    aug = ExactMatrix([list(m.row(r)) + [b[r]] for r in range(n)], cols=n + 1)
    a, _ = _clear_denominators(aug)
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    break
            else:
                raise SingularMatrix("zero pivot column")
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i = a[i]
            head = row_i[k]
            row_k = a[k]
            for j in range(k + 1, n + 1):
                row_i[j] = (pivot * row_i[j] - head * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    x: list[Fraction] = [_ZERO] * n
    for i in range(n - 1, -1, -1):
        if a[i][i] == 0:
            raise SingularMatrix("zero pivot in back substitution")
        acc = Fraction(a[i][n])
        for j in range(i + 1, n):
            acc -= a[i][j] * x[j]
        x[i] = acc / a[i][i]
    return tuple(x)
