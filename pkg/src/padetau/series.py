"""Exact truncated power series, polynomials, and normalized families.

Every coefficient is a `fractions.Fraction`; nothing here is approximate.
A truncated series carries an explicit trust window: coefficient k is
available iff 0 <= k < order, reading k >= order raises InsufficientOrder
(a programming error, never a silent zero), and k < 0 is exactly zero.
Arithmetic propagates the tightest provable trust window.
"""

from __future__ import annotations

import hashlib
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BadNormalization, InsufficientOrder, ZeroConstantTerm

__all__ = [
    "Rational",
    "rational",
    "TruncatedSeries",
    "Polynomial",
    "SeriesFamily",
    "normalize_family",
]

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def rational(value: int | str | Fraction) -> Fraction:
    """Coerce an int, a "p/q" string, or a Fraction to an exact rational.

    Floats are rejected: this library never rounds.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


class TruncatedSeries:
    """A power series in w known exactly for exponents 0..order-1."""

    __slots__ = ("_coeffs", "_order")

    def __init__(self, coeffs: Iterable[int | str | Fraction], order: int | None = None):
        cs = [rational(c) for c in coeffs]
        if order is None:
            order = len(cs)
        if order < 0:
            raise ValueError("order must be >= 0")
        if len(cs) < order:
            cs.extend([_ZERO] * (order - len(cs)))
        else:
            del cs[order:]
        self._coeffs = tuple(cs)
        self._order = order

    @classmethod
    def zero(cls, order: int) -> TruncatedSeries:
        return cls([], order)

    @classmethod
    def constant(cls, value: int | str | Fraction, order: int) -> TruncatedSeries:
        return cls([rational(value)], order)

    @property
    def order(self) -> int:
        return self._order

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    def coefficient(self, k: int) -> Fraction:
        """b_k for k < order; exactly zero for k < 0."""
        if k < 0:
            return _ZERO
        if k >= self._order:
            raise InsufficientOrder(
                f"coefficient {k} requested but series trusted only below order {self._order}"
            )
        return self._coeffs[k]

    def truncate(self, order: int) -> TruncatedSeries:
        """Shrink the trust window; extending it would fabricate trust."""
        if order > self._order:
            raise InsufficientOrder(
                f"cannot extend trusted order {self._order} to {order}"
            )
        return TruncatedSeries(self._coeffs[:order], order)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self._coeffs)

    def valuation(self) -> int | None:
        """Index of the first nonzero trusted coefficient, None if all zero."""
        for k, c in enumerate(self._coeffs):
            if c != 0:
                return k
        return None

    def shift(self, k: int) -> TruncatedSeries:
        """Multiply by w^k.  For k < 0 the discarded coefficients must be zero."""
        if k >= 0:
            return TruncatedSeries((_ZERO,) * k + self._coeffs, self._order + k)
        drop = -k
        if drop > self._order:
            raise InsufficientOrder(f"cannot shift by {k}: order is {self._order}")
        if any(c != 0 for c in self._coeffs[:drop]):
            raise ValueError(f"shift by {k} would drop a nonzero coefficient")
        return TruncatedSeries(self._coeffs[drop:], self._order - drop)

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        order = min(self._order, other._order)
        return TruncatedSeries(
            [self._coeffs[k] + other._coeffs[k] for k in range(order)], order
        )

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        order = min(self._order, other._order)
        return TruncatedSeries(
            [self._coeffs[k] - other._coeffs[k] for k in range(order)], order
        )

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries([-c for c in self._coeffs], self._order)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            order = min(self._order, other._order)
            out = [_ZERO] * order
            for j, a in enumerate(self._coeffs[:order]):
                if a == 0:
                    continue
                for k in range(order - j):
                    b = other._coeffs[k]
                    if b != 0:
                        out[j + k] += a * b
            return TruncatedSeries(out, order)
        if isinstance(other, (int, Fraction)):
            c = rational(other)
            return TruncatedSeries([c * a for a in self._coeffs], self._order)
        return NotImplemented

    __rmul__ = __mul__

    def invert(self) -> TruncatedSeries:
        """Reciprocal series to the same order.

        Needs a_0 != 0.  Recurrence: b_0 = 1/a_0 and, for m >= 1,
        b_m = -(1/a_0) * sum_{k=1..m} a_k b_{m-k}.
        """
        if self._order == 0:
            raise InsufficientOrder("cannot invert a series with empty trust window")
        a0 = self._coeffs[0]
        if a0 == 0:
            raise ZeroConstantTerm("series has zero constant term")
        inv0 = 1 / a0
        out = [inv0]
        for m in range(1, self._order):
            acc = _ZERO
            for k in range(1, m + 1):
                if self._coeffs[k] != 0:
                    acc += self._coeffs[k] * out[m - k]
            out.append(-inv0 * acc)
        return TruncatedSeries(out, self._order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._order == other._order and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self._coeffs, self._order))

    def __repr__(self) -> str:
        return f"TruncatedSeries({[str(c) for c in self._coeffs]}, order={self._order})"


class Polynomial:
    """Exact polynomial, ascending coefficients, trailing zeros stripped."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[int | str | Fraction]):
        cs = [rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> Polynomial:
        return cls([])

    @classmethod
    def one(cls) -> Polynomial:
        return cls([1])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int | float:
        """Degree, with float('-inf') for the zero polynomial."""
        return len(self._coeffs) - 1 if self._coeffs else float("-inf")

    def is_zero(self) -> bool:
        return not self._coeffs

    def valuation(self) -> int | None:
        for k, c in enumerate(self._coeffs):
            if c != 0:
                return k
        return None

    def coefficient(self, k: int) -> Fraction:
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return _ZERO

    def __add__(self, other: Polynomial) -> Polynomial:
        if not isinstance(other, Polynomial):
            return NotImplemented
        n = max(len(self._coeffs), len(other._coeffs))
        return Polynomial(
            [self.coefficient(k) + other.coefficient(k) for k in range(n)]
        )

    def __sub__(self, other: Polynomial) -> Polynomial:
        if not isinstance(other, Polynomial):
            return NotImplemented
        n = max(len(self._coeffs), len(other._coeffs))
        return Polynomial(
            [self.coefficient(k) - other.coefficient(k) for k in range(n)]
        )

    def __neg__(self) -> Polynomial:
        return Polynomial([-c for c in self._coeffs])

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            if self.is_zero() or other.is_zero():
                return Polynomial.zero()
            out = [_ZERO] * (len(self._coeffs) + len(other._coeffs) - 1)
            for j, a in enumerate(self._coeffs):
                if a == 0:
                    continue
                for k, b in enumerate(other._coeffs):
                    if b != 0:
                        out[j + k] += a * b
            return Polynomial(out)
        if isinstance(other, (int, Fraction)):
            c = rational(other)
            return Polynomial([c * a for a in self._coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def shift(self, k: int) -> Polynomial:
        """Multiply by w^k, k >= 0."""
        if k < 0:
            raise ValueError("polynomial shift must be nonnegative")
        if self.is_zero():
            return self
        return Polynomial((_ZERO,) * k + self._coeffs)

    def as_series(self, order: int) -> TruncatedSeries:
        """The polynomial viewed as an exact series, trusted to any order."""
        return TruncatedSeries(self._coeffs[:order], order)

    def times_series(self, s: TruncatedSeries) -> TruncatedSeries:
        """p * s with the valuation-aware trust window s.order + val(p)."""
        val = self.valuation()
        if val is None:
            return TruncatedSeries.zero(s.order)
        order = s.order + val
        out = [_ZERO] * order
        for j, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for k in range(min(s.order, order - j)):
                b = s.coeffs[k]
                if b != 0:
                    out[j + k] += a * b
        return TruncatedSeries(out, order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self._coeffs]})"


class SeriesFamily:
    """Normalized input data f_0, ..., f_{L-1} for the approximation problem.

    Invariants: f_0 is the constant 1 (exactly, by definition of the
    normalization, so it is trusted at every index), each f_i with i >= 1
    vanishes at w = 0, and all members share one trusted order.
    """

    __slots__ = ("_series", "_order")

    def __init__(self, series: Sequence[TruncatedSeries]):
        if len(series) < 2:
            raise ValueError("a family needs at least two members")
        order = min(s.order for s in series)
        if order < 1:
            raise InsufficientOrder("family members must trust at least order 1")
        members = tuple(s.truncate(order) for s in series)
        f0 = members[0]
        if f0.coefficient(0) != 1 or any(c != 0 for c in f0.coeffs[1:]):
            raise BadNormalization("f_0 must be the constant series 1")
        for i, s in enumerate(members[1:], start=1):
            if s.coefficient(0) != 0:
                raise BadNormalization(f"f_{i} must vanish at w = 0")
        self._series = members
        self._order = order

    @property
    def size(self) -> int:
        return len(self._series)

    @property
    def order(self) -> int:
        return self._order

    @property
    def members(self) -> tuple[TruncatedSeries, ...]:
        return self._series

    def series(self, i: int) -> TruncatedSeries:
        return self._series[i]

    def coefficient(self, i: int, k: int) -> Fraction:
        """b^i_k; k < 0 is exactly zero, k >= order raises InsufficientOrder."""
        return self._series[i].coefficient(k)

    def truncate(self, order: int) -> SeriesFamily:
        return SeriesFamily([s.truncate(order) for s in self._series])

    def fingerprint(self) -> str:
        """Deterministic digest of (L, order, all coefficients)."""
        parts = [str(self.size), str(self._order)]
        for s in self._series:
            parts.append(",".join(str(c) for c in s.coeffs))
        digest = hashlib.sha256(";".join(parts).encode("ascii")).hexdigest()
        return digest[:16]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SeriesFamily):
            return NotImplemented
        return self._series == other._series

    def __repr__(self) -> str:
        return f"SeriesFamily(L={self.size}, order={self._order})"


def normalize_family(column: Sequence[TruncatedSeries]) -> SeriesFamily:
    """Divide a matrix-series first column through by its top entry.

    Given (phi_00, phi_10, ..., phi_{L-1,0}) with phi_00(0) = 1 and
    phi_i0(0) = 0, returns the family f_i = phi_i0 / phi_00 (and f_0 = 1),
    exact to the common trusted order.
    """
    if len(column) < 2:
        raise ValueError("a family needs at least two members")
    order = min(s.order for s in column)
    if order < 1:
        raise InsufficientOrder("column members must trust at least order 1")
    top = column[0].truncate(order)
    if top.coefficient(0) != 1:
        raise BadNormalization("phi_00 must have constant term 1")
    for i, s in enumerate(column[1:], start=1):
        if s.coefficient(0) != 0:
            raise BadNormalization(f"phi_{i}0 must vanish at w = 0")
    inv = top.invert()
    members = [TruncatedSeries.constant(1, order)]
    members.extend(s.truncate(order) * inv for s in column[1:])
    return SeriesFamily(members)
