"""Block Toeplitz determinants, tau-quotients, and Schlesinger steps.

The square system matrix of the approximation problem has determinant D_n;
successive quotients of the isomonodromic tau function are proportional to
D_{n+1}/D_n. Every determinant here is evaluated along two independent
routes (a full form containing the f_0 blocks and a reduced form without
them) and the routes must agree exactly; disagreement raises
ConsistencyError because it can only mean an implementation bug.

Conventions: D_0 = 1. The bordered determinant at (n, i, j) recovers the
remainder coefficient rho^i_j of the type-I problem via

    rho^i_j = (-1)^{(L+i)n} E^{i,j}_n / D_n,

and the exchange identity D_{n+1} D_n^{L-2} = det(E^{i,j}_n)_{1<=i,j<=L-1}
ties the two levels together.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    BadNormalization,
    ConsistencyError,
    DegenerateFamily,
    InsufficientOrder,
)
from .linalg import ExactMatrix, ToeplitzBlockSpec, det_exact, hstack, toeplitz_block, vstack
from .pade import HermitePadeResult, PolyMatrix, hermite_pade, q_matrix, schlesinger_matrix
from .series import Polynomial, SeriesFamily, TruncatedSeries, normalize_family

__all__ = [
    "IdentityReport",
    "tau_determinant",
    "bordered_determinant",
    "remainder_coeff_via_det",
    "sylvester_toeplitz_check",
    "TauQuotientTable",
    "tau_quotient_table",
    "MatrixSeries",
    "characteristic_det",
    "ShiftCheckReport",
    "schlesinger_shift_check",
    "apply_schlesinger",
    "one_step_sign",
]


@dataclass(frozen=True)
class IdentityReport:
    """An exact two-sided check; both values are kept, never just a bool."""

    name: str
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def tau_determinant(fam: SeriesFamily, n: int) -> Fraction:
    """D_n, by both the full (order Ln) and reduced (order (L-1)n) forms."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return Fraction(1)
    L = fam.size
    ln = L * n
    if fam.order < ln:
        raise InsufficientOrder(f"need order >= {ln}; have {fam.order}")
    full = det_exact(
        hstack([toeplitz_block(fam, ToeplitzBlockSpec(j, 0, ln, n)) for j in range(L)])
    )
    reduced = det_exact(
        hstack(
            [
                toeplitz_block(fam, ToeplitzBlockSpec(j, n, (L - 1) * n, n))
                for j in range(1, L)
            ]
        )
    )
    if full != reduced:
        raise ConsistencyError(f"D_{n}: full {full} != reduced {reduced}")
    return full


def bordered_determinant(fam: SeriesFamily, n: int, i: int, j: int) -> Fraction:
    """E^{i,j}_n: D_n's matrix widened in block i and bordered by one row.

    Requires 1 <= i <= L-1 and j >= 1; reads coefficients up to index
    Ln + j, both in the full and in the reduced form.
    """
    L = fam.size
    if not 1 <= i <= L - 1:
        raise ValueError(f"i must be in 1..{L - 1}")
    if j < 1:
        raise ValueError("j must be >= 1")
    if n < 0:
        raise ValueError("n must be >= 0")
    ln = L * n
    if fam.order < ln + j + 1:
        raise InsufficientOrder(f"need order >= {ln + j + 1}; have {fam.order}")

    def widths(t: int) -> tuple[int, int]:
        # (offset bump, width) of block t relative to the D_n layout
        return (1, n + 1) if t == i else (0, n)

    body = []
    border = []
    for t in range(L):
        bump, w = widths(t)
        body.append(toeplitz_block(fam, ToeplitzBlockSpec(t, 0 + bump, ln, w)))
        border.append(
            toeplitz_block(fam, ToeplitzBlockSpec(t, ln + j - 1 + bump, 1, w))
        )
    full = det_exact(vstack([hstack(body), hstack(border)]))

    body_r = []
    border_r = []
    for t in range(1, L):
        bump, w = widths(t)
        body_r.append(
            toeplitz_block(fam, ToeplitzBlockSpec(t, n + bump, (L - 1) * n, w))
        )
        border_r.append(
            toeplitz_block(fam, ToeplitzBlockSpec(t, ln + j - 1 + bump, 1, w))
        )
    reduced = det_exact(vstack([hstack(body_r), hstack(border_r)]))

    if full != reduced:
        raise ConsistencyError(f"E^({i},{j})_{n}: full {full} != reduced {reduced}")
    return full


def remainder_coeff_via_det(fam: SeriesFamily, n: int, i: int, j: int) -> Fraction:
    """rho^i_j from determinants alone: (-1)^{(L+i)n} E^{i,j}_n / D_n."""
    d = tau_determinant(fam, n)
    if d == 0:
        raise DegenerateFamily("type-I system determinant")
    L = fam.size
    sign = -1 if ((L + i) * n) % 2 else 1
    return sign * bordered_determinant(fam, n, i, j) / d


def sylvester_toeplitz_check(fam: SeriesFamily, n: int) -> IdentityReport:
    """Exchange identity D_{n+1} D_n^{L-2} = det(E^{i,j}_n) over i,j = 1..L-1."""
    L = fam.size
    lhs = tau_determinant(fam, n + 1) * tau_determinant(fam, n) ** (L - 2)
    grid = ExactMatrix(
        [
            [bordered_determinant(fam, n, i, j) for j in range(1, L)]
            for i in range(1, L)
        ]
    )
    return IdentityReport("toeplitz_exchange", lhs, det_exact(grid))


@dataclass(frozen=True)
class TauQuotientTable:
    """D_n values and successive quotients for one family.

    ratios[k] = (n, D_{n+1}/D_n), present only where D_n != 0; degenerate
    lists the n with D_n = 0. The exchange identity is re-verified for
    every interior n during construction.
    """

    fingerprint: str
    dets: tuple[tuple[int, Fraction], ...]
    ratios: tuple[tuple[int, Fraction], ...]
    degenerate: tuple[int, ...]


def tau_quotient_table(fam: SeriesFamily, n_max: int) -> TauQuotientTable:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    L = fam.size
    if fam.order < L * n_max:
        raise InsufficientOrder(f"need order >= {L * n_max}; have {fam.order}")
    dets = [(n, tau_determinant(fam, n)) for n in range(n_max + 1)]
    ratios = []
    degenerate = []
    for n, d in dets:
        if d == 0:
            degenerate.append(n)
        elif n < n_max:
            ratios.append((n, dets[n + 1][1] / d))
    for n in range(1, n_max):
        rep = sylvester_toeplitz_check(fam, n)
        if not rep.holds:
            raise ConsistencyError(
                f"exchange identity failed at n={n}: {rep.lhs} != {rep.rhs}"
            )
    return TauQuotientTable(
        fingerprint=fam.fingerprint(),
        dets=tuple(dets),
        ratios=tuple(ratios),
        degenerate=tuple(degenerate),
    )


class MatrixSeries:
    """Square matrix of truncated series with constant term exactly I."""

    __slots__ = ("_entries", "_size", "_order")

    def __init__(self, entries: Sequence[Sequence[TruncatedSeries]]):
        size = len(entries)
        rows = tuple(tuple(row) for row in entries)
        for row in rows:
            if len(row) != size:
                raise ValueError("matrix series must be square")
        if size < 1:
            raise ValueError("matrix series must be nonempty")
        order = min(e.order for row in rows for e in row)
        if order < 1:
            raise InsufficientOrder("matrix series must trust at least order 1")
        rows = tuple(tuple(e.truncate(order) for e in row) for row in rows)
        for r in range(size):
            for c in range(size):
                want = 1 if r == c else 0
                if rows[r][c].coefficient(0) != want:
                    raise BadNormalization("constant term must be the identity")
        self._entries = rows
        self._size = size
        self._order = order

    @property
    def size(self) -> int:
        return self._size

    @property
    def order(self) -> int:
        return self._order

    def entry(self, i: int, j: int) -> TruncatedSeries:
        return self._entries[i][j]

    def first_column(self) -> tuple[TruncatedSeries, ...]:
        return tuple(self._entries[i][0] for i in range(self._size))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixSeries):
            return NotImplemented
        return self._entries == other._entries

    def __repr__(self) -> str:
        return f"MatrixSeries({self._size}x{self._size}, order={self._order})"


def characteristic_det(phi: MatrixSeries) -> Fraction:
    """det of the first-column coefficient block, rows k = 1..L-1.

    Computed both from the raw column entries a^{i,0}_k and from the
    normalized family's coefficients b^i_k; dividing the column by
    phi_00 (a unit series) cannot change this determinant.
    """
    L = phi.size
    if L < 2:
        raise ValueError("need size >= 2")
    if phi.order < L:
        raise InsufficientOrder(f"need order >= {L}; have {phi.order}")
    a_det = det_exact(
        ExactMatrix(
            [
                [phi.entry(i, 0).coefficient(k) for i in range(1, L)]
                for k in range(1, L)
            ]
        )
    )
    fam = normalize_family(phi.first_column())
    b_det = det_exact(
        ExactMatrix(
            [[fam.coefficient(i, k) for i in range(1, L)] for k in range(1, L)]
        )
    )
    if a_det != b_det:
        raise ConsistencyError(f"column det {a_det} != normalized det {b_det}")
    return a_det


def _poly_row_times_column(
    polys: Sequence[Polynomial], column: Sequence[TruncatedSeries]
) -> TruncatedSeries:
    base = min(s.order for s in column)
    finite = [
        column[k].order + p.valuation()
        for k, p in enumerate(polys)
        if not p.is_zero()
    ]
    target = min(finite) if finite else base
    acc = TruncatedSeries.zero(target)
    for k, p in enumerate(polys):
        if p.is_zero():
            continue
        acc = acc + p.times_series(column[k]).truncate(target)
    return acc


@dataclass(frozen=True)
class ShiftCheckReport:
    """Outcome of the exponent-shift verification for one (phi, n)."""

    size: int
    n: int
    available: int
    det_r_one: bool
    failures: tuple[str, ...]

    @property
    def holds(self) -> bool:
        return self.det_r_one and not self.failures


def schlesinger_shift_check(phi: MatrixSeries, n: int) -> ShiftCheckReport:
    """Verify R(1/w) phi(w) diag(w^{-(L-1)n}, w^n, ..., w^n) = I + O(w).

    Equivalently, with U = Q(w) phi(w): every entry of U's column 0 is
    divisible by w^{Ln} with quotient delta_{i,0} + O(w), and the other
    columns satisfy U_{ij}(0) = delta_{ij}. All checks are exact over the
    trusted window; det R(x) = 1 is re-checked as a polynomial identity.
    """
    fam = normalize_family(phi.first_column())
    hp = hermite_pade(fam, n)
    rm = schlesinger_matrix(hp)
    det_r_one = rm.det() == Polynomial.one()
    qm = q_matrix(hp)
    L = phi.size
    ln = L * n
    failures: list[str] = []
    available = None
    for jcol in range(L):
        column = [phi.entry(k, jcol) for k in range(L)]
        for i in range(L):
            u = _poly_row_times_column([qm.entry(i, k) for k in range(L)], column)
            if jcol == 0:
                head = min(ln, u.order)
                if any(u.coefficient(m) != 0 for m in range(head)):
                    failures.append(f"U[{i},0] not divisible by w^{ln}")
                    continue
                room = u.order - ln
                available = room if available is None else min(available, room)
                if room < 1:
                    raise InsufficientOrder(
                        f"cannot see past w^{ln} in U[{i},0]; order {u.order}"
                    )
                want = 1 if i == 0 else 0
                if u.coefficient(ln) != want:
                    failures.append(f"U[{i},0]/w^{ln} has constant term != {want}")
            else:
                want = 1 if i == jcol else 0
                if u.coefficient(0) != want:
                    failures.append(f"U[{i},{jcol}](0) != {want}")
    return ShiftCheckReport(
        size=L,
        n=n,
        available=available if available is not None else 0,
        det_r_one=det_r_one,
        failures=tuple(failures),
    )


def one_step_sign(L: int, n: int) -> int:
    """prod_{i=1..L-1} (-1)^{(L+i)n}; the closed form is a test, not an input."""
    s = 1
    for i in range(1, L):
        if ((L + i) * n) % 2:
            s = -s
    return s


def apply_schlesinger(fam: SeriesFamily, n: int) -> SeriesFamily:
    """One Schlesinger step at the series level: f_i -> rho^i / rho^0.

    The returned family's trusted order is fam.order - (Ln + 1). A member
    that is identically zero on the window (a vanishing remainder) simply
    stays zero; downstream determinants then report the degeneracy.
    """
    hp = hermite_pade(fam, n)
    L = fam.size
    ln = L * n
    new_order = fam.order - (ln + 1)
    try:
        base = hp.remainders[0].shift(-ln)
    except ValueError as exc:
        raise ConsistencyError(f"rho^0 not divisible by w^{ln}: {exc}") from None
    inv = base.invert()
    members = [TruncatedSeries.constant(1, new_order)]
    for i in range(1, L):
        try:
            num = hp.remainders[i].shift(-ln)
        except ValueError as exc:
            raise ConsistencyError(f"rho^{i} not divisible by w^{ln}: {exc}") from None
        members.append((num * inv).truncate(new_order))
    return SeriesFamily(members)
