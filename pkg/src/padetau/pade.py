"""Hermite-Pade approximants and their dual simultaneous approximants.

For a normalized family f_0 = 1, f_1, ..., f_{L-1} (each f_i(0) = 0) and a
degree parameter n >= 1, the type-I table is the L x L array of polynomials
Q^(i)_j with deg Q^(i)_j <= n - 1 + delta_ij, Q^(i)_i(0) = 1 for i != 0,
and remainders

    rho^i = Q^(i)_i f_i + sum_{j != i} w Q^(i)_j f_j
          = w^{Ln} (delta_{i,0} + O(w)).

Each row is the solution of one exact Toeplitz-block linear system; the
family is degenerate when a system determinant vanishes. The dual table P
satisfies the product identity Q(w) P(w)^T = w^{nL} I (with the entry
weights w^{1-delta_ij} folded into both matrices) and is constructed from
the adjugate of Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ConsistencyError, DegenerateFamily, InsufficientOrder, SingularMatrix
from .linalg import ToeplitzBlockSpec, hstack, solve_exact, toeplitz_block
from .series import Polynomial, SeriesFamily, TruncatedSeries

__all__ = [
    "PolyMatrix",
    "HermitePadeResult",
    "hermite_pade",
    "q_matrix",
    "simultaneous_pade",
    "mahler_duality_check",
    "schlesinger_matrix",
    "simultaneous_condition_table",
]


class PolyMatrix:
    """Immutable square matrix of exact polynomials in one variable."""

    __slots__ = ("_entries", "_size", "_var")

    def __init__(self, entries: Sequence[Sequence[Polynomial]], var: str = "w"):
        rows = tuple(tuple(e for e in row) for row in entries)
        size = len(rows)
        for row in rows:
            if len(row) != size:
                raise ValueError("polynomial matrix must be square")
            for e in row:
                if not isinstance(e, Polynomial):
                    raise TypeError("entries must be Polynomial")
        self._entries = rows
        self._size = size
        self._var = var

    @classmethod
    def monomial_identity(cls, size: int, power: int, var: str = "w") -> PolyMatrix:
        """diag(v^power, ..., v^power)."""
        mono = Polynomial.one().shift(power)
        zero = Polynomial.zero()
        return cls(
            [[mono if i == j else zero for j in range(size)] for i in range(size)],
            var=var,
        )

    @classmethod
    def identity(cls, size: int, var: str = "w") -> PolyMatrix:
        return cls.monomial_identity(size, 0, var)

    @property
    def size(self) -> int:
        return self._size

    @property
    def var(self) -> str:
        return self._var

    @property
    def entries(self) -> tuple[tuple[Polynomial, ...], ...]:
        return self._entries

    def entry(self, i: int, j: int) -> Polynomial:
        return self._entries[i][j]

    def transpose(self) -> PolyMatrix:
        n = self._size
        return PolyMatrix(
            [[self._entries[j][i] for j in range(n)] for i in range(n)], var=self._var
        )

    def __mul__(self, other):
        if isinstance(other, PolyMatrix):
            if other._size != self._size or other._var != self._var:
                raise ValueError("size or variable mismatch")
            n = self._size
            return PolyMatrix(
                [
                    [
                        sum(
                            (self._entries[i][k] * other._entries[k][j] for k in range(n)),
                            Polynomial.zero(),
                        )
                        for j in range(n)
                    ]
                    for i in range(n)
                ],
                var=self._var,
            )
        if isinstance(other, (int, Fraction)):
            return PolyMatrix(
                [[e * other for e in row] for row in self._entries], var=self._var
            )
        return NotImplemented

    def minor(self, i: int, j: int) -> PolyMatrix:
        return PolyMatrix(
            [
                [e for c, e in enumerate(row) if c != j]
                for r, row in enumerate(self._entries)
                if r != i
            ],
            var=self._var,
        )

    def det(self) -> Polynomial:
        """Cofactor expansion along the first column; fine at this scale."""
        n = self._size
        if n == 0:
            return Polynomial.one()
        if n == 1:
            return self._entries[0][0]
        acc = Polynomial.zero()
        for i in range(n):
            head = self._entries[i][0]
            if head.is_zero():
                continue
            term = head * self.minor(i, 0).det()
            acc = acc + term if i % 2 == 0 else acc - term
        return acc

    def adjugate(self) -> PolyMatrix:
        """adj with self * adj = det * I (classical adjugate)."""
        n = self._size
        if n == 0:
            return self
        if n == 1:
            return PolyMatrix([[Polynomial.one()]], var=self._var)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                m = self.minor(j, i).det()
                row.append(m if (i + j) % 2 == 0 else -m)
            out.append(row)
        return PolyMatrix(out, var=self._var)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self._var == other._var and self._entries == other._entries

    def __repr__(self) -> str:
        return f"PolyMatrix({self._size}x{self._size}, var={self._var!r})"


@dataclass(frozen=True)
class HermitePadeResult:
    """One full type-I table: row i approximates with weight on f_i.

    q_table[i][j] is Q^(i)_j; c_vectors[i] is the raw solution vector of
    row i's linear system; remainders[i] is rho^i carried to its tightest
    provable order; vanishing lists the i >= 1 whose remainder is
    identically zero on the trusted window (reported, not an error).
    """

    family: SeriesFamily
    n: int
    q_table: tuple[tuple[Polynomial, ...], ...]
    c_vectors: tuple[tuple[Fraction, ...], ...]
    remainders: tuple[TruncatedSeries, ...]
    vanishing: tuple[int, ...]

    @property
    def size(self) -> int:
        return self.family.size


def _row_remainder(fam: SeriesFamily, qrow: Sequence[Polynomial], i: int) -> TruncatedSeries:
    """rho^i = Q^(i)_i f_i + sum_{j != i} w Q^(i)_j f_j, tightest window.

    The f_0 factor is the constant 1 (exact at every order by the family
    invariant), so the j = 0 term never limits the trust window.
    """
    L = fam.size
    n_order = fam.order
    finite: list[int] = []
    for j in range(L):
        p = qrow[j]
        if p.is_zero() or j == 0:
            continue
        val = p.valuation()
        finite.append(n_order + (0 if j == i else 1) + val)
    target = min(finite) if finite else n_order + 1
    acc = TruncatedSeries.zero(target)
    for j in range(L):
        p = qrow[j].shift(0 if j == i else 1)
        if p.is_zero():
            continue
        if j == 0:
            acc = acc + p.as_series(target)
        else:
            acc = acc + p.times_series(fam.series(j)).truncate(target)
    return acc


def hermite_pade(fam: SeriesFamily, n: int) -> HermitePadeResult:
    """Solve all L type-I rows exactly.

    Raises DegenerateFamily (naming the vanishing determinant: "B" is the
    common square system of order Ln, "B0" the bordered system of order
    Ln+1 for row 0) and InsufficientOrder when fam.order < Ln + 2.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    L = fam.size
    ln = L * n
    if fam.order < ln + 2:
        raise InsufficientOrder(
            f"need order >= {ln + 2} for L={L}, n={n}; have {fam.order}"
        )

    bmat = hstack(
        [toeplitz_block(fam, ToeplitzBlockSpec(j, 0, ln, n)) for j in range(L)]
    )
    rows: list[tuple[Polynomial, ...]] = [()] * L
    vectors: list[tuple[Fraction, ...]] = [()] * L

    for i in range(1, L):
        rhs = [-fam.coefficient(i, k) for k in range(1, ln + 1)]
        try:
            sol = solve_exact(bmat, rhs)
        except SingularMatrix:
            raise DegenerateFamily("type-I system determinant") from None
        qrow = []
        for j in range(L):
            chunk = list(sol[j * n : (j + 1) * n])
            qrow.append(Polynomial([1] + chunk) if j == i else Polynomial(chunk))
        rows[i] = tuple(qrow)
        vectors[i] = tuple(sol)

    bzero = hstack(
        [toeplitz_block(fam, ToeplitzBlockSpec(0, 0, ln + 1, n + 1))]
        + [toeplitz_block(fam, ToeplitzBlockSpec(j, -1, ln + 1, n)) for j in range(1, L)]
    )
    rhs0 = [Fraction(0)] * ln + [Fraction(1)]
    try:
        sol0 = solve_exact(bzero, rhs0)
    except SingularMatrix:
        raise DegenerateFamily("extended type-I system determinant") from None
    qrow0 = [Polynomial(sol0[: n + 1])]
    for j in range(1, L):
        qrow0.append(Polynomial(sol0[n + 1 + (j - 1) * n : n + 1 + j * n]))
    rows[0] = tuple(qrow0)
    vectors[0] = tuple(sol0)

    remainders = tuple(_row_remainder(fam, rows[i], i) for i in range(L))
    vanishing = tuple(i for i in range(1, L) if remainders[i].is_zero())
    return HermitePadeResult(
        family=fam,
        n=n,
        q_table=tuple(rows),
        c_vectors=tuple(vectors),
        remainders=remainders,
        vanishing=vanishing,
    )


def q_matrix(result: HermitePadeResult) -> PolyMatrix:
    """Q(w) with the w^{1-delta_ij} weights folded into the entries."""
    L = result.size
    return PolyMatrix(
        [
            [result.q_table[i][j].shift(0 if i == j else 1) for j in range(L)]
            for i in range(L)
        ],
        var="w",
    )


def simultaneous_pade(result: HermitePadeResult) -> PolyMatrix:
    """The dual table P(w) with Q(w) P(w)^T = w^{nL} I.

    det Q must be c * w^{nL} with c != 0; P^T is adj(Q)/c. With the row
    normalizations in force c = 1, but c is computed, not assumed.
    """
    qm = q_matrix(result)
    ln = result.n * result.size
    d = qm.det()
    if d.is_zero():
        raise DegenerateFamily("det(Q)")
    c = d.coefficient(ln)
    if c == 0:
        raise DegenerateFamily("det(Q)")
    if d != Polynomial.one().shift(ln) * c:
        raise ConsistencyError(f"det Q is not a degree-{ln} monomial: {d!r}")
    return qm.adjugate().transpose() * (1 / c)


def mahler_duality_check(qm: PolyMatrix, pm: PolyMatrix, n: int) -> bool:
    """Exact product identity Q P^T = w^{nL} I."""
    ln = n * qm.size
    return qm * pm.transpose() == PolyMatrix.monomial_identity(qm.size, ln, var=qm.var)


def schlesinger_matrix(result: HermitePadeResult) -> PolyMatrix:
    """R(x) = x^n Q(1/x), a polynomial matrix in x with det R = 1.

    Entry (i, j) is x^{n-1+delta_ij} Q^(i)_j(1/x): the coefficient list of
    Q^(i)_j padded to its degree bound and reversed.
    """
    L = result.size
    n = result.n
    out = []
    for i in range(L):
        row = []
        for j in range(L):
            bound = n - 1 + (1 if i == j else 0)
            cs = list(result.q_table[i][j].coeffs)
            cs.extend([Fraction(0)] * (bound + 1 - len(cs)))
            row.append(Polynomial(list(reversed(cs))))
        out.append(row)
    rm = PolyMatrix(out, var="x")
    if rm.det() != Polynomial.one():
        raise ConsistencyError("det R(x) != 1; normalization broken upstream")
    return rm


def _weighted_components(pm: PolyMatrix) -> list[list[Polynomial | None]]:
    """Strip the w^{1-delta_ij} weight from each entry; None if not divisible."""
    n = pm.size
    table: list[list[Polynomial | None]] = []
    for i in range(n):
        row: list[Polynomial | None] = []
        for j in range(n):
            e = pm.entry(i, j)
            if i == j:
                row.append(e)
            elif e.coefficient(0) != 0:
                row.append(None)
            else:
                row.append(Polynomial(e.coeffs[1:]))
        table.append(row)
    return table


def simultaneous_condition_table(
    result: HermitePadeResult, pm: PolyMatrix
) -> dict[tuple[int, int], bool]:
    """Record which (i, j) satisfy the direct smallness condition verbatim.

    The condition tested is f_0 P^(i)_j - f_j w^{1-delta_ij} P^(i)_0 =
    O(w^{nL}). Its intended index convention is ambiguous at j = 0, so the
    table is reported as observed data; nothing here asserts a pattern.
    """
    fam = result.family
    L = result.size
    ln = result.n * L
    comp = _weighted_components(pm)
    table: dict[tuple[int, int], bool] = {}
    for i in range(L):
        for j in range(L):
            p_ij = comp[i][j]
            p_i0 = comp[i][0]
            if p_ij is None or p_i0 is None:
                table[(i, j)] = False
                continue
            weight = 0 if i == j else 1
            shifted = p_i0.shift(weight)
            if j == 0:
                diff_poly = p_ij - shifted
                head = [diff_poly.coefficient(k) for k in range(ln)]
            else:
                term = shifted.times_series(fam.series(j))
                diff = p_ij.as_series(min(ln, term.order)) - term
                head = list(diff.coeffs)
            table[(i, j)] = all(c == 0 for c in head)
    return table
