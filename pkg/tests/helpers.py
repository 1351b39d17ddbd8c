"""Shared fixtures and independent oracles for the test suite.

Every dual-route assertion checks library output against a second
computation that shares no code with the library: Laplace-expansion
determinants, Cramer solves, schoolbook convolution and long division
for series, first-letter Pfaffian expansion, and a from-scratch residual
for the expansion at irregular infinity.  Oracles work on plain lists of
`fractions.Fraction` so a library bug cannot hide in both routes.
"""

from __future__ import annotations

import random
from fractions import Fraction

from padetau import SeriesFamily, TruncatedSeries

# ---------------------------------------------------------------------------
# random data


def rand_frac(rng: random.Random, span: int = 9, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def rand_family(
    rng: random.Random, size: int, order: int, span: int = 9, den: int = 4
) -> SeriesFamily:
    """f_0 = 1 exactly, each f_i = O(w) with random rational coefficients."""
    members = [TruncatedSeries.constant(1, order)]
    for _ in range(size - 1):
        members.append(
            TruncatedSeries(
                [Fraction(0)] + [rand_frac(rng, span, den) for _ in range(order - 1)],
                order,
            )
        )
    return SeriesFamily(members)


def family_from_rows(rows, order: int | None = None) -> SeriesFamily:
    return SeriesFamily([TruncatedSeries(row, order) for row in rows])


# ---------------------------------------------------------------------------
# exact linear algebra oracles (Laplace and Cramer; small sizes only)


def laplace_det(rows: list[list[Fraction]]) -> Fraction:
    """Cofactor expansion along the first row.  O(m!) — keep m small."""
    m = len(rows)
    if m == 0:
        return Fraction(1)
    if any(len(r) != m for r in rows):
        raise ValueError("not square")
    if m == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    sign = 1
    for c in range(m):
        if rows[0][c] != 0:
            minor = [[row[cc] for cc in range(m) if cc != c] for row in rows[1:]]
            total += sign * rows[0][c] * laplace_det(minor)
        sign = -sign
    return total


def cramer_solve(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    d = laplace_det(rows)
    if d == 0:
        raise ZeroDivisionError("singular system")
    m = len(rows)
    out = []
    for c in range(m):
        replaced = [
            [rhs[r] if cc == c else rows[r][cc] for cc in range(m)] for r in range(m)
        ]
        out.append(laplace_det(replaced) / d)
    return out


# ---------------------------------------------------------------------------
# series oracles on plain coefficient lists (window = trusted length)


def conv_window(a: list[Fraction], b: list[Fraction], win: int) -> list[Fraction]:
    """Schoolbook product of coefficient lists, truncated to length win."""
    out = [Fraction(0)] * win
    for p, ap in enumerate(a):
        if p >= win:
            break
        if ap == 0:
            continue
        for q, bq in enumerate(b):
            if p + q >= win:
                break
            out[p + q] += ap * bq
    return out


def shift_window(a: list[Fraction], k: int, win: int) -> list[Fraction]:
    """Multiply by w^k (k >= 0), truncated to length win."""
    return ([Fraction(0)] * k + list(a))[:win] + [Fraction(0)] * max(
        0, win - k - len(a)
    )


def long_div_inverse(c: list[Fraction], win: int) -> list[Fraction]:
    """Coefficients of 1/c(w) through w^(win-1) by schoolbook long division."""
    c0 = Fraction(c[0])
    if c0 == 0:
        raise ZeroDivisionError("no reciprocal: zero constant term")
    rem = [Fraction(1)] + [Fraction(0)] * (win - 1)
    out = []
    for k in range(win):
        qk = rem[k] / c0
        out.append(qk)
        for j, cj in enumerate(c):
            if k + j >= win:
                break
            rem[k + j] -= qk * Fraction(cj)
    return out


def series_window(s: TruncatedSeries) -> list[Fraction]:
    return list(s.coeffs)


# ---------------------------------------------------------------------------
# Pfaffian oracles


def pf_expand(f, word) -> Fraction:
    """First-letter expansion: Pf = sum_k (-1)^(k-1) f(w_0, w_k) Pf(rest)."""
    w = list(word)
    if len(w) % 2:
        raise ValueError("odd word")
    if not w:
        return Fraction(1)
    total = Fraction(0)
    sign = 1
    for k in range(1, len(w)):
        val = f(w[0], w[k])
        if val != 0:
            total += sign * val * pf_expand(f, w[1:k] + w[k + 1 :])
        sign = -sign
    return total


def position_matrix(f, word) -> list[list[Fraction]]:
    """The skew matrix f(w_p, w_q) indexed by positions of the word."""
    return [[f(a, b) for b in word] for a in word]


# ---------------------------------------------------------------------------
# residual oracle for the expansion at irregular infinity
#
# The library derives the scaled equation and the pole expansion with a
# binomial shortcut; this oracle rebuilds everything with long division
# and convolution only, so the two routes share no formulas.


def ode_residual_oracle(ode, phi, data) -> bool:
    """Check -w^(r+1) Phi' + Phi diag(w^(r-1) T'(1/w)) = Atilde(w) Phi.

    phi is the unit matrix series, data the exponent data; all entries of
    the residual must vanish through w^(N-1) where N = phi.order.
    """
    size = ode.size
    r = ode.rank_at_infinity
    win = phi.order
    pm = [[list(phi.entry(a, b).coeffs) for b in range(size)] for a in range(size)]

    atil = [[[Fraction(0)] * win for _ in range(size)] for _ in range(size)]
    for j in range(1, r + 1):
        k = r - j
        if k < win:
            mat = ode.infinity[j - 1]
            for a in range(size):
                for b in range(size):
                    atil[a][b][k] -= mat.at(a, b)
    for pole in ode.poles:
        inv = long_div_inverse([Fraction(1), -Fraction(pole.position)], win)
        base = shift_window(inv, 1, win)  # (x - a)^(-1) as a w-series
        power = base
        for mat in pole.matrices:
            contrib = shift_window(power, r - 1, win)
            for a in range(size):
                for b in range(size):
                    v = mat.at(a, b)
                    if v != 0:
                        for k in range(win):
                            if contrib[k] != 0:
                                atil[a][b][k] += v * contrib[k]
            power = conv_window(power, base, win)

    tp = []
    for b in range(size):
        col = [Fraction(0)] * (r + 1)
        for j in range(1, r + 1):
            col[r - j] = -Fraction(data.irregular[j - 1][b])
        col[r] = -Fraction(data.exponents[b])
        tp.append(col)

    for a in range(size):
        for b in range(size):
            for k in range(win):
                acc = Fraction(0)
                if k - r >= 1:
                    acc -= (k - r) * pm[a][b][k - r]
                for q in range(min(r, k) + 1):
                    acc += pm[a][b][k - q] * tp[b][q]
                for c in range(size):
                    for p in range(k + 1):
                        if atil[a][c][p] != 0:
                            acc -= atil[a][c][p] * pm[c][b][k - p]
                if acc != 0:
                    return False
    return True


# ---------------------------------------------------------------------------
# report assertion


def assert_identity(report) -> None:
    assert report.lhs == report.rhs, f"{report.name}: {report.lhs} != {report.rhs}"
