"""Exact matrices, block stacking, Toeplitz blocks, and elimination."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import cramer_solve, family_from_rows, laplace_det, rand_frac
from padetau import (
    ExactMatrix,
    NotSquare,
    SingularMatrix,
    ToeplitzBlockSpec,
    det_exact,
    hstack,
    solve_exact,
    toeplitz_block,
    vstack,
)

fractions_st = st.fractions(min_value=-9, max_value=9, max_denominator=4)


def square_matrices(max_size: int):
    return st.integers(1, max_size).flatmap(
        lambda m: st.lists(
            st.lists(fractions_st, min_size=m, max_size=m), min_size=m, max_size=m
        )
    )


def test_matrix_construction_and_access():
    m = ExactMatrix([[1, "1/2"], [3, 4]])
    assert m.rows == 2 and m.cols == 2
    assert m.at(0, 1) == Fraction(1, 2)
    assert m.row(1) == (Fraction(3), Fraction(4))
    assert m.is_square()
    assert ExactMatrix.identity(3).at(2, 2) == 1
    empty = ExactMatrix([], cols=0)
    assert empty.rows == 0 and empty.cols == 0
    with pytest.raises(ValueError):
        ExactMatrix([[1, 2], [3]])


def test_matrix_arithmetic():
    a = ExactMatrix([[1, 2], [3, 4]])
    b = ExactMatrix([[0, 1], [1, 0]])
    assert a + b == ExactMatrix([[1, 3], [4, 4]])
    assert a - a == ExactMatrix([[0, 0], [0, 0]])
    assert -a == a.scale(-1)
    assert a * b == ExactMatrix([[2, 1], [4, 3]])
    assert a * ExactMatrix.identity(2) == a
    assert a.transpose() == ExactMatrix([[1, 3], [2, 4]])
    with pytest.raises(ValueError):
        a + ExactMatrix([[1], [2]])
    with pytest.raises(ValueError):
        a * ExactMatrix([[1, 2, 3]])


def test_stacking():
    a = ExactMatrix([[1], [2]])
    b = ExactMatrix([[3], [4]])
    assert hstack([a, b]) == ExactMatrix([[1, 3], [2, 4]])
    assert vstack([a, b]) == ExactMatrix([[1], [2], [3], [4]])
    with pytest.raises(ValueError):
        hstack([])
    with pytest.raises(ValueError):
        hstack([a, ExactMatrix([[1]])])


def test_toeplitz_block_entries():
    fam = family_from_rows([[1, 0, 0, 0, 0], [0, 1, 2, 3, 4]])
    spec = ToeplitzBlockSpec(series_index=1, offset=2, height=3, width=2)
    block = toeplitz_block(fam, spec)
    for r in range(3):
        for c in range(2):
            k = 2 + r - c
            expected = fam.coefficient(1, k) if k >= 0 else Fraction(0)
            assert block.at(r, c) == expected
    with pytest.raises(ValueError):
        ToeplitzBlockSpec(series_index=-1, offset=0, height=1, width=1)
    with pytest.raises(ValueError):
        ToeplitzBlockSpec(series_index=0, offset=0, height=-1, width=1)


@settings(max_examples=60)
@given(square_matrices(5))
def test_det_matches_laplace_oracle(rows):
    assert det_exact(ExactMatrix(rows)) == laplace_det(
        [[Fraction(x) for x in row] for row in rows]
    )


def test_det_edge_cases():
    assert det_exact(ExactMatrix([], cols=0)) == 1
    assert det_exact(ExactMatrix([[Fraction(-7, 3)]])) == Fraction(-7, 3)
    singular = ExactMatrix([[1, 2], [2, 4]])
    assert det_exact(singular) == 0
    with pytest.raises(NotSquare):
        det_exact(ExactMatrix([[1, 2]]))


def test_det_known_value_with_pivoting():
    m = ExactMatrix([[0, 1, 2], [1, 0, 3], [4, -3, 8]])
    assert det_exact(m) == -2


@settings(max_examples=40)
@given(square_matrices(4), st.integers(0, 2**32 - 1))
def test_solve_matches_cramer_oracle(rows, seed):
    rng = random.Random(seed)
    m = ExactMatrix(rows)
    rhs = [rand_frac(rng) for _ in range(m.rows)]
    exact_rows = [[Fraction(x) for x in row] for row in rows]
    if laplace_det(exact_rows) == 0:
        with pytest.raises(SingularMatrix):
            solve_exact(m, rhs)
        return
    sol = solve_exact(m, rhs)
    assert list(sol) == cramer_solve(exact_rows, rhs)
    for r in range(m.rows):
        assert sum(m.at(r, c) * sol[c] for c in range(m.cols)) == rhs[r]


def test_solve_rejects_singular():
    with pytest.raises(SingularMatrix):
        solve_exact(ExactMatrix([[1, 1], [2, 2]]), [1, 1])
