"""Seeded random generators for families, maps, and matrix series.

Every generator takes an explicit random.Random so that a single seed
makes an entire verification run reproducible byte for byte.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .pfaffian import PairMap, SkewMap
from .series import SeriesFamily, TruncatedSeries
from .tau import MatrixSeries

__all__ = [
    "random_fraction",
    "random_family",
    "random_unit_matrix_series",
    "random_skew_map",
    "random_pair_map",
]


def random_fraction(rng: random.Random, span: int = 9, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def random_family(rng: random.Random, size: int, order: int) -> SeriesFamily:
    """f_0 = 1 and f_i = O(w) with random rational coefficients."""
    members = [TruncatedSeries.constant(1, order)]
    for _ in range(size - 1):
        members.append(
            TruncatedSeries(
                [0] + [random_fraction(rng) for _ in range(order - 1)], order
            )
        )
    return SeriesFamily(members)


def random_unit_matrix_series(
    rng: random.Random, size: int, order: int
) -> MatrixSeries:
    """I plus random higher-order terms in every entry."""
    return MatrixSeries(
        [
            [
                TruncatedSeries(
                    [1 if a == b else 0]
                    + [random_fraction(rng) for _ in range(order - 1)],
                    order,
                )
                for b in range(size)
            ]
            for a in range(size)
        ]
    )


def random_skew_map(rng: random.Random, letters: range | list[int]) -> SkewMap:
    """Dense skew map over the given alphabet."""
    alphabet = sorted(set(int(a) for a in letters))
    table = {}
    for p, i in enumerate(alphabet):
        for j in alphabet[p + 1 :]:
            table[(i, j)] = random_fraction(rng)
    return SkewMap.from_table(table)


def random_pair_map(
    rng: random.Random, rows: range | list[int], cols: range | list[int]
) -> PairMap:
    """Dense pair map over row x column alphabets."""
    table = {
        (int(i), int(j)): random_fraction(rng) for i in rows for j in cols
    }
    return PairMap.from_table(table)
