"""Linear rational ODE systems and their formal expansion at infinity.

The system is dY/dx = A(x) Y with

    A(x) = sum_mu sum_{j=0}^{r_mu} A_{mu,-j} (x - a_mu)^{-j-1}
           - sum_{j=1}^{r} A_{inf,-j} x^{j-1},

and the normalized solution at infinity is Y ~ Phi(w) e^{T(x)}, w = 1/x,
Phi(0) = I, where T(x) = sum_{j=1}^{r} T_{-j} w^{-j}/(-j) + T_0 log w is
diagonal. Only the expansion at infinity is provided, and only when
A_{inf,-r} is diagonal with pairwise-distinct entries.

Substituting Y = Phi e^T and scaling by w^{r-1} gives

    -w^{r+1} Phi_w + Phi S(w) = Atil(w) Phi,      Atil = w^{r-1} A(1/w),

with S diagonal. Phi itself is not determined triangularly by this
equation once r >= 2 (a diagonal coefficient of Phi_{k-1} would feed the
off-diagonal part of Phi_k), so Phi is factored as Phi = Psi D with Psi
carrying unit diagonal and D diagonal: the (Psi, S) recursion closes
order by order, S's low coefficients are the exponent data T, and its
tail integrates to log D.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import (
    InsufficientOrder,
    InvalidPartition,
    NonDiagonalizableLeading,
    ResonantExponents,
    ZeroParameter,
)
from .linalg import ExactMatrix
from .series import TruncatedSeries, rational
from .tau import MatrixSeries

__all__ = [
    "FinitePole",
    "RationalODE",
    "InfinityExponentData",
    "expand_at_infinity",
    "expansion_residual",
    "pii_system",
    "SpectralType",
    "accessory_count",
    "ode_from_dict",
    "ode_to_dict",
]


@dataclass(frozen=True)
class FinitePole:
    """One finite singular point: position a and matrices A_{-0..-r}."""

    position: Fraction
    matrices: tuple[ExactMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "position", rational(self.position))
        object.__setattr__(self, "matrices", tuple(self.matrices))
        if not self.matrices:
            raise ValueError("a pole needs at least the residue matrix")

    @property
    def rank(self) -> int:
        return len(self.matrices) - 1


@dataclass(frozen=True)
class RationalODE:
    """Coefficient data of dY/dx = A(x) Y; infinity[j-1] is A_{inf,-j}."""

    size: int
    poles: tuple[FinitePole, ...]
    infinity: tuple[ExactMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "poles", tuple(self.poles))
        object.__setattr__(self, "infinity", tuple(self.infinity))
        if self.size < 1:
            raise ValueError("size must be >= 1")
        if not self.infinity:
            raise ValueError("rank at infinity must be >= 1")
        for m in self.infinity:
            if m.rows != self.size or m.cols != self.size:
                raise ValueError("infinity matrices must be size x size")
        seen = set()
        for pole in self.poles:
            if pole.position in seen:
                raise ValueError(f"duplicate pole at {pole.position}")
            seen.add(pole.position)
            for m in pole.matrices:
                if m.rows != self.size or m.cols != self.size:
                    raise ValueError("pole matrices must be size x size")

    @property
    def rank_at_infinity(self) -> int:
        return len(self.infinity)


@dataclass(frozen=True)
class InfinityExponentData:
    """Diagonal exponent data at infinity.

    irregular[j-1] holds the diagonal of T_{-j} (j = 1..r); exponents is
    the diagonal of T_0, the characteristic exponents.
    """

    irregular: tuple[tuple[Fraction, ...], ...]
    exponents: tuple[Fraction, ...]

    @property
    def rank(self) -> int:
        return len(self.irregular)


def _a_tilde(ode: RationalODE, upto: int) -> list[ExactMatrix]:
    """Coefficients of w^{r-1} A(1/w) for powers w^0 .. w^upto."""
    L, r = ode.size, ode.rank_at_infinity
    zero = ExactMatrix([[0] * L for _ in range(L)], cols=L)
    out = [zero] * (upto + 1)
    for jp in range(min(r - 1, upto) + 1):
        out[jp] = -ode.infinity[r - 1 - jp]
    # (x - a)^{-j-1} = w^{j+1} (1 - a w)^{-j-1}; scaled by w^{r-1} the pole
    # block contributes to powers r + j and beyond.
    for pole in ode.poles:
        a = pole.position
        for j, mat in enumerate(pole.matrices):
            for jp in range(r + j, upto + 1):
                m = jp - r - j
                coeff = comb(m + j, j) * a**m
                if coeff:
                    out[jp] = out[jp] + mat.scale(coeff)
    return out


def expand_at_infinity(
    ode: RationalODE, order: int
) -> tuple[MatrixSeries, InfinityExponentData]:
    """Normalized formal solution Phi(w) = I + O(w) and its exponent data.

    Phi is returned trusted to the requested order; the exponent data is
    always complete (all of T_{-r}..T_{-1} and T_0).
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    L, r = ode.size, ode.rank_at_infinity
    leading = ode.infinity[r - 1]
    for a in range(L):
        for b in range(L):
            if a != b and leading.at(a, b) != 0:
                raise NonDiagonalizableLeading(
                    "leading matrix at infinity must be diagonal"
                )
    lam = [-leading.at(a, a) for a in range(L)]
    if len(set(lam)) != L:
        raise ResonantExponents("leading diagonal entries must be distinct")

    kmax = r + order - 1
    atil = _a_tilde(ode, kmax)
    psi: list[list[list[Fraction]]] = [
        [[Fraction(1) if a == b else Fraction(0) for b in range(L)] for a in range(L)]
    ]
    stil: list[list[Fraction]] = [list(lam)]
    for k in range(1, kmax + 1):
        balance = [[Fraction(0)] * L for _ in range(L)]
        for jp in range(1, k + 1):
            mat, ps = atil[jp], psi[k - jp]
            for a in range(L):
                row = balance[a]
                for g in range(L):
                    c = mat.at(a, g)
                    if c:
                        pr = ps[g]
                        for b in range(L):
                            row[b] += c * pr[b]
        for jp in range(1, k):
            ps, sd = psi[k - jp], stil[jp]
            for a in range(L):
                row = balance[a]
                for b in range(L):
                    row[b] -= ps[a][b] * sd[b]
        if k - r >= 1:
            ps = psi[k - r]
            for a in range(L):
                row = balance[a]
                for b in range(L):
                    row[b] += (k - r) * ps[a][b]
        stil.append([balance[a][a] for a in range(L)])
        psi.append(
            [
                [
                    balance[a][b] / (lam[b] - lam[a]) if a != b else Fraction(0)
                    for b in range(L)
                ]
                for a in range(L)
            ]
        )

    irregular = tuple(
        tuple(-stil[r - j][a] for a in range(L)) for j in range(1, r + 1)
    )
    exponents = tuple(-stil[r][a] for a in range(L))

    # log of the diagonal factor: (log D)_c = -S_{r+c}/c, then exponentiate
    # column by column via E_m = (1/m) sum c * (log D)_c * E_{m-c}.
    columns: list[list[Fraction]] = []
    for b in range(L):
        ld = [Fraction(0)] + [-stil[r + c][b] / c for c in range(1, order)]
        e = [Fraction(1)] + [Fraction(0)] * (order - 1)
        for m in range(1, order):
            e[m] = sum((c * ld[c] * e[m - c] for c in range(1, m + 1)), start=Fraction(0)) / m
        columns.append(e)

    entries = [
        [
            TruncatedSeries(
                [
                    sum(
                        (psi[p][a][b] * columns[b][m - p] for p in range(m + 1)),
                        start=Fraction(0),
                    )
                    for m in range(order)
                ],
                order,
            )
            for b in range(L)
        ]
        for a in range(L)
    ]
    return MatrixSeries(entries), InfinityExponentData(irregular, exponents)


def expansion_residual(
    ode: RationalODE, phi: MatrixSeries, exponents: InfinityExponentData
) -> tuple[bool, int]:
    """Plug the expansion back into the scaled equation.

    Evaluates -w^{r+1} Phi_w + Phi (w^{r-1} T'(x)) - (w^{r-1} A(1/w)) Phi
    entry by entry and returns (vanishes identically, trusted order of the
    residual window).
    """
    L, r = ode.size, ode.rank_at_infinity
    if phi.size != L:
        raise ValueError("expansion size does not match the system")
    order = phi.order
    if order < 2:
        raise InsufficientOrder("need an expansion of order >= 2")
    n_big = order + r + 1
    atil = _a_tilde(ode, n_big - 1)
    a_series = [
        [
            TruncatedSeries([atil[k].at(a, b) for k in range(n_big)], n_big)
            for b in range(L)
        ]
        for a in range(L)
    ]
    tprime = []
    for b in range(L):
        coeffs = [Fraction(0)] * (r + 1)
        for j in range(1, r + 1):
            coeffs[r - j] -= exponents.irregular[j - 1][b]
        coeffs[r] -= exponents.exponents[b]
        tprime.append(TruncatedSeries(coeffs, n_big))
    all_zero = True
    window = None
    for a in range(L):
        for b in range(L):
            e = phi.entry(a, b)
            dphi = TruncatedSeries(
                [(m + 1) * e.coefficient(m + 1) for m in range(order - 1)],
                order - 1,
            )
            res = -(dphi.shift(r + 1)) + e * tprime[b]
            for g in range(L):
                res = res - a_series[a][g] * phi.entry(g, b)
            if not res.is_zero():
                all_zero = False
            window = res.order if window is None else min(window, res.order)
    return all_zero, window if window is not None else 0


def pii_system(theta, lam, mu, u, t) -> RationalODE:
    """The 2x2 polynomial system whose deformation is Painleve II:

    A(x) = diag(1,-1) x^2 + [[0, u], [-2 mu/u, 0]] x
           + [[mu + t/2, -u lam], [-2(lam mu + theta)/u, -mu - t/2]].
    """
    theta, lam, mu, u, t = (rational(v) for v in (theta, lam, mu, u, t))
    if u == 0:
        raise ZeroParameter("u must be nonzero")
    a2 = ExactMatrix([[1, 0], [0, -1]])
    a1 = ExactMatrix([[0, u], [-2 * mu / u, 0]])
    a0 = ExactMatrix(
        [
            [mu + t / 2, -u * lam],
            [-2 * (lam * mu + theta) / u, -mu - t / 2],
        ]
    )
    return RationalODE(size=2, poles=(), infinity=(-a0, -a1, -a2))


SpectralType = tuple[tuple[int, ...], ...]


def accessory_count(spectral: Sequence[Sequence[int]], L: int, N: int) -> int:
    """2 + (N-1) L^2 - sum of squared multiplicities over all N+1 points."""
    parts = tuple(tuple(int(m) for m in p) for p in spectral)
    if len(parts) != N + 1:
        raise InvalidPartition(f"expected {N + 1} partitions, got {len(parts)}")
    for p in parts:
        if not p or any(m < 1 for m in p):
            raise InvalidPartition(f"invalid partition {p}")
        if sum(p) != L:
            raise InvalidPartition(f"partition {p} does not sum to {L}")
    return 2 + (N - 1) * L * L - sum(m * m for p in parts for m in p)


def _matrix_from_lists(rows: Sequence[Sequence[object]], size: int) -> ExactMatrix:
    m = ExactMatrix([[rational(x) for x in row] for row in rows])
    if m.rows != size or m.cols != size:
        raise ValueError(f"expected {size}x{size} matrix, got {m.rows}x{m.cols}")
    return m


def ode_from_dict(data: dict) -> RationalODE:
    """Parse the JSON shape {v, L, poles: [{position, matrices}], infinity}."""
    if not isinstance(data, dict):
        raise ValueError("ODE spec must be an object")
    if data.get("v") != 1:
        raise ValueError("unsupported ODE spec version")
    size = data.get("L")
    if not isinstance(size, int):
        raise ValueError("L must be an integer")
    poles = []
    for entry in data.get("poles", []):
        poles.append(
            FinitePole(
                position=rational(entry["position"]),
                matrices=tuple(
                    _matrix_from_lists(m, size) for m in entry["matrices"]
                ),
            )
        )
    infinity = tuple(_matrix_from_lists(m, size) for m in data.get("infinity", []))
    return RationalODE(size=size, poles=tuple(poles), infinity=infinity)


def ode_to_dict(ode: RationalODE) -> dict:
    """Inverse of ode_from_dict; rationals as strings."""

    def dump(m: ExactMatrix) -> list[list[str]]:
        return [[str(x) for x in row] for row in m.entries]

    return {
        "v": 1,
        "L": ode.size,
        "poles": [
            {"position": str(p.position), "matrices": [dump(m) for m in p.matrices]}
            for p in ode.poles
        ],
        "infinity": [dump(m) for m in ode.infinity],
    }
