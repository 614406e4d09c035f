"""Generating every pmf of SB_d whose sum is minimal in convex order.

The polynomial of a minimal-sum pmf is supported on I*_{d-1} and its
coefficient vector ``a`` solves ``A_d a = 0``.  Each nonzero solution gives
a type-0 pmf; mixing it with two-point kernel pmfs supported on X_d^*
reaches the rest of the minimal class.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    DimensionMismatch,
    DimensionOutOfRange,
    InvalidLambda,
    KernelElementNotStar,
    NotAPmf,
    NotMinCx,
    ZeroCombination,
)
from .hypercube import check_dim, parse_position, popcount, star_levels, star_positions, to_bitstring
from .pmf import Pmf, is_star_position, mixture, star_kernel_positions, two_point
from .polyrep import PolyRep, type0
from .rational_linalg import RationalMatrix, Vector, format_fraction, nullspace_basis, rank, to_fraction


@dataclass(frozen=True)
class MinCxSystem:
    d: int
    columns: tuple[int, ...]
    matrix: RationalMatrix
    rank: int
    basis: tuple[Vector, ...]

    @property
    def n_star(self) -> int:
        return len(self.columns)

    @property
    def nullity(self) -> int:
        return len(self.basis)

    def column_labels(self) -> list[str]:
        return [to_bitstring(p, self.d - 1) for p in self.columns]

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "columns": self.column_labels(),
            "matrix": self.matrix.to_json(),
            "rank": self.rank,
            "nullity": self.nullity,
            "basis": [[format_fraction(x) for x in v] for v in self.basis],
        }


def system_matrix(d: int) -> tuple[tuple[int, ...], RationalMatrix]:
    """Columns (I*_{d-1} in reverse-lexicographic order) and the matrix A_d.

    d even: all-ones row over the coordinate rows.  d odd: indicator rows of
    the columns with sum M_d and with sum m_d, then the coordinate rows.
    """
    check_dim(d, lo=3)
    cols = tuple(star_positions(d))
    M, m = star_levels(d)
    coord_rows = [[(p >> j) & 1 for p in cols] for j in range(d - 1)]
    if d % 2 == 0:
        head = [[1] * len(cols)]
    else:
        head = [[int(popcount(p) == M) for p in cols], [int(popcount(p) == m) for p in cols]]
    return cols, RationalMatrix.from_rows(head + coord_rows)


def build_system(d: int) -> MinCxSystem:
    cols, a = system_matrix(d)
    basis = tuple(nullspace_basis(a))
    return MinCxSystem(d=d, columns=cols, matrix=a, rank=a.cols - len(basis), basis=basis)


def coefficient_conditions(d: int, coeffs: Mapping[int, Fraction]) -> dict[str, bool]:
    """Evaluate the three coefficient conditions directly on a full coefficient map.

    ``support``: zero outside I*_{d-1}; ``order_sums``: coefficients of each
    monomial order sum to zero; ``variable_sums``: for each z_j the
    coefficients of monomials containing z_j sum to zero.
    """
    levels = set(star_levels(d))
    by_order: dict[int, Fraction] = {}
    by_var = [Fraction(0)] * (d - 1)
    for pos, q in coeffs.items():
        by_order[popcount(pos)] = by_order.get(popcount(pos), Fraction(0)) + q
        for j in range(d - 1):
            if (pos >> j) & 1:
                by_var[j] += q
    return {
        "support": all(popcount(p) in levels for p, q in coeffs.items() if q),
        "order_sums": all(v == 0 for v in by_order.values()),
        "variable_sums": all(v == 0 for v in by_var),
    }


def star_poly(sys: MinCxSystem, a: Sequence) -> PolyRep:
    """Polynomial with coefficient vector ``a`` over I*_{d-1}, checked against the conditions."""
    if len(a) != sys.n_star:
        raise DimensionMismatch(f"expected {sys.n_star} coefficients, got {len(a)}")
    a = [to_fraction(x) for x in a]
    if not any(a):
        raise ZeroCombination("the zero coefficient vector has no type-0 pmf")
    poly = PolyRep(sys.d, {p: q for p, q in zip(sys.columns, a) if q})
    failed = [k for k, ok in coefficient_conditions(sys.d, poly.coeffs).items() if not ok]
    if failed:
        raise NotMinCx(f"coefficients violate: {', '.join(failed)}", conditions=",".join(failed))
    return poly


def combine(sys: MinCxSystem, combination: Sequence) -> Vector:
    if len(combination) != sys.nullity:
        raise DimensionMismatch(f"expected {sys.nullity} basis weights, got {len(combination)}")
    c = [to_fraction(x) for x in combination]
    return tuple(
        sum((ck * v[i] for ck, v in zip(c, sys.basis)), Fraction(0)) for i in range(sys.n_star)
    )


def mincx_poly(sys: MinCxSystem, combination: Sequence) -> PolyRep:
    """Polynomial of the nullspace combination ``sum c_k basis[k]``."""
    return star_poly(sys, combine(sys, combination))


def _kernel_mixture(d: int, kernel_mix: Mapping) -> Pmf:
    parts = []
    for key, w in kernel_mix.items():
        pos = parse_position(key, d) if isinstance(key, str) else int(key)
        if (pos >> (d - 1)) & 1:
            pos = ((1 << d) - 1) ^ pos
        if not is_star_position(pos, d):
            raise KernelElementNotStar(
                f"kernel element {to_bitstring(pos, d)} is not supported on X_d^*",
                element=to_bitstring(pos, d),
            )
        parts.append((to_fraction(w), two_point(pos, d)))
    return mixture(parts)


def generate_from_poly(poly: PolyRep | None, lam=1, kernel_mix: Mapping | None = None) -> Pmf:
    """``lam * type0(poly) + (1 - lam) * kernel``, the kernel mixing star two-point pmfs.

    A missing or zero polynomial means the pure kernel-mixture branch, which
    is the only one available when the nullspace is trivial.
    """
    lam = to_fraction(lam)
    if poly is None or poly.is_zero():
        if not kernel_mix:
            raise ZeroCombination("zero polynomial and no kernel mixture")
        d = poly.d if poly is not None else _mix_dim(kernel_mix)
        return _kernel_mixture(d, kernel_mix)
    if not 0 < lam <= 1:
        raise InvalidLambda(f"lambda must lie in (0, 1], got {lam}", value=lam)
    f_star = type0(poly)
    if lam == 1:
        return f_star
    if not kernel_mix:
        raise NotAPmf("lambda < 1 needs a kernel mixture", constraint="normalization")
    return mixture([(lam, f_star), (1 - lam, _kernel_mixture(poly.d, kernel_mix))])


def _mix_dim(kernel_mix: Mapping) -> int:
    key = next(iter(kernel_mix))
    if not isinstance(key, str):
        raise DimensionMismatch("pass bitstring keys or a polynomial to fix the dimension")
    return len(key)


def generate_mincx(sys: MinCxSystem, combination: Sequence | None, lam=1,
                   kernel_mix: Mapping | None = None) -> Pmf:
    """Minimal-sum pmf from nullspace weights, lambda and a star kernel mixture."""
    if combination is None or not any(to_fraction(c) for c in combination):
        if not kernel_mix:
            raise ZeroCombination("zero combination and no kernel mixture")
        return _kernel_mixture(sys.d, kernel_mix)
    return generate_from_poly(mincx_poly(sys, combination), lam, kernel_mix)


@dataclass(frozen=True)
class RandomDraw:
    pmf: Pmf
    combination: tuple[int, ...]
    lam: Fraction
    kernel_mix: dict[str, Fraction]


def random_mincx(sys: MinCxSystem, rng: random.Random) -> RandomDraw:
    """One seeded draw from the minimal class.

    Nullspace weights are integers uniform on [-3, 3] (the zero vector is
    redrawn); lambda is uniform on {1/8, ..., 8/8}; the kernel part picks
    1 to 4 distinct star two-point pmfs with integer weights uniform on
    [1, 9], normalized.  A trivial nullspace yields the kernel part alone.
    """
    d = sys.d
    combo: tuple[int, ...] = ()
    lam = Fraction(0)
    if sys.nullity:
        while not any(combo):
            combo = tuple(rng.randint(-3, 3) for _ in range(sys.nullity))
        lam = Fraction(rng.randint(1, 8), 8)
    kernel: dict[str, Fraction] = {}
    if lam < 1:
        star = star_kernel_positions(d)
        picks = rng.sample(star, rng.randint(1, min(4, len(star))))
        raw = {to_bitstring(p, d): rng.randint(1, 9) for p in picks}
        total = sum(raw.values())
        kernel = {k: Fraction(v, total) for k, v in raw.items()}
    f = generate_mincx(sys, combo or None, lam if combo else 1, kernel or None)
    return RandomDraw(f, combo, lam, kernel)


@dataclass(frozen=True)
class RankRow:
    d: int
    rank_d: int
    rank_next: int

    @property
    def holds(self) -> bool:
        return self.rank_d == self.rank_next == self.d


def rank_property_check(d_max: int) -> list[RankRow]:
    """rank(A_d) and rank(A_{d+1}) for every odd d in 3..d_max."""
    if not 3 <= d_max <= 12:
        raise DimensionOutOfRange(f"d_max must lie in [3, 12], got {d_max}", d=d_max)
    return [
        RankRow(d, rank(system_matrix(d)[1]), rank(system_matrix(d + 1)[1]))
        for d in range(3, d_max + 1, 2)
    ]
