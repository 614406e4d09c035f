"""The polytope SB_d of d-variate Bernoulli pmfs with all marginal means 1/2.

A :class:`Pmf` stores its atoms sparsely (reverse-lexicographic position to
positive mass), so two-point laws in dimension 100 cost nothing.  Operations
that need the dense vector or the whole hypercube keep the ``MAX_DIM`` cap.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, MalformedInput, NotAPmf, NotSymmetricMarginals
from .hypercube import (
    BitVector,
    MAX_DIM,
    check_dim,
    complement_position,
    parse_position,
    popcount,
    star_levels,
    to_bitstring,
)
from .rational_linalg import RationalMatrix, format_fraction, rank, to_fraction

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Pmf:
    """A validated element of SB_d.  Build through :func:`validate` or :meth:`from_atoms`."""

    d: int
    masses: Mapping[int, Fraction] = field(repr=False)

    @classmethod
    def from_atoms(cls, d: int, atoms: Mapping, check: bool = True) -> "Pmf":
        """Sparse constructor; keys may be positions, BitVectors or bitstrings."""
        check_dim(d, hi=10**6)
        masses: dict[int, Fraction] = {}
        for key, value in atoms.items():
            pos = _position(key, d)
            q = to_fraction(value)
            if pos in masses:
                raise MalformedInput(f"duplicate atom {to_bitstring(pos, d)}")
            masses[pos] = q
        if check:
            _check(d, masses)
        return cls(d, {p: q for p, q in sorted(masses.items()) if q != 0})

    def __call__(self, x) -> Fraction:
        return self.masses.get(_position(x, self.d), Fraction(0))

    @property
    def support(self) -> list[int]:
        return list(self.masses)

    @property
    def values(self) -> tuple[Fraction, ...]:
        """Dense vector of length 2^d in reverse-lexicographic order."""
        check_dim(self.d)
        zero = Fraction(0)
        return tuple(self.masses.get(p, zero) for p in range(1 << self.d))

    def atoms(self) -> dict[str, Fraction]:
        return {to_bitstring(p, self.d): q for p, q in self.masses.items()}

    def __eq__(self, other) -> bool:
        return isinstance(other, Pmf) and self.d == other.d and dict(self.masses) == dict(other.masses)

    def __hash__(self) -> int:
        return hash((self.d, tuple(self.masses.items())))

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}: {format_fraction(v)}" for k, v in self.atoms().items())
        return f"Pmf(d={self.d}, {{{inner}}})"

    def to_json(self) -> dict:
        return {"d": self.d, "atoms": {k: format_fraction(v) for k, v in self.atoms().items()}}

    @classmethod
    def from_json(cls, data) -> "Pmf":
        if not isinstance(data, dict) or "d" not in data:
            raise MalformedInput("pmf JSON needs a 'd' field")
        d = data["d"]
        if "atoms" in data:
            if not isinstance(data["atoms"], dict):
                raise MalformedInput("'atoms' must be an object")
            return cls.from_atoms(d, data["atoms"])
        if "values" in data:
            return validate(data["values"], d)
        raise MalformedInput("pmf JSON needs 'values' or 'atoms'")


def _position(key, d: int) -> int:
    if isinstance(key, BitVector):
        if key.d != d:
            raise MalformedInput(f"vector {key} has length {key.d}, expected {d}")
        return key.position
    if isinstance(key, str):
        return parse_position(key, d)
    if isinstance(key, int) and not isinstance(key, bool) and 0 <= key < (1 << d):
        return key
    raise MalformedInput(f"not an atom of {{0,1}}^{d}: {key!r}")


def _check(d: int, masses: Mapping[int, Fraction]) -> None:
    for p, q in masses.items():
        if q < 0:
            raise NotAPmf(f"negative mass {q} at {to_bitstring(p, d)}", constraint="negativity")
    total = sum(masses.values(), Fraction(0))
    if total != 1:
        raise NotAPmf(f"total mass {total} != 1", constraint="normalization")
    for h in range(d):
        mean = sum((q for p, q in masses.items() if (p >> h) & 1), Fraction(0))
        if mean != HALF:
            raise NotSymmetricMarginals(
                f"marginal {h + 1} has mean {mean}, expected 1/2", constraint="marginal", h=h + 1
            )


def validate(values: Sequence, d: int) -> Pmf:
    """Check a dense candidate vector against the constraints defining SB_d."""
    check_dim(d)
    if len(values) != 1 << d:
        raise NotAPmf(f"expected {1 << d} values, got {len(values)}", constraint="length")
    return Pmf.from_atoms(d, {p: v for p, v in enumerate(values)})


def marginal_matrix(d: int) -> RationalMatrix:
    """H_d: row h is (1 - 2 x_h) over the hypercube; ``H_d f = 0`` on SB_d."""
    check_dim(d)
    return RationalMatrix.from_rows(
        [[1 - 2 * ((p >> h) & 1) for p in range(1 << d)] for h in range(d)]
    )


def independence(d: int) -> Pmf:
    check_dim(d)
    w = Fraction(1, 1 << d)
    return Pmf(d, {p: w for p in range(1 << d)})


def upper_frechet(d: int) -> Pmf:
    return Pmf(d, {0: HALF, (1 << d) - 1: HALF})


def two_point(x, d: int | None = None) -> Pmf:
    """The kernel element with mass 1/2 on ``x`` and on its complement."""
    if isinstance(x, str):
        d = len(x)
    elif isinstance(x, BitVector):
        d = x.d
    pos = _position(x, d)
    return Pmf(d, dict(sorted({pos: HALF, complement_position(pos, d): HALF}.items())))


def mixture(parts: Iterable[tuple[Fraction, Pmf]]) -> Pmf:
    """Convex combination ``sum w_k f_k``; weights must be nonnegative and sum to 1."""
    parts = [(to_fraction(w), f) for w, f in parts]
    if not parts:
        raise NotAPmf("empty mixture", constraint="normalization")
    d = parts[0][1].d
    if any(f.d != d for _, f in parts):
        raise DimensionMismatch("mixture of pmfs of different dimension")
    if any(w < 0 for w, _ in parts) or sum(w for w, _ in parts) != 1:
        raise NotAPmf("mixture weights must be nonnegative and sum to 1", constraint="normalization")
    acc: dict[int, Fraction] = {}
    for w, f in parts:
        if w == 0:
            continue
        for p, q in f.masses.items():
            acc[p] = acc.get(p, Fraction(0)) + w * q
    return Pmf(d, {p: q for p, q in sorted(acc.items()) if q != 0})


def kernel_basis(d: int) -> list[Pmf]:
    """The 2^(d-1) two-point palindromic pmfs, ordered by their support point ending in 0."""
    check_dim(d, lo=2)
    return [two_point(p, d) for p in range(1 << (d - 1))]


def is_palindromic(f: Pmf) -> bool:
    return all(f.masses.get(complement_position(p, f.d)) == q for p, q in f.masses.items())


def palindromize(f: Pmf) -> Pmf:
    """The palindromic pmf ``(f(x) + f(1-x)) / 2``."""
    acc: dict[int, Fraction] = {}
    for p, q in f.masses.items():
        for r in (p, complement_position(p, f.d)):
            acc[r] = acc.get(r, Fraction(0)) + q / 2
    return Pmf(f.d, dict(sorted(acc.items())))


@dataclass(frozen=True)
class SumDistribution:
    """Law of S = X_1 + ... + X_d; ``probs[k] = P(S = k)``."""

    d: int
    probs: tuple[Fraction, ...]

    @property
    def mean(self) -> Fraction:
        return sum((k * p for k, p in enumerate(self.probs)), Fraction(0))

    @property
    def variance(self) -> Fraction:
        mu = self.mean
        return sum(((k - mu) ** 2 * p for k, p in enumerate(self.probs)), Fraction(0))

    @property
    def support(self) -> list[int]:
        return [k for k, p in enumerate(self.probs) if p]


def sum_distribution(f: Pmf) -> SumDistribution:
    probs = [Fraction(0)] * (f.d + 1)
    for p, q in f.masses.items():
        probs[popcount(p)] += q
    return SumDistribution(f.d, tuple(probs))


def stop_loss(s: SumDistribution, k: int) -> Fraction:
    """E[(S - k)^+]."""
    return sum(((j - k) * p for j, p in enumerate(s.probs) if j > k), Fraction(0))


def stop_loss_vector(s: SumDistribution) -> tuple[Fraction, ...]:
    return tuple(stop_loss(s, k) for k in range(s.d + 1))


class CxOrder(enum.Enum):
    SMALLER = "Smaller"
    LARGER = "Larger"
    EQUAL = "Equal"
    INCOMPARABLE = "Incomparable"


def cx_compare(f: Pmf, g: Pmf) -> CxOrder:
    """Convex order of the sums of ``f`` and ``g``.

    Both sums are integer valued with mean d/2, so comparing stop-loss
    transforms at k = 0..d decides the order completely.
    """
    if f.d != g.d:
        raise DimensionMismatch(f"dimensions {f.d} and {g.d} differ")
    a = stop_loss_vector(sum_distribution(f))
    b = stop_loss_vector(sum_distribution(g))
    le = all(x <= y for x, y in zip(a, b))
    ge = all(x >= y for x, y in zip(a, b))
    if le and ge:
        return CxOrder.EQUAL
    if le:
        return CxOrder.SMALLER
    if ge:
        return CxOrder.LARGER
    return CxOrder.INCOMPARABLE


def is_star_position(pos: int, d: int) -> bool:
    return popcount(pos) in star_levels(d)


def is_sigma_cx_smallest(f: Pmf) -> bool:
    """Support contained in X_d^*, the vectors whose sum is M_d or m_d."""
    return all(is_star_position(p, f.d) for p in f.masses)


def is_joint_mix(f: Pmf) -> bool:
    return len(sum_distribution(f).support) == 1


def is_vertex(f: Pmf) -> bool:
    """Extreme point test: the constraint columns (H_d // 1) on supp(f) are independent."""
    supp = f.support
    if len(supp) > f.d + 1:
        return False
    cols = [[1 - 2 * ((p >> h) & 1) for p in supp] for h in range(f.d)]
    cols.append([1] * len(supp))
    return rank(RationalMatrix.from_rows(cols)) == len(supp)


def star_kernel_positions(d: int) -> list[int]:
    """Kernel-basis indices whose two-point support lies in X_d^*."""
    return [p for p in range(1 << (d - 1)) if is_star_position(p, d)]


def two_point_support(f: Pmf) -> int | None:
    """The support point ending in 0 if ``f`` is a kernel-basis element, else None."""
    if len(f.masses) != 2:
        return None
    p, r = f.support
    if complement_position(p, f.d) != r or f.masses[p] != HALF:
        return None
    return p if not (p >> (f.d - 1)) & 1 else r
