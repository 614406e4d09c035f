"""Binary d-vectors in reverse-lexicographic order.

Coordinate 1 is the fastest-varying bit, so a vector's 0-based *position*
is ``sum(bits[h] << h)`` and its 1-based index is ``position + 1``.  For
d=3 the order reads 000, 100, 010, 110, 001, 101, 011, 111.  Every vector
and matrix layout in the package follows this convention.

Positions are plain Python ints, which lets sparse objects (pmfs,
polynomial coefficients, copula weights) live in dimensions far above the
dense cap ``MAX_DIM``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator

from .errors import DimensionOutOfRange, MalformedInput

MAX_DIM = 20


def check_dim(d: int, lo: int = 1, hi: int = MAX_DIM) -> int:
    if not isinstance(d, int) or isinstance(d, bool) or not lo <= d <= hi:
        raise DimensionOutOfRange(f"dimension {d!r} outside [{lo}, {hi}]", d=d)
    return d


@dataclass(frozen=True, order=True)
class BitVector:
    """An element of {0,1}^d, serialized as a bitstring with coordinate 1 leftmost."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise MalformedInput(f"bits must be 0/1, got {self.bits!r}")

    @classmethod
    def parse(cls, text: str) -> "BitVector":
        if not text or set(text) - {"0", "1"}:
            raise MalformedInput(f"not a bitstring: {text!r}")
        return cls(tuple(int(c) for c in text))

    @classmethod
    def from_position(cls, pos: int, d: int) -> "BitVector":
        return cls(tuple((pos >> h) & 1 for h in range(d)))

    @property
    def d(self) -> int:
        return len(self.bits)

    @property
    def position(self) -> int:
        return sum(b << h for h, b in enumerate(self.bits))

    @property
    def index(self) -> int:
        """1-based position in the reverse-lexicographic listing."""
        return self.position + 1

    @property
    def weight(self) -> int:
        return sum(self.bits)

    def complement(self) -> "BitVector":
        return BitVector(tuple(1 - b for b in self.bits))

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)

    def __len__(self) -> int:
        return len(self.bits)


def enumerate_vectors(d: int) -> list[BitVector]:
    """All 2^d vectors of length ``d`` in reverse-lexicographic order."""
    check_dim(d)
    return [BitVector.from_position(p, d) for p in range(1 << d)]


def complement_position(pos: int, d: int) -> int:
    return ((1 << d) - 1) ^ pos


def popcount(pos: int) -> int:
    return bin(pos).count("1")


def bits_of(pos: int, d: int) -> tuple[int, ...]:
    return tuple((pos >> h) & 1 for h in range(d))


def to_bitstring(pos: int, d: int) -> str:
    return "".join("1" if (pos >> h) & 1 else "0" for h in range(d))


def parse_position(text: str, d: int | None = None) -> int:
    """Position of a bitstring; checks its length against ``d`` when given."""
    bv = BitVector.parse(text)
    if d is not None and bv.d != d:
        raise MalformedInput(f"bitstring {text!r} has length {bv.d}, expected {d}")
    return bv.position


def embed_s(i: BitVector) -> BitVector:
    """Append a trailing zero: the (d-1)-vector ``i`` becomes ``s_i = (i, 0)``."""
    return BitVector(i.bits + (0,))


def star_levels(d: int) -> tuple[int, int]:
    """The two admissible sum levels (M_d, m_d) of a minimal-sum support."""
    if d % 2 == 0:
        return d // 2, d // 2
    return (d - 1) // 2, (d + 1) // 2


def n_star_formula(d: int) -> int:
    if d % 2:
        return comb(d - 1, (d - 1) // 2) + comb(d - 1, (d + 1) // 2)
    return comb(d - 1, d // 2)


@dataclass(frozen=True)
class StarSets:
    d: int
    M: int
    m: int
    x_star: frozenset[BitVector]
    i_star: tuple[BitVector, ...]

    @property
    def n_star(self) -> int:
        return len(self.i_star)


@lru_cache(maxsize=None)
def star_sets(d: int) -> StarSets:
    check_dim(d, lo=2)
    M, m = star_levels(d)
    levels = {M, m}
    x_star = frozenset(
        BitVector.from_position(p, d) for p in range(1 << d) if popcount(p) in levels
    )
    i_star = tuple(
        BitVector.from_position(p, d - 1) for p in range(1 << (d - 1)) if popcount(p) in levels
    )
    return StarSets(d=d, M=M, m=m, x_star=x_star, i_star=i_star)


def star_positions(d: int) -> list[int]:
    """Positions of I*_{d-1} in reverse-lexicographic order; no dimension cap."""
    M, m = star_levels(d)
    levels = {M, m}
    return [p for p in range(1 << (d - 1)) if popcount(p) in levels]


def iter_subsets(d: int) -> Iterable[frozenset[int]]:
    """All subsets of {1..d} as frozensets, ordered by bitmask."""
    for mask in range(1 << d):
        yield frozenset(h + 1 for h in range(d) if (mask >> h) & 1)
