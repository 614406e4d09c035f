"""Polynomial images of symmetric Bernoulli pmfs.

A pmf f in SB_d maps to the multilinear polynomial in z_1..z_{d-1} whose
coefficient on z^i is ``f(s_i) - f(1_d - s_i)`` with ``s_i = (i, 0)``.
Coefficients are stored sparsely, keyed by the reverse-lexicographic
position of ``i`` in {0,1}^(d-1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    DimensionMismatch,
    InvalidLambda,
    KernelNotPalindromic,
    MalformedInput,
    NotInIdeal,
    ZeroPolynomial,
)
from .hypercube import check_dim, complement_position, parse_position, to_bitstring
from .pmf import Pmf, is_palindromic, mixture
from .rational_linalg import format_fraction, to_fraction


@dataclass(frozen=True)
class PolyRep:
    d: int
    coeffs: Mapping[int, Fraction] = field(repr=False)

    @classmethod
    def from_coeffs(cls, d: int, coeffs: Mapping) -> "PolyRep":
        """Keys are positions in {0,1}^(d-1) or bitstrings of length d-1."""
        check_dim(d, lo=1, hi=10**6)
        out = {}
        for k, v in coeffs.items():
            pos = parse_position(k, d - 1) if isinstance(k, str) else k
            if not isinstance(pos, int) or not 0 <= pos < 1 << (d - 1):
                raise MalformedInput(f"bad monomial key {k!r}")
            q = to_fraction(v)
            if q:
                out[pos] = q
        return cls(d, dict(sorted(out.items())))

    @classmethod
    def from_dense(cls, d: int, values: Sequence) -> "PolyRep":
        if len(values) != 1 << (d - 1):
            raise DimensionMismatch(f"expected {1 << (d - 1)} coefficients, got {len(values)}")
        return cls.from_coeffs(d, dict(enumerate(values)))

    def __getitem__(self, i) -> Fraction:
        pos = parse_position(i, self.d - 1) if isinstance(i, str) else i
        return self.coeffs.get(pos, Fraction(0))

    @property
    def dense(self) -> tuple[Fraction, ...]:
        check_dim(self.d)
        zero = Fraction(0)
        return tuple(self.coeffs.get(p, zero) for p in range(1 << (self.d - 1)))

    def is_zero(self) -> bool:
        return not self.coeffs

    def scale(self, c) -> "PolyRep":
        c = to_fraction(c)
        return PolyRep(self.d, {p: c * q for p, q in self.coeffs.items()} if c else {})

    def __add__(self, other: "PolyRep") -> "PolyRep":
        if self.d != other.d:
            raise DimensionMismatch("polynomials of different dimension")
        acc = dict(self.coeffs)
        for p, q in other.coeffs.items():
            acc[p] = acc.get(p, Fraction(0)) + q
        return PolyRep(self.d, {p: q for p, q in sorted(acc.items()) if q})

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyRep) and self.d == other.d and dict(self.coeffs) == dict(other.coeffs)

    def __hash__(self) -> int:
        return hash((self.d, tuple(self.coeffs.items())))

    def monomial_str(self, pos: int) -> str:
        vars_ = [f"z{j + 1}" for j in range(self.d - 1) if (pos >> j) & 1]
        return "*".join(vars_) or "1"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for p, q in self.coeffs.items():
            mono = self.monomial_str(p)
            mag = abs(q)
            body = format_fraction(mag) if mono == "1" else (mono if mag == 1 else f"{format_fraction(mag)}*{mono}")
            terms.append(("- " if q < 0 else "+ ") + body)
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self) -> str:
        return f"PolyRep(d={self.d}, {self})"

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "coeffs": {to_bitstring(p, self.d - 1): format_fraction(q) for p, q in self.coeffs.items()},
        }

    @classmethod
    def from_json(cls, data) -> "PolyRep":
        if not isinstance(data, dict) or "d" not in data or not isinstance(data.get("coeffs"), dict):
            raise MalformedInput("polynomial JSON needs 'd' and a 'coeffs' object")
        return cls.from_coeffs(data["d"], data["coeffs"])


def to_poly(f: Pmf) -> PolyRep:
    half = 1 << (f.d - 1)
    acc: dict[int, Fraction] = {}
    for p, q in f.masses.items():
        if p < half:
            acc[p] = acc.get(p, Fraction(0)) + q
        else:
            i = complement_position(p, f.d)
            acc[i] = acc.get(i, Fraction(0)) - q
    return PolyRep(f.d, {p: q for p, q in sorted(acc.items()) if q})


def evaluate(p: PolyRep, z: Sequence) -> Fraction:
    """Value of the polynomial at the rational point ``z`` (length d-1)."""
    if len(z) != p.d - 1:
        raise DimensionMismatch(f"point of length {len(z)} for {p.d - 1} variables")
    z = [to_fraction(x) for x in z]
    total = Fraction(0)
    for pos, q in p.coeffs.items():
        term = q
        for j, zj in enumerate(z):
            if (pos >> j) & 1:
                term *= zj
        total += term
    return total


def ideal_points(d: int) -> list[tuple[int, ...]]:
    """1_{d-1} followed by 1_{d-1}^{-j}, j = 1..d-1."""
    ones = [1] * (d - 1)
    pts = [tuple(ones)]
    for j in range(d - 1):
        pt = list(ones)
        pt[j] = -1
        pts.append(tuple(pt))
    return pts


def in_ideal(p: PolyRep) -> bool:
    # signs only: evaluating at +-1 points reduces to parity of shared bits
    for j in range(-1, p.d - 1):
        total = Fraction(0)
        for pos, q in p.coeffs.items():
            total += -q if j >= 0 and (pos >> j) & 1 else q
        if total:
            return False
    return True


def equivalent(p: PolyRep, q: PolyRep) -> Fraction | None:
    """The factor mu > 0 with ``p = mu * q``, or None."""
    if p.d != q.d:
        raise DimensionMismatch("polynomials of different dimension")
    if p.is_zero() or q.is_zero():
        return Fraction(1) if p.is_zero() and q.is_zero() else None
    if p.coeffs.keys() != q.coeffs.keys():
        return None
    first = next(iter(q.coeffs))
    mu = p.coeffs[first] / q.coeffs[first]
    if mu <= 0 or any(p.coeffs[k] != mu * v for k, v in q.coeffs.items()):
        return None
    return mu


def type0_mass(p: PolyRep) -> Fraction:
    """Total mass before normalization in the type-0 construction: sum |a_i|."""
    return sum((abs(q) for q in p.coeffs.values()), Fraction(0))


def type0(p: PolyRep) -> Pmf:
    """Type-0 pmf of a nonzero ideal polynomial.

    ``a_i >= 0`` puts mass a_i on s_i, ``a_i < 0`` puts -a_i on 1_d - s_i;
    the result is then normalized by :func:`type0_mass`.
    """
    if p.is_zero():
        raise ZeroPolynomial("type-0 pmf is undefined for the zero polynomial")
    if not in_ideal(p):
        raise NotInIdeal(f"{p} does not vanish on the ideal points")
    mass = type0_mass(p)
    atoms = {}
    for pos, q in p.coeffs.items():
        target = pos if q > 0 else complement_position(pos, p.d)
        atoms[target] = abs(q) / mass
    return Pmf.from_atoms(p.d, atoms)


def counter_image_member(p: PolyRep, lam, k: Pmf) -> Pmf:
    """``lam * type0(p) + (1 - lam) * k`` for a palindromic ``k`` and lam in (0, 1]."""
    lam = to_fraction(lam)
    if not 0 < lam <= 1:
        raise InvalidLambda(f"lambda must lie in (0, 1], got {lam}", value=lam)
    if k.d != p.d:
        raise DimensionMismatch("kernel pmf has a different dimension")
    if not is_palindromic(k):
        raise KernelNotPalindromic("the kernel component must be palindromic")
    return mixture([(lam, type0(p)), (1 - lam, k)])


@dataclass(frozen=True)
class Decomposition:
    """``f = lam * type0 + (1 - lam) * kernel``; ``kernel`` is None when lam = 1."""

    lam: Fraction
    type0: Pmf
    kernel: Pmf | None


def decompose(f: Pmf) -> Decomposition:
    """Split a pmf with nonzero polynomial into its type-0 and palindromic parts."""
    p = to_poly(f)
    if p.is_zero():
        raise ZeroPolynomial("palindromic pmf: no type-0 component")
    lam = type0_mass(p)
    t0 = type0(p)
    if lam == 1:
        return Decomposition(lam, t0, None)
    rest = {}
    for pos in set(f.masses) | set(t0.masses):
        v = (f(pos) - lam * t0(pos)) / (1 - lam)
        if v:
            rest[pos] = v
    return Decomposition(lam, t0, Pmf.from_atoms(f.d, rest))
