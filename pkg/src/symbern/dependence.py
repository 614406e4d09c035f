"""Dependence measures for symmetric Bernoulli vectors and their copulas.

Bernoulli quantities are exact rationals.  For the copula families the
pairwise measures follow from the Bernoulli ones through fixed factors:

    EM:   rho(V) = rho(X),      tau(V) = rho(X)
    FGM:  rho(U) = rho(X) / 3,  tau(U) = 2 rho(X) / 9

Bernoulli pairs have ties, so tau(X) = rho(X) / 2.  An EM pair has none: it
is the mixture a M + (1 - a) W of the comonotone and countermonotone
copulas with a = P(X_j1 = X_j2), whose tau is a^2 - (1 - a)^2 = 2a - 1,
the same as rho(X).

Third-order standardized cross moments do not transfer the same way.  Since
``V_j - 1/2 = (U - 1/2)(2 X_j - 1)`` and E[(U - 1/2)^3] = 0, every EM vector
has mu3 = 0.  For FGM, ``E[U_j - 1/2 | X_j] = (2 X_j - 1) / 6`` and the
coordinates are conditionally independent, so mu3(U) = (sqrt(3) / 9) mu3(X).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Sequence

import numpy as np

from .copulas import em_draws
from .errors import DimensionTooLarge, IndexOutOfRange, NotKernelStar
from .hypercube import bits_of, to_bitstring
from .pmf import Pmf, is_star_position, sum_distribution, two_point_support

SIGMA_CTM_MAX_DIM = 12
MC_VIOLATION_EPS = 1e-12
FAMILIES = ("bernoulli", "em", "fgm")


def _check_indexes(d: int, idx: Sequence[int]) -> None:
    if len(set(idx)) != len(idx):
        raise IndexOutOfRange(f"indexes must be distinct: {tuple(idx)}")
    for j in idx:
        if not isinstance(j, int) or not 1 <= j <= d:
            raise IndexOutOfRange(f"index {j} outside 1..{d}", index=j)


def _moment(f: Pmf, idx: Sequence[int]) -> Fraction:
    """E[prod_{j in idx} X_j]."""
    mask = sum(1 << (j - 1) for j in idx)
    return sum((q for p, q in f.masses.items() if p & mask == mask), Fraction(0))


# ------------------------------------------------------------ pair measures


@dataclass(frozen=True)
class PairMeasure:
    pair: tuple[int, int]
    rho_p: Fraction | float
    tau_k: Fraction | float


def _bivariate(f: Pmf, j1: int, j2: int) -> dict[tuple[int, int], Fraction]:
    out: dict[tuple[int, int], Fraction] = {}
    for p, q in f.masses.items():
        key = ((p >> (j1 - 1)) & 1, (p >> (j2 - 1)) & 1)
        out[key] = out.get(key, Fraction(0)) + q
    return out


def kendall_tau_discrete(joint: Mapping[tuple, Fraction]) -> Fraction:
    """P[(X1-X2)(Y1-Y2) >= 0] - P[(X1-X2)(Y1-Y2) <= 0] over independent copies."""
    ge = le = Fraction(0)
    for (a1, b1), p in joint.items():
        for (a2, b2), q in joint.items():
            s = (a1 - a2) * (b1 - b2)
            if s >= 0:
                ge += p * q
            if s <= 0:
                le += p * q
    return ge - le


def bernoulli_pair_measures(f: Pmf, j1: int, j2: int) -> PairMeasure:
    _check_indexes(f.d, (j1, j2))
    rho = 4 * _moment(f, (j1, j2)) - 1
    return PairMeasure((j1, j2), rho, kendall_tau_discrete(_bivariate(f, j1, j2)))


def transfer_pair(m: PairMeasure, family: str) -> PairMeasure:
    """Pairwise measures of the EM or FGM copula built from the Bernoulli ``m``."""
    rho = m.rho_p
    if family == "bernoulli":
        return m
    if family == "em":
        return PairMeasure(m.pair, rho, rho)
    if family == "fgm":
        return PairMeasure(m.pair, rho / 3, 2 * rho / 9)
    raise ValueError(f"unknown family {family!r}")


def pair_measures(f: Pmf, j1: int, j2: int, family: str = "bernoulli") -> PairMeasure:
    return transfer_pair(bernoulli_pair_measures(f, j1, j2), family)


@dataclass(frozen=True)
class MeanMeasure:
    rho_bar: Fraction
    tau_bar: Fraction


def mean_measures(f: Pmf, family: str = "bernoulli") -> MeanMeasure:
    """Averages over all pairs of the exact pairwise measures."""
    if f.d < 2:
        raise IndexOutOfRange("mean measures need d >= 2")
    pairs = [pair_measures(f, a, b, family) for a, b in combinations(range(1, f.d + 1), 2)]
    n = len(pairs)
    return MeanMeasure(
        sum((m.rho_p for m in pairs), Fraction(0)) / n,
        sum((m.tau_k for m in pairs), Fraction(0)) / n,
    )


def minimal_mean_rho(d: int) -> Fraction:
    """Smallest mean Pearson correlation over SB_d."""
    return Fraction(-1, d - 1) if d % 2 == 0 else Fraction(-1, d)


def phi(y: int, d: int, form: str = "corrected") -> Fraction:
    """8/(d(d-1)) C(y,2) - 1.  ``form="truncated"`` returns 0 for y < 2 and is not an identity."""
    if form == "truncated" and y < 2:
        return Fraction(0)
    if form not in ("corrected", "truncated"):
        raise ValueError(f"unknown phi form {form!r}")
    return Fraction(8 * comb(y, 2), d * (d - 1)) - 1


def phi_expectation(f: Pmf, form: str = "corrected") -> Fraction:
    s = sum_distribution(f)
    return sum((p * phi(k, f.d, form) for k, p in enumerate(s.probs)), Fraction(0))


# -------------------------------------------------------------- pair counts


def pair_counts(f: Pmf) -> tuple[int, int]:
    """Comonotonic and countermonotonic pairs of a two-point star kernel pmf."""
    x = two_point_support(f)
    if x is None or not is_star_position(x, f.d):
        raise NotKernelStar("pair counts need a two-point kernel pmf supported on X_d^*")
    bits = bits_of(x, f.d)
    plus = sum(1 for a, b in combinations(range(f.d), 2) if bits[a] == bits[b])
    return plus, comb(f.d, 2) - plus


def pair_count_formula(d: int) -> tuple[int, int]:
    plus = d * (d - 2) // 4 if d % 2 == 0 else (d - 1) ** 2 // 4
    return plus, comb(d, 2) - plus


# ----------------------------------------------------------- cross moments

SQRT3_OVER_9 = math.sqrt(3) / 9


@dataclass(frozen=True)
class CrossMoment:
    """Standardized third cross moment of a triple.

    ``raw`` is the exact E[prod (Y_j - 1/2)]; ``value`` is the standardized
    moment (exact for Bernoulli and EM, binary64 for FGM).
    """

    triple: tuple[int, int, int]
    family: str
    raw: Fraction
    value: Fraction | float


def cross_moment3(f: Pmf, j1: int, j2: int, j3: int, family: str = "bernoulli") -> CrossMoment:
    triple = (j1, j2, j3)
    _check_indexes(f.d, triple)
    mask = sum(1 << (j - 1) for j in triple)
    # E[prod (2 X_j - 1)] = 8 E[prod (X_j - 1/2)]
    mu_x = sum((-q if bin(~p & mask).count("1") % 2 else q for p, q in f.masses.items()), Fraction(0))
    if family == "bernoulli":
        return CrossMoment(triple, family, mu_x / 8, mu_x)
    if family == "em":
        return CrossMoment(triple, family, Fraction(0), Fraction(0))
    if family == "fgm":
        return CrossMoment(triple, family, mu_x / 216, SQRT3_OVER_9 * float(mu_x))
    raise ValueError(f"unknown family {family!r}")


@dataclass(frozen=True)
class Estimate:
    value: float
    std_error: float


def _mean_se(x: np.ndarray, scale: float) -> Estimate:
    return Estimate(scale * float(x.mean()), scale * float(x.std(ddof=1)) / math.sqrt(len(x)))


def rho_estimate(samples: np.ndarray, j1: int, j2: int) -> Estimate:
    """12 mean((U1 - 1/2)(U2 - 1/2)), using the known uniform margins."""
    _check_indexes(samples.shape[1], (j1, j2))
    return _mean_se((samples[:, j1 - 1] - 0.5) * (samples[:, j2 - 1] - 0.5), 12.0)


def tau_estimate(samples: np.ndarray, j1: int, j2: int) -> float:
    from scipy.stats import kendalltau

    _check_indexes(samples.shape[1], (j1, j2))
    return float(kendalltau(samples[:, j1 - 1], samples[:, j2 - 1]).statistic)


def cross_moment3_estimate(samples: np.ndarray, triple: Sequence[int]) -> Estimate:
    """12^(3/2) mean(prod (U_j - 1/2)) for uniform-margin samples."""
    _check_indexes(samples.shape[1], tuple(triple))
    prod = np.prod(samples[:, [j - 1 for j in triple]] - 0.5, axis=1)
    return _mean_se(prod, 12.0 ** 1.5)


# -------------------------------------------------- countermonotonicity


def ctm_pair_exact(joint: Iterable[tuple[int | Fraction, int | Fraction]] | Mapping) -> bool:
    """True iff no two support atoms (a1, b1), (a2, b2) have (a1 - a2)(b1 - b2) > 0."""
    atoms = list(joint.keys() if isinstance(joint, Mapping) else joint)
    if isinstance(joint, Mapping):
        atoms = [k for k in atoms if joint[k]]
    atoms = sorted(set(atoms))
    for i, (a1, b1) in enumerate(atoms):
        for a2, b2 in atoms[i + 1:]:
            if (a1 - a2) * (b1 - b2) > 0:
                return False
    return True


def split_law(f: Pmf, subset: Sequence[int]) -> dict[tuple[int, int], Fraction]:
    """Law of (sum_{j in J} X_j, sum_{j not in J} X_j)."""
    mask = sum(1 << (j - 1) for j in subset)
    out: dict[tuple[int, int], Fraction] = {}
    for p, q in f.masses.items():
        key = (bin(p & mask).count("1"), bin(p & ~mask).count("1"))
        out[key] = out.get(key, Fraction(0)) + q
    return out


def sigma_ctm_exact(f: Pmf) -> bool:
    """Every split (sum over J, sum over the rest) is countermonotonic.

    J and its complement give mirrored pairs, so only subsets avoiding
    coordinate d are inspected.
    """
    if f.d > SIGMA_CTM_MAX_DIM:
        raise DimensionTooLarge(f"sigma_ctm_exact is capped at d={SIGMA_CTM_MAX_DIM}", d=f.d)
    d = f.d
    pos = np.array(f.support, dtype=np.int64)
    weights = np.array([bin(p).count("1") for p in range(1 << d)], dtype=np.int64)
    for mask in range(1 << (d - 1)):
        a = weights[pos & mask]
        b = weights[pos & ~mask & ((1 << d) - 1)]
        pts = set(zip(a.tolist(), b.tolist()))
        if not ctm_pair_exact(pts):
            return False
    return True


# ---------------------------------------- EM copulas: exact affine analysis

Affine = tuple[Fraction, Fraction, Fraction]  # c0 + c1 u1 + c2 u2


def _split_coeffs(x: int, d: int, mask: int) -> tuple[int, int, int, int]:
    """(ones in J, zeros in J, ones outside J, zeros outside J) for atom x."""
    full = (1 << d) - 1
    a = bin(x & mask).count("1")
    e = bin(x & ~mask & full).count("1")
    size = bin(mask).count("1")
    return a, size - a, e, d - size - e


def _em_sums(x: int, d: int, mask: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """A = alpha + beta u and B = gamma + delta u for atom x with uniform u."""
    a, b, e, c = _split_coeffs(x, d, mask)
    return (b, a - b), (c, e - c)


def _affine_at(L: Affine, u1: Fraction, u2: Fraction) -> Fraction:
    return L[0] + L[1] * u1 + L[2] * u2


_CORNERS = [(Fraction(i), Fraction(j)) for i in (0, 1) for j in (0, 1)]


def _product_nonpositive(L1: Affine, L2: Affine) -> bool:
    """L1 L2 <= 0 on the whole unit square (equivalently almost everywhere)."""
    if not any(L1) or not any(L2):
        return True
    v1 = [_affine_at(L1, *c) for c in _CORNERS]
    v2 = [_affine_at(L2, *c) for c in _CORNERS]
    if (min(v1) >= 0 and max(v2) <= 0) or (max(v1) <= 0 and min(v2) >= 0):
        return True
    # the only other way: L1 changes sign and L2 is a negative multiple of it
    k = next(i for i in range(3) if L1[i])
    c = L2[k] / L1[k]
    return c < 0 and all(L2[i] == c * L1[i] for i in range(3))


def _violation_point(L1: Affine, L2: Affine) -> tuple[Fraction, Fraction]:
    for level in range(1, 12):
        n = 1 << level
        for i in range(1, n):
            for j in range(1, n):
                u1, u2 = Fraction(i, n), Fraction(j, n)
                if _affine_at(L1, u1, u2) * _affine_at(L2, u1, u2) > 0:
                    return u1, u2
    raise AssertionError("no violating point found for a failing affine pair")


@dataclass(frozen=True)
class Witness:
    """Two EM draws (atom, u) whose split sums are strictly concordant."""

    d: int
    subset: tuple[int, ...]
    x1: int
    u1: Fraction
    x2: int
    u2: Fraction

    def sums(self, x: int, u: Fraction) -> tuple[Fraction, Fraction]:
        bits = bits_of(x, self.d)
        v = [u if b else 1 - u for b in bits]
        inside = set(self.subset)
        a = sum((v[j - 1] for j in range(1, self.d + 1) if j in inside), Fraction(0))
        b = sum((v[j - 1] for j in range(1, self.d + 1) if j not in inside), Fraction(0))
        return a, b

    def product(self) -> Fraction:
        a1, b1 = self.sums(self.x1, self.u1)
        a2, b2 = self.sums(self.x2, self.u2)
        return (a1 - a2) * (b1 - b2)

    def verify(self) -> bool:
        """Exact rational recomputation: the product must be strictly positive."""
        return self.product() > 0

    def to_json(self) -> dict:
        return {
            "subset": list(self.subset),
            "draws": [
                {"x": to_bitstring(self.x1, self.d), "u": str(self.u1)},
                {"x": to_bitstring(self.x2, self.d), "u": str(self.u2)},
            ],
            "product": str(self.product()),
        }


@dataclass(frozen=True)
class ExactTrue:
    kind: str = "ExactTrue"


@dataclass(frozen=True)
class McPass:
    p_hat: float
    n: int
    kind: str = "McPass"


@dataclass(frozen=True)
class McFail:
    p_hat: float
    n: int
    witness: Witness
    kind: str = "McFail"


def _mask_of(d: int, subset: Sequence[int]) -> int:
    _check_indexes(d, tuple(subset))
    return sum(1 << (j - 1) for j in subset)


def em_split_exact(f: Pmf, subset: Sequence[int]) -> Witness | None:
    """Exact check that the EM vector of ``f`` is countermonotonic across split J.

    For atoms x, y drawn with uniforms u1, u2 both differences A1 - A2 and
    B1 - B2 are affine in (u1, u2); each atom pair is settled by
    :func:`_product_nonpositive`.  Returns None when the split is
    countermonotonic, else a verified witness.
    """
    d = f.d
    mask = _mask_of(d, subset)
    sums = {x: _em_sums(x, d, mask) for x in f.support}
    for x in f.support:
        (ax, bx), (gx, hx) = sums[x]
        for y in f.support:
            (ay, by), (gy, hy) = sums[y]
            L1 = (Fraction(ax - ay), Fraction(bx), Fraction(-by))
            L2 = (Fraction(gx - gy), Fraction(hx), Fraction(-hy))
            if not _product_nonpositive(L1, L2):
                u1, u2 = _violation_point(L1, L2)
                return Witness(d, tuple(sorted(subset)), x, u1, y, u2)
    return None


def em_kernel_split_sign(f: Pmf, subset: Sequence[int]) -> int:
    """Sign of (a - b)(e - c) for a two-point kernel pmf; <= 0 means countermonotonic.

    With support x and its complement, both differences are multiples of
    (u1 - u2) or (u1 + u2 - 1), so this integer sign settles the split.
    """
    x = two_point_support(f)
    if x is None:
        raise NotKernelStar("not a two-point kernel pmf")
    a, b, e, c = _split_coeffs(x, f.d, _mask_of(f.d, subset))
    s = (a - b) * (e - c)
    return (s > 0) - (s < 0)


def em_sigma_ctm_check(f: Pmf, subset: Sequence[int], n: int = 100_000, seed: int = 0):
    """Countermonotonicity of the split J for the EM vector of ``f``.

    Two-point kernel pmfs get the exact sign analysis.  Other pmfs draw ``n``
    independent pairs of EM samples; the check passes iff no pair has a
    product above ``MC_VIOLATION_EPS``, and a failure carries the first
    violating pair, rechecked in exact arithmetic.
    """
    subset = tuple(sorted(subset))
    mask = _mask_of(f.d, subset)
    if two_point_support(f) is not None:
        if em_kernel_split_sign(f, subset) <= 0:
            return ExactTrue()
        witness = em_split_exact(f, subset)
        return McFail(0.0, 0, witness)
    support = f.support
    coef = np.array([[*_em_sums(x, f.d, mask)[0], *_em_sums(x, f.d, mask)[1]] for x in support], dtype=float)
    idx, u = em_draws(f, 2 * n, seed)
    c = coef[idx]
    a = c[:, 0] + c[:, 1] * u
    b = c[:, 2] + c[:, 3] * u
    prod = (a[0::2] - a[1::2]) * (b[0::2] - b[1::2])
    bad = np.flatnonzero(prod > MC_VIOLATION_EPS)
    for k in bad:
        w = Witness(f.d, subset, support[idx[2 * k]], Fraction(float(u[2 * k])),
                    support[idx[2 * k + 1]], Fraction(float(u[2 * k + 1])))
        if w.verify():
            return McFail(1.0 - len(bad) / n, n, w)
    return McPass(1.0, n)


def em_sigma_ctm_exact(f: Pmf) -> bool:
    """Exact Sigma-countermonotonicity of the EM vector over all splits (d <= 12)."""
    if f.d > SIGMA_CTM_MAX_DIM:
        raise DimensionTooLarge(f"capped at d={SIGMA_CTM_MAX_DIM}", d=f.d)
    for mask in range(1 << (f.d - 1)):
        subset = [j + 1 for j in range(f.d) if (mask >> j) & 1]
        if subset and em_split_exact(f, subset) is not None:
            return False
    return True

