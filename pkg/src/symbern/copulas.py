"""Extremal mixture (EM) and FGM copulas built from symmetric Bernoulli pmfs.

Parameters (EM weights, FGM thetas) are exact rationals.  Copula values and
samples are binary64.

EM route: ``V = U X + (1 - U)(1 - X)`` with U uniform, independent of X.
FGM route: ``U_j = 1 - exp(-(Z_j0 + X_j Z_j1))`` with Z_j0 ~ Exp(mean 1/2),
Z_j1 ~ Exp(mean 1), all independent of X.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .errors import DimensionTooLarge, InputOutOfRange, MalformedInput, NotAPmf
from .hypercube import bits_of, complement_position, parse_position, to_bitstring
from .pmf import Pmf
from .rational_linalg import format_fraction, to_fraction
from .rng import BLOCK, blocked

FGM_EAGER_MAX_DIM = 12
FGM_ADMISSIBLE_MAX_DIM = 20


def _unit_points(u, d: int) -> np.ndarray:
    arr = np.asarray(u, dtype=float)
    pts = arr.reshape(1, -1) if arr.ndim == 1 else arr
    if pts.ndim != 2 or pts.shape[1] != d:
        raise InputOutOfRange(f"points must have {d} coordinates")
    if np.isnan(pts).any() or (pts < 0).any() or (pts > 1).any():
        raise InputOutOfRange("copula arguments must lie in [0, 1]")
    return pts


def _scalar_or_array(values: np.ndarray, u) -> float | np.ndarray:
    return float(values[0]) if np.asarray(u).ndim == 1 else values


# ---------------------------------------------------------------- EM copulas


@dataclass(frozen=True)
class EmCopula:
    """Mixture ``sum w_i C_i`` of extremal copulas indexed by i in {0,1}^(d-1)."""

    d: int
    weights: Mapping[int, Fraction] = field(repr=False)

    @classmethod
    def from_weights(cls, d: int, weights: Mapping) -> "EmCopula":
        w = {}
        for k, v in weights.items():
            pos = parse_position(k, d - 1) if isinstance(k, str) else k
            q = to_fraction(v)
            if q < 0:
                raise NotAPmf("negative EM weight", constraint="negativity")
            if q:
                w[pos] = q
        if sum(w.values(), Fraction(0)) != 1:
            raise NotAPmf("EM weights must sum to 1", constraint="normalization")
        return cls(d, dict(sorted(w.items())))

    def index_set(self, i: int) -> list[int]:
        """J_i: 1-based coordinates where s_i = (i, 0) equals 1."""
        return [j + 1 for j in range(self.d - 1) if (i >> j) & 1]

    def __eq__(self, other) -> bool:
        return isinstance(other, EmCopula) and self.d == other.d and dict(self.weights) == dict(other.weights)

    def __hash__(self) -> int:
        return hash((self.d, tuple(self.weights.items())))

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "weights": {to_bitstring(p, self.d - 1): format_fraction(q) for p, q in self.weights.items()},
        }

    @classmethod
    def from_json(cls, data) -> "EmCopula":
        if not isinstance(data, dict) or "d" not in data or not isinstance(data.get("weights"), dict):
            raise MalformedInput("EM copula JSON needs 'd' and a 'weights' object")
        return cls.from_weights(data["d"], data["weights"])


def em_from_pmf(f: Pmf) -> EmCopula:
    """Weights ``w_i = f(s_i) + f(1_d - s_i)``."""
    half = 1 << (f.d - 1)
    w: dict[int, Fraction] = {}
    for p, q in f.masses.items():
        i = p if p < half else complement_position(p, f.d)
        w[i] = w.get(i, Fraction(0)) + q
    return EmCopula(f.d, dict(sorted(w.items())))


def em_cdf(c: EmCopula, u) -> float | np.ndarray:
    """C(u) = sum_i w_i (min_{J_i} u + min_{not J_i} u - 1)^+, with min over {} = 1."""
    pts = _unit_points(u, c.d)
    out = np.zeros(len(pts))
    for i, w in c.weights.items():
        mask = np.array(bits_of(i, c.d - 1) + (0,), dtype=bool)
        in_j = pts[:, mask].min(axis=1) if mask.any() else np.ones(len(pts))
        out_j = pts[:, ~mask].min(axis=1)
        out += float(w) * np.maximum(in_j + out_j - 1.0, 0.0)
    return _scalar_or_array(out, u)


def _atom_table(f: Pmf) -> tuple[np.ndarray, np.ndarray]:
    positions = f.support
    bits = np.array([bits_of(p, f.d) for p in positions], dtype=np.int8)
    probs = np.array([float(f.masses[p]) for p in positions])
    return bits, probs / probs.sum()


def em_draws(f: Pmf, n: int, seed: int, workers: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Atom indices into ``f.support`` and the uniforms U behind ``n`` EM draws."""
    _, probs = _atom_table(f)

    def block(rng):
        idx = rng.choice(len(probs), size=BLOCK, p=probs)
        u = rng.random(BLOCK)
        return np.column_stack([idx, u])

    out = blocked(n, seed, block, workers)
    return out[:, 0].astype(np.int64), out[:, 1]


def em_sample(f: Pmf, n: int, seed: int, workers: int = 1) -> np.ndarray:
    """``n`` draws of ``V = U X + (1 - U)(1 - X)``, shape (n, d)."""
    bits, _ = _atom_table(f)
    idx, u = em_draws(f, n, seed, workers)
    x = bits[idx]
    return np.where(x == 1, u[:, None], 1.0 - u[:, None])


# --------------------------------------------------------------- FGM copulas

Subset = tuple[int, ...]


def parse_subset(text: str) -> Subset:
    try:
        js = tuple(sorted(int(t) for t in text.split(",") if t.strip()))
    except ValueError as exc:
        raise MalformedInput(f"not a subset: {text!r}") from exc
    return js


@dataclass(frozen=True)
class FgmCopula:
    """FGM copula with sparse thetas keyed by sorted 1-based index tuples (absent = 0).

    Above ``FGM_EAGER_MAX_DIM`` the copula keeps its source pmf and computes
    thetas on demand.
    """

    d: int
    thetas: Mapping[Subset, Fraction] = field(repr=False)
    source: Pmf | None = field(default=None, repr=False, compare=False)

    @property
    def materialized(self) -> bool:
        return self.source is None

    def theta(self, subset: Sequence[int]) -> Fraction:
        key = tuple(sorted(subset))
        if len(key) < 2:
            raise InputOutOfRange("FGM parameters are indexed by subsets of size >= 2")
        if self.source is not None:
            return fgm_theta(self.source, key)
        return self.thetas.get(key, Fraction(0))

    def __eq__(self, other) -> bool:
        return isinstance(other, FgmCopula) and self.d == other.d and dict(self.thetas) == dict(other.thetas)

    def __hash__(self) -> int:
        return hash((self.d, tuple(sorted(self.thetas.items()))))

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "thetas": {",".join(map(str, k)): format_fraction(v) for k, v in sorted(self.thetas.items(), key=lambda kv: (len(kv[0]), kv[0]))},
        }

    @classmethod
    def from_json(cls, data) -> "FgmCopula":
        if not isinstance(data, dict) or "d" not in data or not isinstance(data.get("thetas"), dict):
            raise MalformedInput("FGM copula JSON needs 'd' and a 'thetas' object")
        d = data["d"]
        thetas = {}
        for k, v in data["thetas"].items():
            key = parse_subset(k)
            if len(key) < 2 or len(set(key)) != len(key) or key[0] < 1 or key[-1] > d:
                raise MalformedInput(f"bad FGM index set {k!r}")
            q = to_fraction(v)
            if q:
                thetas[key] = q
        return cls(d, thetas)


def fgm_theta(f: Pmf, subset: Sequence[int]) -> Fraction:
    """theta_S = (-2)^|S| E[prod_{j in S} (X_j - 1/2)] = E[prod_{j in S} (1 - 2 X_j)]."""
    mask = 0
    for j in subset:
        mask |= 1 << (j - 1)
    total = Fraction(0)
    for p, q in f.masses.items():
        total += -q if bin(p & mask).count("1") % 2 else q
    return total


def _walsh(values: list[Fraction]) -> list[Fraction]:
    """Unnormalized Walsh-Hadamard transform: out[S] = sum_x v[x] (-1)^|x & S|."""
    a = list(values)
    h = 1
    while h < len(a):
        for i in range(0, len(a), 2 * h):
            for k in range(i, i + h):
                x, y = a[k], a[k + h]
                a[k], a[k + h] = x + y, x - y
        h *= 2
    return a


def _mask_subset(mask: int, d: int) -> Subset:
    return tuple(j + 1 for j in range(d) if (mask >> j) & 1)


def fgm_from_pmf(f: Pmf) -> FgmCopula:
    if f.d > FGM_EAGER_MAX_DIM:
        return FgmCopula(f.d, {}, source=f)
    w = _walsh(list(f.values))
    thetas = {
        _mask_subset(s, f.d): w[s]
        for s in range(1 << f.d)
        if bin(s).count("1") >= 2 and w[s] != 0
    }
    return FgmCopula(f.d, thetas)


def fgm_admissible(c: FgmCopula) -> bool:
    """Check 1 + sum_S theta_S prod_{j in S} eps_j >= 0 for all 2^d sign vectors."""
    if c.d > FGM_ADMISSIBLE_MAX_DIM:
        raise DimensionTooLarge(f"admissibility check is capped at d={FGM_ADMISSIBLE_MAX_DIM}")
    if c.source is not None:
        c = FgmCopula(c.d, {
            _mask_subset(s, c.d): v
            for s, v in enumerate(_walsh(list(c.source.values)))
            if bin(s).count("1") >= 2 and v
        })
    dense = [Fraction(0)] * (1 << c.d)
    dense[0] = Fraction(1)
    for key, v in c.thetas.items():
        dense[sum(1 << (j - 1) for j in key)] = v
    return all(v >= 0 for v in _walsh(dense))


def fgm_cdf(c: FgmCopula, u) -> float | np.ndarray:
    """C(u) = prod u_h * (1 + sum_S theta_S prod_{j in S} (1 - u_j))."""
    if c.source is not None:
        return fgm_cdf_from_pmf(c.source, u)
    pts = _unit_points(u, c.d)
    ubar = 1.0 - pts
    inner = np.ones(len(pts))
    for key, v in c.thetas.items():
        inner += float(v) * np.prod(ubar[:, [j - 1 for j in key]], axis=1)
    return _scalar_or_array(np.prod(pts, axis=1) * inner, u)


def fgm_cdf_from_pmf(f: Pmf, u) -> float | np.ndarray:
    """C(u) = sum_x f(x) prod_h u_h (1 + (-1)^{x_h} (1 - u_h))."""
    pts = _unit_points(u, f.d)
    out = np.zeros(len(pts))
    for p, q in f.masses.items():
        sign = np.array([-1.0 if b else 1.0 for b in bits_of(p, f.d)])
        out += float(q) * np.prod(pts * (1.0 + sign * (1.0 - pts)), axis=1)
    return _scalar_or_array(out, u)


def fgm_sample(f: Pmf, n: int, seed: int, workers: int = 1) -> np.ndarray:
    """``n`` draws of the FGM vector U, shape (n, d)."""
    bits, probs = _atom_table(f)
    d = f.d

    def block(rng):
        idx = rng.choice(len(probs), size=BLOCK, p=probs)
        z0 = rng.exponential(0.5, size=(BLOCK, d))
        z1 = rng.exponential(1.0, size=(BLOCK, d))
        return -np.expm1(-(z0 + bits[idx] * z1))

    return blocked(n, seed, block, workers)


def all_subsets(d: int, min_size: int = 2):
    for k in range(min_size, d + 1):
        yield from combinations(range(1, d + 1), k)
