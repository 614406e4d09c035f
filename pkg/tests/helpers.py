"""Random elements of SB_d and small exact oracles shared by the tests."""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import product

from hypothesis import strategies as st

from symbern.pmf import Pmf, independence, mixture, two_point
from symbern.polyrep import PolyRep, type0
from symbern.rational_linalg import RationalMatrix, nullspace_basis


@lru_cache(maxsize=None)
def ideal_basis(d: int):
    """Basis of coefficient vectors vanishing at 1_{d-1} and every 1_{d-1}^{-j}."""
    n = 1 << (d - 1)
    rows = [[1] * n] + [[-1 if (p >> j) & 1 else 1 for p in range(n)] for j in range(d - 1)]
    return nullspace_basis(RationalMatrix.from_rows(rows))


def random_ideal_poly(rng: random.Random, d: int) -> PolyRep:
    basis = ideal_basis(d)
    while True:
        picks = rng.sample(range(len(basis)), min(len(basis), rng.randint(1, 3)))
        coeffs = [Fraction(0)] * (1 << (d - 1))
        for k in picks:
            c = rng.choice([-3, -2, -1, 1, 2, 3])
            coeffs = [a + c * b for a, b in zip(coeffs, basis[k])]
        if any(coeffs):
            return PolyRep.from_dense(d, coeffs)


def random_palindromic(rng: random.Random, d: int) -> Pmf:
    picks = rng.sample(range(1 << (d - 1)), min(1 << (d - 1), rng.randint(1, 4)))
    w = [rng.randint(1, 9) for _ in picks]
    return mixture([(Fraction(x, sum(w)), two_point(p, d)) for x, p in zip(w, picks)])


def random_pmf(rng: random.Random, d: int) -> Pmf:
    """Mixtures of type-0 pmfs, kernel elements and the independence pmf.

    For d <= 2 the ideal is trivial and every pmf is palindromic.
    """
    if d == 1:
        return two_point(0, 1)
    kind = rng.choice(["palindromic", "type0", "mixed", "mixed", "independence"])
    if kind == "palindromic" or d == 2 and kind != "independence":
        return random_palindromic(rng, d)
    if kind == "type0":
        return type0(random_ideal_poly(rng, d))
    lam = Fraction(rng.randint(1, 7), 8)
    if kind == "independence" and d <= 10:
        other = type0(random_ideal_poly(rng, d)) if d > 2 and rng.random() < 0.5 else random_palindromic(rng, d)
        return mixture([(lam, independence(d)), (1 - lam, other)])
    return mixture([(lam, type0(random_ideal_poly(rng, d))), (1 - lam, random_palindromic(rng, d))])


def pmfs(d_min: int = 2, d_max: int = 6):
    return st.builds(
        lambda d, seed: random_pmf(random.Random(seed), d),
        st.integers(d_min, d_max),
        st.integers(0, 2**32 - 1),
    )


def revlex(d: int):
    """Hypercube points with the first coordinate varying fastest."""
    return [tuple(reversed(t)) for t in product((0, 1), repeat=d)]
