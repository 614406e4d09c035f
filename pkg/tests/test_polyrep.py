import random
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings

from helpers import pmfs, random_ideal_poly, random_palindromic
from reference_values import F_D3, P_D3
from symbern.errors import InvalidLambda, KernelNotPalindromic, NotInIdeal, ZeroPolynomial
from symbern.pmf import Pmf, independence, is_palindromic, mixture, two_point, validate
from symbern.polyrep import (
    PolyRep,
    counter_image_member,
    decompose,
    equivalent,
    evaluate,
    ideal_points,
    in_ideal,
    to_poly,
    type0,
    type0_mass,
)


def test_d3_polynomials():
    for k in range(1, 5):
        assert to_poly(validate(F_D3[k], 3)).dense == tuple(P_D3[k])
    p = {k: to_poly(validate(F_D3[k], 3)) for k in F_D3}
    assert p[1] == p[2]
    assert equivalent(p[3], p[1]) == F(5, 2)
    assert equivalent(p[4], p[3]) is None
    assert p[4] == p[3].scale(-1)


def test_type0_d3():
    f3 = validate(F_D3[3], 3)
    assert type0(to_poly(validate(F_D3[1], 3))) == f3
    assert type0(to_poly(f3)) == f3
    assert type0_mass(to_poly(validate(F_D3[1], 3))) == F(2, 5)


def test_type0_errors():
    with pytest.raises(ZeroPolynomial):
        type0(PolyRep(3, {}))
    with pytest.raises(NotInIdeal):
        type0(PolyRep.from_dense(3, [1, 0, 0, 0]))


def _sympy_in_ideal(p):
    z = sympy.symbols(f"z1:{p.d}")
    expr = sum(sympy.Rational(q.numerator, q.denominator) * sympy.Mul(*[z[j] for j in range(p.d - 1) if (pos >> j) & 1])
               for pos, q in p.coeffs.items())
    return all(sympy.sympify(expr).subs(dict(zip(z, pt))) == 0 for pt in ideal_points(p.d))


@settings(max_examples=100)
@given(pmfs(2, 5))
def test_polynomials_of_pmfs_lie_in_ideal(f):
    p = to_poly(f)
    assert in_ideal(p)
    assert _sympy_in_ideal(p)
    for pt in ideal_points(f.d):
        assert evaluate(p, pt) == 0


def test_in_ideal_rejects():
    p = PolyRep.from_dense(3, [1, 1, 0, 0])
    assert not in_ideal(p) and not _sympy_in_ideal(p)


@settings(max_examples=200)
@given(pmfs(2, 6))
def test_decomposition_round_trip(f):
    p = to_poly(f)
    if p.is_zero():
        assert is_palindromic(f)
        return
    dec = decompose(f)
    assert dec.lam == type0_mass(p)
    assert 0 < dec.lam <= 1
    assert to_poly(dec.type0) == p.scale(1 / dec.lam)
    if dec.kernel is None:
        assert f == dec.type0
    else:
        assert is_palindromic(dec.kernel)
        assert counter_image_member(p.scale(1 / dec.lam), dec.lam, dec.kernel) == f


@settings(max_examples=200)
@given(pmfs(1, 6))
def test_zero_polynomial_iff_palindromic(f):
    assert to_poly(f).is_zero() == is_palindromic(f)


def test_counter_image_member_example():
    p = PolyRep.from_dense(3, [F(-1, 4), F(1, 4), F(1, 4), F(-1, 4)])
    k = two_point("000")
    f = counter_image_member(p, F(1, 2), k)
    assert list(f.values) == [F(1, 4), F(1, 8), F(1, 8), 0, F(1, 8), 0, 0, F(3, 8)]
    assert to_poly(f).dense == (F(-1, 8), F(1, 8), F(1, 8), F(-1, 8))
    with pytest.raises(InvalidLambda):
        counter_image_member(p, 0, k)
    with pytest.raises(KernelNotPalindromic):
        counter_image_member(p, F(1, 2), independence(3).__class__(3, {0: F(1, 2), 3: F(1, 4), 5: F(1, 4)}))


def test_equivalence_scaling():
    rng = random.Random(4)
    for d in range(3, 7):
        p = random_ideal_poly(rng, d)
        assert equivalent(p.scale(F(7, 3)), p) == F(7, 3)
        assert equivalent(p.scale(-1), p) is None
        # type-0 pmfs of equivalent polynomials coincide
        assert type0(p.scale(5)) == type0(p)


def test_string_and_json():
    p = PolyRep.from_coeffs(5, {"1010": 1, "0110": -1, "1001": -1, "0101": 1})
    assert str(p) == "z1*z3 - z2*z3 - z1*z4 + z2*z4"
    assert PolyRep.from_json(p.to_json()) == p
    assert str(PolyRep.from_dense(3, [F(-1, 10), F(1, 10), 0, 0])) == "-1/10 + 1/10*z1"


def test_kernel_mixture_has_zero_polynomial():
    rng = random.Random(1)
    for d in range(2, 7):
        assert to_poly(random_palindromic(rng, d)).is_zero()
    f = mixture([(F(1, 3), two_point("0110")), (F(2, 3), two_point("1111"))])
    assert to_poly(f).is_zero()
    assert not to_poly(Pmf.from_atoms(3, {"100": F(1, 2), "011": F(1, 4), "111": F(1, 4)}, check=False)).is_zero()
