import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from neargroup.cyclotomic import CycInt, cyclotomic_polynomial, root_of_unity

N = 36
zeta = cmath.exp(2j * cmath.pi / N)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(36) == (1, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 1)
    # roots of Φ_36 are the primitive 36th roots: check numerically at ζ
    assert abs(sum(c * zeta ** i for i, c in enumerate(cyclotomic_polynomial(36)))) < 1e-12


def test_root_of_unity_basics():
    assert root_of_unity(0) == 1
    assert root_of_unity(18) == -1
    assert root_of_unity(0) + root_of_unity(12) + root_of_unity(24) == 0
    assert root_of_unity(9) * root_of_unity(9) == root_of_unity(18) == -1
    assert (2 * root_of_unity(24)).conj() == 2 * root_of_unity(12)
    assert root_of_unity(36) == 1 and root_of_unity(-1) == root_of_unity(35)


def test_root_of_unity_powers_exhaustive():
    for a in range(N):
        for b in range(N):
            assert root_of_unity(a) * root_of_unity(b) == root_of_unity(a + b)
    assert root_of_unity(1) ** N == 1


def test_rational_integer_and_approx():
    assert root_of_unity(0).as_rational_integer() == 1
    assert root_of_unity(12).as_rational_integer() is None
    x = 2 * root_of_unity(24)
    assert x.as_rational_integer() is None
    assert abs(x.approx() - complex(-1, -3 ** 0.5)) < 1e-12
    assert CycInt((Fraction(1, 2),)).as_rational_integer() is None


def test_mixed_moduli_rejected():
    with pytest.raises(ValueError):
        root_of_unity(1, 36) + root_of_unity(1, 12)


def test_exact_div():
    x = 4 * root_of_unity(5)
    assert x.exact_div(2) == 2 * root_of_unity(5)
    with pytest.raises(ArithmeticError):
        root_of_unity(5).exact_div(2)


def test_sum_of_roots_and_rendering():
    x = CycInt.sum_of_roots([0, 0, 24, 24])
    assert x == 2 + 2 * root_of_unity(24)
    assert str(CycInt.zero()) == "0"
    assert str(-2 * root_of_unity(6)) == "-2*ζ36^6"
    assert str(root_of_unity(18)) == "-1"


elements = st.lists(st.integers(-3, 3), min_size=12, max_size=12).map(CycInt)


@settings(max_examples=60, deadline=None)
@given(elements, elements, elements)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == 0


@settings(max_examples=60, deadline=None)
@given(elements)
def test_reduction_idempotent_and_conj_bridge(a):
    assert CycInt(a.coeffs) == a
    assert a.conj().conj() == a
    assert abs((a * a.conj()).approx() - abs(a.approx()) ** 2) < 1e-9
    assert abs(a.approx() - sum(float(c) * zeta ** i for i, c in enumerate(a.coeffs))) < 1e-9


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=1, max_size=40))
def test_long_polynomials_reduce_consistently(coeffs):
    a = CycInt(coeffs)
    assert abs(a.approx() - sum(c * zeta ** i for i, c in enumerate(coeffs))) < 1e-7
