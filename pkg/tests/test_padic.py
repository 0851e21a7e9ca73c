import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from symorders.padic import (
    Prime,
    residue_class,
    scalar_to_str,
    val,
)

rationals = st.fractions(
    min_value=-50, max_value=50, max_denominator=60
)
primes = st.sampled_from([Prime(2), Prime(3), Prime(5)])


def test_prime_validation():
    assert Prime(2) == 2
    assert Prime(13) == 13
    for bad in (1, 0, -3, 4, 9, 15):
        with pytest.raises(ValueError):
            Prime(bad)


def test_val_examples():
    assert val(Fraction(6), 3) == 1
    assert val(Fraction(1, 6), 3) == -1
    assert val(Fraction(0), 3) == math.inf
    assert val(Fraction(-12), 2) == 2
    assert val(Fraction(5, 7), 2) == 0


def test_residue_examples():
    # oracle: the representative must differ from the input by a ring element
    r = residue_class(Fraction(1, 6), 3)
    assert r.representative == Fraction(2, 3)
    assert val(Fraction(1, 6) - r.representative, 3) >= 0

    assert residue_class(Fraction(5), 2).representative == 0
    r = residue_class(Fraction(-1, 4), 2)
    assert r.representative == Fraction(3, 4)
    assert val(Fraction(-1, 4) - r.representative, 2) >= 0


def test_scalar_strings():
    assert scalar_to_str(Fraction(3)) == "3"
    assert scalar_to_str(Fraction(-5, 3)) == "-5/3"
    assert Fraction("-5/3") == Fraction(-5, 3)


@given(rationals, rationals, primes)
def test_valuation_ultrametric(x, y, p):
    assert val(x * y, p) == val(x, p) + val(y, p)
    assert val(x + y, p) >= min(val(x, p), val(y, p))


@given(rationals, primes)
def test_residue_canonical(x, p):
    r = residue_class(x, p)
    rep = r.representative
    assert 0 <= rep < 1
    assert val(x - rep, p) >= 0
    # denominator a p-power
    d = rep.denominator
    while d % p == 0:
        d //= p
    assert d == 1
    # vanishes exactly on ring elements
    assert r.is_zero() == (val(x, p) >= 0)


@given(rationals, rationals, primes)
def test_residue_additive(x, y, p):
    lhs = residue_class(x, p) + residue_class(y, p)
    assert lhs == residue_class(x + y, p)
