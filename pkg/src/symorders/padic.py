"""Exact p-adic arithmetic on rational numbers.

The base ring throughout the package is the localisation of the integers
at a prime p: rationals whose denominator is prime to p.  Its uniformizer
is p itself and its residue field is the prime field with p elements.
Every scalar is an exact ``fractions.Fraction``; there is no floating
point anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

INFINITY = math.inf


class Prime(int):
    """Prime integer, validated by trial division at construction."""

    def __new__(cls, p):
        p = int(p)
        if p < 2:
            raise ValueError(f"{p} is not prime")
        d = 2
        while d * d <= p:
            if p % d == 0:
                raise ValueError(f"{p} is not prime")
            d += 1
        return super().__new__(cls, p)


def as_scalar(x) -> Fraction:
    """Coerce an int, string ("a/b" or "a") or Fraction to an exact scalar."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot build an exact scalar from {type(x).__name__}")


def scalar_to_str(x: Fraction) -> str:
    """Serialize a scalar as "a/b", omitting the denominator when it is 1."""
    x = as_scalar(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _int_val(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def val(x, p: int):
    """p-adic valuation of a rational; +infinity for zero."""
    x = as_scalar(x)
    if x == 0:
        return INFINITY
    return _int_val(x.numerator, p) - _int_val(x.denominator, p)


def is_ring_element(x, p: int) -> bool:
    """True when x lies in the p-local integers (valuation >= 0)."""
    return val(x, p) >= 0


def is_unit_scalar(x, p: int) -> bool:
    """True when x is invertible in the p-local integers (valuation 0)."""
    return val(x, p) == 0


@dataclass(frozen=True)
class ResidueClass:
    """Class of a rational modulo the p-local integers.

    The canonical representative lies in [0, 1) and has a denominator
    that is a power of p; two rationals are congruent exactly when their
    difference has valuation >= 0.
    """

    representative: Fraction
    prime: int

    def is_zero(self) -> bool:
        return self.representative == 0

    def __add__(self, other: "ResidueClass") -> "ResidueClass":
        if self.prime != other.prime:
            raise ValueError("residue classes at different primes")
        return residue_class(self.representative + other.representative, self.prime)

    def __neg__(self) -> "ResidueClass":
        return residue_class(-self.representative, self.prime)

    def __str__(self) -> str:
        return scalar_to_str(self.representative)


def residue_class(x, p: int) -> ResidueClass:
    """Canonical representative of x modulo the p-local integers.

    Writes x = a / (p^k m) in lowest terms with m prime to p and solves
    c = a * m^(-1) mod p^k, giving the representative c / p^k in [0, 1).
    """
    x = as_scalar(x)
    v = val(x, p)
    if v >= 0:
        return ResidueClass(Fraction(0), int(p))
    k = -int(v)
    pk = p**k
    m = x.denominator // pk
    c = (x.numerator * pow(m, -1, pk)) % pk
    rep = Fraction(c, pk)
    assert val(x - rep, p) >= 0
    return ResidueClass(rep, int(p))
