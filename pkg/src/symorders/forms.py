"""Symmetrising forms, dual bases, Casimir elements, and the projective
scalar property.

A linear form on an order is symmetrising when it is a trace form
(s(ab) = s(ba)) and its Gram matrix on the basis is ring-valued with
unit determinant; the induced self-duality then produces a dual basis,
a relative trace map and the central Casimir element z = sum x x^v.

Two independent algorithms decide whether some symmetrising form has a
scalar Casimir p^n 1 (the projective scalar property):

* :func:`psp_direct` searches the finitely many scalars p^t for which
  both p^{-t} z and p^t z^{-1} lie in the order; a hit produces a
  central unit twisting the form to one with Casimir p^t 1.
* :func:`psp_regular_gram` tests whether the Gram matrix of the regular
  character is p^n times a ring-invertible matrix, which requires the
  rational algebra to be split semisimple.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .orders import Order, NotInvertibleError
from .padic import INFINITY, val, scalar_to_str


class NotSymmetrisingError(ValueError):
    pass


class RegularGramSingularError(ValueError):
    pass


class LinearForm:
    """Linear functional on an order, given by its values on the basis."""

    def __init__(self, values):
        self.values = linalg.as_vector(values)

    def __call__(self, coords) -> Fraction:
        return np.dot(self.values, linalg.as_vector(coords))

    def __eq__(self, other):
        return isinstance(other, LinearForm) and linalg.vectors_equal(
            self.values, other.values
        )

    def __repr__(self):
        return "LinearForm([%s])" % ", ".join(scalar_to_str(v) for v in self.values)

    def scale(self, c) -> "LinearForm":
        return LinearForm(self.values * Fraction(c))


def regular_character_form(A: Order) -> LinearForm:
    """The trace of the left regular representation as a linear form."""
    return LinearForm([A.regular_character(A.basis_element(i)) for i in range(A.dim)])


def gram_matrix(A: Order, s: LinearForm) -> np.ndarray:
    """Matrix (s(b_i b_j))_{ij}."""
    return np.tensordot(A.structure, s.values, axes=([2], [0]))


def is_symmetrising(A: Order, s: LinearForm) -> bool:
    """Trace property on all basis pairs plus unimodular ring Gram matrix."""
    G = gram_matrix(A, s)
    if not linalg.matrices_equal(G, G.T):
        return False
    if not linalg.is_integral(G, A.prime):
        return False
    return val(linalg.det(G), A.prime) == 0


@dataclass(frozen=True, eq=False)
class DualBasis:
    """Columns of ``matrix`` are the elements x_j^v with s(b_i x_j^v) = delta_ij."""

    order: Order
    matrix: np.ndarray

    def element(self, j: int) -> np.ndarray:
        return np.array(self.matrix[:, j])


def dual_basis(A: Order, s: LinearForm) -> DualBasis:
    if not is_symmetrising(A, s):
        raise NotSymmetrisingError("form not symmetrising")
    G = gram_matrix(A, s)
    D = linalg.inverse(G)
    for i in range(A.dim):
        for j in range(A.dim):
            value = s(A.multiply(A.basis_element(i), D[:, j]))
            assert value == (1 if i == j else 0)
    return DualBasis(A, D)


def casimir(A: Order, s: LinearForm) -> np.ndarray:
    """Central Casimir element sum_x x x^v of a symmetrising form."""
    d = dual_basis(A, s)
    z = A.zero()
    z_rev = A.zero()
    for i in range(A.dim):
        b = A.basis_element(i)
        z = z + A.multiply(b, d.element(i))
        z_rev = z_rev + A.multiply(d.element(i), b)
    assert linalg.vectors_equal(z, z_rev)
    assert A.is_central(z)
    assert A.has_ring_coords(z)
    return z


def relative_trace(A: Order, s: LinearForm, a) -> np.ndarray:
    """Relative trace sum_x x a x^v; lands in the center."""
    d = dual_basis(A, s)
    out = A.zero()
    for i in range(A.dim):
        out = out + A.multiply(A.multiply(A.basis_element(i), a), d.element(i))
    assert A.is_central(out)
    return out


def twist_form(A: Order, s: LinearForm, z) -> LinearForm:
    """The form a -> s(z a) for a central unit z.

    Twisting multiplies the Casimir element by z^{-1}, so the twisted
    form is again symmetrising.
    """
    z = A.element(z)
    if not (A.has_ring_coords(z) and A.is_central(z) and A.is_unit(z)):
        raise ValueError("not a central unit")
    values = [s(A.multiply(z, A.basis_element(i))) for i in range(A.dim)]
    return LinearForm(values)


def separability_check(A: Order, s: LinearForm) -> bool:
    """True when the Casimir element is invertible in the rational algebra."""
    z = casimir(A, s)
    try:
        A.invert(z)
    except NotInvertibleError:
        return False
    return True


# -- the projective scalar property ------------------------------------


@dataclass(frozen=True, eq=False)
class PspCertificate:
    """Witness that a symmetrising form has Casimir p^n times the unit."""

    n: int
    witness_form: LinearForm

    def scalar(self, A: Order) -> Fraction:
        return Fraction(A.prime) ** self.n

    def verify(self, A: Order) -> bool:
        if not is_symmetrising(A, self.witness_form):
            return False
        z = casimir(A, self.witness_form)
        return linalg.vectors_equal(z, A.scalar(self.scalar(A)))


def psp_direct(A: Order, s: LinearForm):
    """Decide the projective scalar property from the Casimir orbit.

    Some twist of s has Casimir p^t 1 exactly when u = p^t z^{-1} is a
    central unit of the order, which happens exactly when both p^t z^{-1}
    and its inverse p^{-t} z have ring coordinates.  Feasible exponents
    satisfy dim * t = val(det of multiplication by z), so t is bounded by
    that valuation.  Returns a PspCertificate or None.
    """
    z = casimir(A, s)
    d = linalg.det(A.left_matrix(z))
    if d == 0:
        raise NotInvertibleError("not invertible in K⊗A")
    zinv = A.invert(z)
    p = A.prime
    bound = int(val(d, p)) // A.dim
    for t in range(0, bound + 1):
        pt = Fraction(p) ** t
        u = zinv * pt
        w = z / pt
        if A.has_ring_coords(u) and A.has_ring_coords(w):
            witness = twist_form(A, s, w)
            cert = PspCertificate(n=t, witness_form=witness)
            assert cert.verify(A)
            return cert
    return None


@dataclass(frozen=True, eq=False)
class RegularGramResult:
    verdict: bool
    n: int | None
    exponents: tuple
    witness_form: LinearForm | None


def psp_regular_gram(A: Order) -> RegularGramResult:
    """Decide the projective scalar property from the regular character.

    Assumes the rational algebra is split semisimple (caller-asserted).
    The property holds exactly when all Smith exponents of the Gram
    matrix of the regular character coincide; the common exponent is the
    scalar's exponent and p^{-n} rho is a witness form.
    """
    rho = regular_character_form(A)
    G = gram_matrix(A, rho)
    if linalg.det(G) == 0:
        raise RegularGramSingularError("regular Gram singular")
    snf = linalg.smith_normal_form(G, A.prime)
    exps = snf.exponents
    n = exps[0]
    if any(e != n for e in exps):
        return RegularGramResult(False, None, exps, None)
    witness = rho.scale(Fraction(1, A.prime**n))
    assert is_symmetrising(A, witness)
    z = casimir(A, witness)
    assert linalg.vectors_equal(z, A.scalar(Fraction(A.prime) ** n))
    return RegularGramResult(True, n, exps, witness)


# -- character-level computations ---------------------------------------


def schur_coefficients(A: Order, s: LinearForm, characters) -> np.ndarray:
    """Coefficients sigma with s = sum_chi sigma_chi chi on the basis.

    ``characters`` is a sequence of value vectors on the order basis.
    Raises when the characters do not span the form.
    """
    M = linalg.as_matrix(characters).T
    try:
        sigma = linalg.solve_exact(M, s.values)
    except ValueError:
        sigma = None
    if sigma is None:
        raise ValueError("characters do not span the form")
    return sigma


def casimir_spectrum_from_data(sigma, degrees) -> np.ndarray:
    """Casimir coordinates on the central idempotents: sigma_chi^{-1} chi(1)."""
    sigma = linalg.as_vector(sigma)
    degrees = linalg.as_vector(degrees)
    if any(x == 0 for x in sigma):
        raise ValueError("zero Schur coefficient")
    return linalg.as_vector([d / s for s, d in zip(sigma, degrees)])


def casimir_spectrum(A: Order, s: LinearForm, characters) -> np.ndarray:
    """Spectrum of the Casimir element on the central idempotents.

    Cross-checked against the expansion of the Casimir element over the
    rational central idempotents computed from the characters.
    """
    chars = linalg.as_matrix(characters)
    sigma = schur_coefficients(A, s, chars)
    degrees = [np.dot(chars[i], A.one) for i in range(chars.shape[0])]
    spectrum = casimir_spectrum_from_data(sigma, degrees)
    idems = central_idempotents(A, chars)
    z = casimir(A, s)
    recombined = A.zero()
    for c, e in zip(spectrum, idems):
        recombined = recombined + Fraction(c) * e
    assert linalg.vectors_equal(recombined, z)
    return spectrum


def scalar_spectrum_test(spectrum, p: int):
    """Valuation-level scalar test on a Casimir spectrum.

    Multiplying by a central unit leaves the valuation of every
    idempotent coordinate unchanged, so equal valuations across the
    spectrum are necessary for any twist to reach a scalar p^n.
    Returns (possible, n) where n is the common valuation if it exists.
    """
    vals = [val(c, p) for c in linalg.as_vector(spectrum)]
    if len(set(vals)) == 1 and vals[0] != INFINITY:
        return True, int(vals[0])
    return False, None


def central_idempotents(A: Order, characters) -> list:
    """Primitive central idempotents of the rational algebra.

    Solves, for each character chi, the linear system asking for a
    central element e with chi(e) = chi(1) and chi'(e) = 0 for the other
    characters; verifies idempotency.  Characters must be rational
    valued, one per simple factor.
    """
    chars = linalg.as_matrix(characters)
    r = chars.shape[0]
    blocks = []
    for i in range(A.dim):
        b = A.basis_element(i)
        blocks.append(A.left_matrix(b) - A.right_matrix(b))
    central_rows = np.concatenate(blocks, axis=0)
    out = []
    for k in range(r):
        rows = np.concatenate([central_rows, chars], axis=0)
        rhs = linalg.zero_vector(central_rows.shape[0] + r)
        rhs[central_rows.shape[0] + k] = np.dot(chars[k], A.one)
        try:
            e = linalg.solve_exact(rows, rhs)
        except ValueError:
            e = None
        if e is None:
            raise ValueError("system inconsistent")
        if not A.is_idempotent(e):
            raise ValueError("system inconsistent: solution not idempotent")
        out.append(e)
    return out


# -- forms on product orders ---------------------------------------------


def direct_product_form(sA: LinearForm, sB: LinearForm) -> LinearForm:
    return LinearForm(np.concatenate([sA.values, sB.values]))


def tensor_product_form(sA: LinearForm, sB: LinearForm) -> LinearForm:
    return LinearForm(np.outer(sA.values, sB.values).reshape(-1))
