import random
from fractions import Fraction

import numpy as np
import pytest

import symorders as so
from symorders import linalg
from symorders.builders import (
    four_dim_nonrational,
    matrix_order,
    rank2_embedding,
    rank2_order,
)
from symorders.forms import (
    LinearForm,
    NotSymmetrisingError,
    RegularGramSingularError,
    gram_matrix,
)


def test_is_symmetrising_examples(s3):
    A, s = s3
    assert so.is_symmetrising(A, s)
    rho = so.regular_character_form(A)
    assert not so.is_symmetrising(A, rho)  # Gram determinant valuation 6 > 0

    B, sb = four_dim_nonrational(3, 2)
    assert so.is_symmetrising(B, sb)


def test_dual_basis_rank2_split_coordinates():
    for m, p in [(1, 2), (2, 2), (1, 3)]:
        A, s = rank2_order(m, p)
        d = so.dual_basis(A, s)
        emb = rank2_embedding(m, p)
        pm = Fraction(p) ** m
        assert list(emb @ d.element(0)) == [-pm, Fraction(0)]
        assert list(emb @ d.element(1)) == [Fraction(1), Fraction(1)]


def test_dual_basis_group_inverse(s3):
    A, s = s3
    d = so.dual_basis(A, s)
    # dual of a group element is its inverse
    table, labels, _ = __import__(
        "symorders.builders", fromlist=["symmetric_group_table"]
    ).symmetric_group_table(3)
    for i in range(6):
        inv = next(j for j in range(6) if table[i][j] == 0)
        assert linalg.vectors_equal(d.element(i), A.basis_element(inv))


def test_dual_basis_matrix_order_trivial():
    A, s = matrix_order(1, 5)
    d = so.dual_basis(A, s)
    assert linalg.vectors_equal(d.element(0), A.one)


def test_dual_basis_requires_symmetrising(s3):
    A, _ = s3
    with pytest.raises(NotSymmetrisingError, match="form not symmetrising"):
        so.dual_basis(A, so.regular_character_form(A))


def test_casimir_values(s3):
    A, s = s3
    assert linalg.vectors_equal(so.casimir(A, s), A.scalar(6))
    for m, p in [(1, 2), (2, 2), (3, 5)]:
        R, sr = rank2_order(m, p)
        emb = rank2_embedding(m, p)
        z = so.casimir(R, sr)
        pm = Fraction(p) ** m
        assert list(emb @ z) == [-pm, pm]


def test_relative_trace(s3):
    A, s = s3
    # at the unit the relative trace is the Casimir element
    assert linalg.vectors_equal(so.relative_trace(A, s, A.one), so.casimir(A, s))
    # at a group element: the conjugation class sum, by direct expansion
    table, labels, _ = __import__(
        "symorders.builders", fromlist=["symmetric_group_table"]
    ).symmetric_group_table(3)
    g = 1
    expected = A.zero()
    for h in range(6):
        hinv = next(j for j in range(6) if table[h][j] == 0)
        expected = expected + A.multiply(
            A.multiply(A.basis_element(h), A.basis_element(g)), A.basis_element(hinv)
        )
    assert linalg.vectors_equal(so.relative_trace(A, s, A.basis_element(g)), expected)
    # central argument factors out
    z = so.relative_trace(A, s, A.scalar(5))
    assert linalg.vectors_equal(z, so.casimir(A, s) * Fraction(5))


def test_twist_form(s3):
    A, s = s3
    assert so.twist_form(A, s, A.one) == s
    twisted = so.twist_form(A, s, A.scalar(2))
    assert linalg.vectors_equal(so.casimir(A, twisted), A.scalar(3))
    with pytest.raises(ValueError, match="not a central unit"):
        so.twist_form(A, s, A.scalar(3))


def test_twist_law_random_central_units(s3):
    A, s = s3
    Z = A.center_basis()
    rng = random.Random(19)
    found = 0
    while found < 5:
        coords = [Fraction(rng.randint(-3, 3)) for _ in range(Z.shape[1])]
        z = Z @ linalg.as_vector(coords)
        if not (A.has_ring_coords(z) and A.is_unit(z)):
            continue
        found += 1
        twisted = so.twist_form(A, s, z)
        expected = A.multiply(so.casimir(A, s), A.invert(z))
        assert linalg.vectors_equal(so.casimir(A, twisted), expected)


def test_psp_direct_rank2_family(rank2_family):
    verdicts = {}
    for (m, p), (A, s, _) in rank2_family.items():
        cert = so.psp_direct(A, s)
        verdicts[(m, p)] = None if cert is None else cert.n
        if cert is not None:
            assert cert.verify(A)
    assert verdicts == {(1, 2): 1, (2, 2): None, (1, 3): None, (3, 5): None}


def test_psp_certificate_gram_consequence(s3):
    # with a certificate of exponent n, p^{-n} rho must be symmetrising
    A, s = s3
    cert = so.psp_direct(A, s)
    assert cert.n == 1
    rho = so.regular_character_form(A)
    scaled = rho.scale(Fraction(1, 3))
    G = gram_matrix(A, scaled)
    assert linalg.is_integral(G, 3)
    from symorders.padic import val

    assert val(linalg.det(G), 3) == 0


def test_psp_regular_gram(s3):
    A, _ = s3
    res = so.psp_regular_gram(A)
    assert res.verdict and res.n == 1
    assert res.exponents == (1, 1, 1, 1, 1, 1)

    R, _ = rank2_order(2, 3)
    res = so.psp_regular_gram(R)
    assert not res.verdict
    assert res.exponents == (0, 4)  # entry gcd a unit, determinant valuation 2m

    A1, _ = matrix_order(1, 2)
    B2, _ = matrix_order(2, 2)
    P = so.direct_product(A1, B2)
    res = so.psp_regular_gram(P)
    assert not res.verdict


def test_psp_regular_gram_singular():
    # nilpotent commutative algebra: 1, t with t^2 = 0
    structure = np.zeros((2, 2, 2), dtype=object)
    structure[:] = Fraction(0)
    structure[0, 0, 0] = Fraction(1)
    structure[0, 1, 1] = Fraction(1)
    structure[1, 0, 1] = Fraction(1)
    A = so.make_order(structure, [1, 0], 2)
    with pytest.raises(RegularGramSingularError, match="regular Gram singular"):
        so.psp_regular_gram(A)


def test_separability(s3, rank2_family):
    A, s = s3
    assert so.separability_check(A, s)
    R, sr, _ = rank2_family[(2, 2)]
    assert so.separability_check(R, sr)
    # dual numbers: Casimir 2t is nilpotent
    structure = np.zeros((2, 2, 2), dtype=object)
    structure[:] = Fraction(0)
    structure[0, 0, 0] = Fraction(1)
    structure[0, 1, 1] = Fraction(1)
    structure[1, 0, 1] = Fraction(1)
    D = so.make_order(structure, [1, 0], 3)
    s_nil = LinearForm([0, 1])
    assert so.is_symmetrising(D, s_nil)
    assert linalg.vectors_equal(so.casimir(D, s_nil), D.element([0, 2]))
    assert not so.separability_check(D, s_nil)


def test_schur_coefficients(s3, s3_chars):
    A, _ = s3
    rho_third = so.regular_character_form(A).scale(Fraction(1, 3))
    sigma = so.schur_coefficients(A, rho_third, s3_chars)
    assert list(sigma) == [Fraction(1, 3), Fraction(2, 3), Fraction(1, 3)]

    M, sm = matrix_order(2, 3)
    chars = [[1 if i in (0, 3) else 0 for i in range(4)]]
    assert list(so.schur_coefficients(M, sm, chars)) == [Fraction(1)]

    chi = LinearForm(s3_chars[1])
    sigma = so.schur_coefficients(A, chi, s3_chars)
    assert list(sigma) == [0, 1, 0]

    with pytest.raises(ValueError, match="characters do not span"):
        so.schur_coefficients(A, LinearForm([1, 0, 0, 0, 0, 0]), s3_chars[:2])


def test_casimir_spectrum(s3, s3_chars):
    A, s = s3
    rho_third = so.regular_character_form(A).scale(Fraction(1, 3))
    spec = so.casimir_spectrum(A, rho_third, s3_chars)
    assert list(spec) == [3, 3, 3]

    # data-level entry point for the condensed degrees
    sigma = [Fraction(1, 3), Fraction(2, 3), Fraction(1, 3)]
    spec = so.casimir_spectrum_from_data(sigma, [1, 3, 2])
    assert list(spec) == [Fraction(3), Fraction(9, 2), Fraction(6)]

    M, sm = matrix_order(3, 2)
    chars = [[1 if i % 4 == 0 else 0 for i in range(9)]]
    assert list(so.casimir_spectrum(M, sm, chars)) == [Fraction(3)]

    with pytest.raises(ValueError, match="zero Schur coefficient"):
        so.casimir_spectrum_from_data([0, 1], [1, 1])


def test_scalar_spectrum_test():
    ok, n = so.scalar_spectrum_test([Fraction(3), Fraction(9, 2), Fraction(6)], 3)
    assert not ok and n is None
    ok, n = so.scalar_spectrum_test([Fraction(6), Fraction(6), Fraction(6)], 3)
    assert ok and n == 1


def test_central_idempotents(s3, s3_chars):
    A, _ = s3
    idems = so.central_idempotents(A, s3_chars)
    # oracle: classical formula e = (deg/|G|) sum chi(g^{-1}) g
    table, labels, _ = __import__(
        "symorders.builders", fromlist=["symmetric_group_table"]
    ).symmetric_group_table(3)
    for chi, e in zip(s3_chars, idems):
        deg = chi[0]
        expected = A.zero()
        for g in range(6):
            ginv = next(j for j in range(6) if table[g][j] == 0)
            expected[g] = Fraction(deg, 6) * chi[ginv]
        assert linalg.vectors_equal(e, expected)

    R, _ = rank2_order(2, 2)
    emb = rank2_embedding(2, 2)
    chars = [[1, 0], [1, 4]]
    e1, e2 = so.central_idempotents(R, chars)
    assert list(emb @ e1) == [1, 0]
    assert list(emb @ e2) == [0, 1]

    M, _ = matrix_order(2, 5)
    (e,) = so.central_idempotents(M, [[1 if i in (0, 3) else 0 for i in range(4)]])
    assert linalg.vectors_equal(e, M.one)


def test_central_idempotents_inconsistent(s3):
    A, _ = s3
    with pytest.raises(ValueError, match="system inconsistent"):
        so.central_idempotents(A, [[1, 0, 0, 0, 0, 0]])


def test_psp_products_and_tensors():
    # scalar property passes to tensor products
    A1, s1 = matrix_order(1, 2)
    B2, s2 = matrix_order(2, 2)
    from symorders.forms import direct_product_form, tensor_product_form

    P = so.direct_product(A1, B2)
    sp = direct_product_form(s1, s2)
    assert so.is_symmetrising(P, sp)
    assert so.psp_direct(P, sp) is None  # distinct factor exponents at p = 2

    PP = so.direct_product(A1, A1)
    assert so.psp_direct(PP, direct_product_form(s1, s1)).n == 0

    R, sr = rank2_order(1, 2)
    T = so.tensor_product(R, R)
    st = tensor_product_form(sr, sr)
    cert = so.psp_direct(T, st)
    assert cert is not None and cert.n == 2
