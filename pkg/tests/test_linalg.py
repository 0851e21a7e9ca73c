import math
import random
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from symorders import linalg
from symorders.padic import val


def test_smith_examples():
    snf = linalg.smith_normal_form([[2, 2], [2, 4]], 2)
    assert snf.exponents == (1, 1)
    snf = linalg.smith_normal_form(linalg.identity(3), 5)
    assert snf.exponents == (0, 0, 0)
    snf = linalg.smith_normal_form([[2, 4], [4, 16]], 2)
    assert snf.exponents == (1, 3)


def test_smith_decomposition_postconditions():
    M = linalg.as_matrix([[2, 2, 6], [2, 4, 0]])
    snf = linalg.smith_normal_form(M, 2)
    D = snf.left @ M @ snf.right
    expected = snf.diagonal(2, (2, 3))
    assert linalg.matrices_equal(D, expected)
    assert linalg.is_ring_invertible(snf.left, 2)
    assert linalg.is_ring_invertible(snf.right, 2)


def _minor_gcd_valuation(M, r, p):
    """Oracle: minimal valuation over all r x r minors."""
    m, n = M.shape
    best = math.inf
    for rows in combinations(range(m), r):
        for cols in combinations(range(n), r):
            sub = M[np.ix_(rows, cols)]
            d = linalg.det(sub)
            if d != 0:
                best = min(best, val(d, p))
    return best


@pytest.mark.parametrize("seed", range(6))
def test_smith_exponents_match_minor_gcds(seed):
    rng = random.Random(seed)
    p = rng.choice([2, 3])
    m, n = rng.randint(1, 4), rng.randint(1, 4)
    M = linalg.as_matrix(
        [[Fraction(rng.randint(-8, 8)) for _ in range(n)] for _ in range(m)]
    )
    snf = linalg.smith_normal_form(M, p)
    total = 0
    for r, e in enumerate(snf.exponents, start=1):
        total += e
        assert _minor_gcd_valuation(M, r, p) == total


def _random_ring_invertible(rng, n, p):
    while True:
        M = linalg.as_matrix(
            [[Fraction(rng.randint(-4, 4)) for _ in range(n)] for _ in range(n)]
        )
        d = linalg.det(M)
        if d != 0 and val(d, p) == 0:
            return M


@pytest.mark.parametrize("seed", range(4))
def test_smith_invariance_under_unimodular_transforms(seed):
    rng = random.Random(100 + seed)
    p = rng.choice([2, 3, 5])
    n = rng.randint(2, 3)
    M = linalg.as_matrix(
        [[Fraction(rng.randint(-9, 9)) for _ in range(n)] for _ in range(n)]
    )
    L = _random_ring_invertible(rng, n, p)
    R = _random_ring_invertible(rng, n, p)
    before = linalg.smith_normal_form(M, p).exponents
    after = linalg.smith_normal_form(L @ M @ R, p).exponents
    assert before == after


def test_integral_kernel_examples():
    K = linalg.integral_kernel([[1, -1]], 2)
    assert K.shape == (2, 1)
    assert abs(K[0, 0]) == 1 and K[0, 0] == K[1, 0]

    K = linalg.integral_kernel([[2, -1]], 3)
    v = K[:, 0]
    assert 2 * v[0] - v[1] == 0
    assert abs(v[0]) == 1  # (1, 2) up to sign: saturated

    K = linalg.integral_kernel(linalg.zeros(1, 2), 2)
    assert linalg.matrices_equal(K, linalg.identity(2))


@pytest.mark.parametrize("seed", range(5))
def test_integral_kernel_saturated(seed):
    rng = random.Random(200 + seed)
    p = rng.choice([2, 3])
    m, n = rng.randint(1, 3), rng.randint(2, 4)
    M = linalg.as_matrix(
        [[Fraction(rng.randint(-6, 6)) for _ in range(n)] for _ in range(m)]
    )
    K = linalg.integral_kernel(M, p)
    for j in range(K.shape[1]):
        v = K[:, j]
        assert all(x == 0 for x in np.array(linalg.as_matrix(M)) @ v)
        assert linalg.is_integral(v, p)
        shrunk = v / Fraction(p)
        # dividing a basis vector by p must leave the ring-entry solutions
        assert not (
            linalg.is_integral(shrunk, p)
            and linalg.lattice_membership(shrunk, K, p) is not None
        )


def test_lattice_quotient_examples():
    inv = linalg.lattice_quotient_invariants([[Fraction(3)]], [[Fraction(1)]], 3)
    assert inv.exponents == (1,) and inv.free_rank == 0
    # 6 = unit * 3 in the 3-local integers
    inv = linalg.lattice_quotient_invariants([[Fraction(6)]], [[Fraction(1)]], 3)
    assert inv.exponents == (1,)
    inv = linalg.lattice_quotient_invariants([[Fraction(1)]], [[Fraction(1)]], 3)
    assert inv.exponents == () and inv.free_rank == 0
    with pytest.raises(linalg.NotSublatticeError, match="not a sublattice"):
        linalg.lattice_quotient_invariants([[Fraction(1, 3)]], [[Fraction(1)]], 3)


def test_lattice_quotient_free_rank():
    sup = linalg.identity(2)
    inv = linalg.lattice_quotient_invariants([[Fraction(2)], [Fraction(0)]], sup, 2)
    assert inv.exponents == (1,) and inv.free_rank == 1


def test_lattice_basis_from_generators_keeps_index():
    gens = linalg.as_matrix([[2, 4], [0, 0]])
    basis = linalg.lattice_basis_from_generators(gens, 2)
    assert basis.shape == (2, 1)
    assert abs(basis[0, 0]) == 2 and basis[1, 0] == 0


def test_solve_and_inverse():
    M = linalg.as_matrix([[1, 2], [3, 5]])
    x = linalg.solve_exact(M, linalg.as_vector([1, 0]))
    assert list(M @ x) == [Fraction(1), Fraction(0)]
    assert linalg.matrices_equal(M @ linalg.inverse(M), linalg.identity(2))
    assert linalg.det(M) == -1
    # inconsistent overdetermined system
    assert linalg.solve_exact([[1], [1]], linalg.as_vector([1, 2])) is None


def test_left_null_space():
    M = linalg.as_matrix([[1, 2], [2, 4], [0, 1]])
    N = linalg.left_null_space(M)
    assert N.shape[0] == 1
    assert all(x == 0 for x in (N @ M).reshape(-1))
