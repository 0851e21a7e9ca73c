from fractions import Fraction

import pytest

import symorders as so
from symorders.builders import (
    hecke_rank1,
    matrix_column_lattice,
    matrix_order,
    rank2_order,
    rank2_projection_lattice,
    s3_characters,
    s3_fixture_bundle,
    s3_group_algebra,
)


@pytest.fixture(scope="session")
def s3():
    return s3_group_algebra(3)


@pytest.fixture(scope="session")
def s3_chars():
    return s3_characters()


@pytest.fixture(scope="session")
def s3_table(s3, s3_chars):
    A, _ = s3
    return so.make_character_table(s3_chars, A, names=("chi_3", "chi_21", "chi_111"))


@pytest.fixture(scope="session")
def s3_decomposition(s3_table):
    return so.make_decomposition_matrix(
        [[1, 0], [1, 1], [0, 1]], (1, 1), s3_table.degrees
    )


@pytest.fixture(scope="session")
def s3_lattices(s3, s3_chars):
    A, _ = s3
    trivial = so.make_lattice(A, [[[Fraction(1)]] for _ in range(A.dim)])
    sign = so.make_lattice(A, [[[v]] for v in s3_chars[2]])
    regular = so.regular_lattice(A)
    return {"trivial": trivial, "sign": sign, "regular": regular}


@pytest.fixture(scope="session")
def s3_bundle():
    return s3_fixture_bundle(3)


@pytest.fixture(scope="session")
def rank2_family():
    out = {}
    for m, p in [(1, 2), (2, 2), (1, 3), (3, 5)]:
        A, s = rank2_order(m, p)
        out[(m, p)] = (A, s, rank2_projection_lattice(A))
    return out


@pytest.fixture(scope="session")
def m2_at_2():
    A, s = matrix_order(2, 2)
    return A, s, matrix_column_lattice(A, 2)


@pytest.fixture(scope="session")
def hecke_family():
    return {q: hecke_rank1(q, 2) for q in (3, 5, 7, 9)}
