"""Finite-rank associative algebras over the p-local integers.

An :class:`Order` is given by integral structure constants on a fixed
basis, ``b_i b_j = sum_k structure[i, j, k] b_k``, together with the
coordinate vector of its unit.  Elements of the order and of its
rational span are plain coordinate vectors (object arrays of
Fractions); elements with non-ring coordinates are allowed wherever an
operation makes sense rationally (inverses, idempotents of the rational
algebra, and so on).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg
from .padic import Prime, val


class InvalidOrderError(ValueError):
    pass


class NotInvertibleError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Order:
    """Unital associative algebra, free of finite rank over the ring."""

    prime: Prime
    dim: int
    structure: np.ndarray  # (dim, dim, dim), ring entries
    one: np.ndarray  # (dim,)
    basis_labels: tuple = field(default=None)

    # -- elements ----------------------------------------------------

    def element(self, coords) -> np.ndarray:
        v = linalg.as_vector(coords)
        if v.shape != (self.dim,):
            raise ValueError("coordinate vector of wrong length")
        return v

    def zero(self) -> np.ndarray:
        return linalg.zero_vector(self.dim)

    def basis_element(self, i: int) -> np.ndarray:
        v = self.zero()
        v[i] = Fraction(1)
        return v

    def scalar(self, c) -> np.ndarray:
        return self.one * Fraction(c)

    def has_ring_coords(self, a) -> bool:
        return linalg.is_integral(a, self.prime)

    # -- multiplication ----------------------------------------------

    def multiply(self, a, b) -> np.ndarray:
        inner = np.tensordot(linalg.as_vector(b), self.structure, axes=([0], [1]))
        return np.tensordot(linalg.as_vector(a), inner, axes=([0], [0]))

    def left_matrix(self, a) -> np.ndarray:
        """Matrix of x -> a x on the basis (columns are a * b_j)."""
        return np.tensordot(linalg.as_vector(a), self.structure, axes=([0], [0])).T

    def right_matrix(self, a) -> np.ndarray:
        """Matrix of x -> x a on the basis."""
        return np.tensordot(self.structure, linalg.as_vector(a), axes=([1], [0])).T

    def regular_character(self, a) -> Fraction:
        """Trace of left multiplication by a."""
        L = self.left_matrix(a)
        return sum((L[i, i] for i in range(self.dim)), Fraction(0))

    # -- predicates ---------------------------------------------------

    def is_central(self, a) -> bool:
        a = linalg.as_vector(a)
        La = self.left_matrix(a)
        Ra = self.right_matrix(a)
        return linalg.matrices_equal(La, Ra)

    def is_idempotent(self, a) -> bool:
        a = linalg.as_vector(a)
        return linalg.vectors_equal(self.multiply(a, a), a)

    def is_unit(self, a) -> bool:
        if not self.has_ring_coords(a):
            raise ValueError("is_unit needs ring coordinates")
        return val(linalg.det(self.left_matrix(a)), self.prime) == 0

    # -- rational-algebra operations ----------------------------------

    def invert(self, a) -> np.ndarray:
        """Inverse in the rational algebra; raises NotInvertibleError."""
        L = self.left_matrix(a)
        b = linalg.solve_exact(L, self.one) if linalg.det(L) != 0 else None
        if b is None:
            raise NotInvertibleError("not invertible in K⊗A")
        assert linalg.vectors_equal(self.multiply(b, a), self.one)
        return b

    def center_basis(self) -> np.ndarray:
        """Saturated lattice basis (columns) of the center."""
        blocks = []
        for i in range(self.dim):
            b = self.basis_element(i)
            blocks.append(self.left_matrix(b) - self.right_matrix(b))
        stacked = np.concatenate(blocks, axis=0)
        return linalg.integral_kernel(stacked, self.prime)


def make_order(structure, one, p, basis_labels=None) -> Order:
    """Validate structure constants and build an Order.

    Checks run at construction: every structure constant lies in the
    ring, the designated vector is a two-sided unit, and associativity
    holds on all basis triples (verified as L_{b_i b_j} = L_{b_i} L_{b_j}
    for all pairs, which covers every triple).
    """
    p = Prime(p)
    structure = np.asarray(structure, dtype=object)
    dim = structure.shape[0]
    if structure.shape != (dim, dim, dim):
        raise InvalidOrderError("structure constants must form a cube")
    flat = linalg.as_matrix(structure.reshape(dim, dim * dim))
    if not linalg.is_integral(flat, p):
        raise InvalidOrderError("non-integral structure constant")
    structure = np.array(flat.reshape(dim, dim, dim))
    one = linalg.as_vector(one)

    A = Order(prime=p, dim=dim, structure=structure, one=one,
              basis_labels=tuple(basis_labels) if basis_labels else None)

    ident = linalg.identity(dim)
    if not (linalg.matrices_equal(A.left_matrix(one), ident)
            and linalg.matrices_equal(A.right_matrix(one), ident)):
        raise InvalidOrderError("unit fails")

    lefts = [A.left_matrix(A.basis_element(i)) for i in range(dim)]
    for i in range(dim):
        for j in range(dim):
            Lij = sum(
                (structure[i, j, k] * lefts[k] for k in range(dim)),
                linalg.zeros(dim, dim),
            )
            actual = lefts[i] @ lefts[j]
            if not linalg.matrices_equal(actual, Lij):
                k = next(
                    c
                    for c in range(dim)
                    if not linalg.vectors_equal(actual[:, c], Lij[:, c])
                )
                raise InvalidOrderError(f"not associative: basis triple ({i}, {j}, {k})")
    return A


def condense(A: Order, e) -> tuple:
    """Corner order e A e for an idempotent e, with embedding data.

    Returns (order, embedding) where the columns of ``embedding`` express
    the new basis as elements of A.  The generating set {e b_i e} spans
    e A e as a lattice; a basis is extracted with Smith normal form and
    then saturated inside A (intersection of the rational span with the
    ring vectors), so the corner is a full lattice in its rational span.
    """
    e = A.element(e)
    if not A.has_ring_coords(e):
        raise InvalidOrderError("idempotent must have ring coordinates")
    if not A.is_idempotent(e):
        raise InvalidOrderError("not idempotent")
    if all(x == 0 for x in e):
        raise InvalidOrderError("not idempotent: condensation by zero")
    gens = []
    for i in range(A.dim):
        g = A.multiply(A.multiply(e, A.basis_element(i)), e)
        gens.append(g)
    G = np.array(gens, dtype=object).T
    spanning = linalg.lattice_basis_from_generators(G, A.prime)
    ann = linalg.left_null_space(spanning)
    if ann.shape[0]:
        embedding = linalg.integral_kernel(ann, A.prime)
    else:
        embedding = linalg.identity(A.dim)
    rank = embedding.shape[1]
    structure = np.empty((rank, rank, rank), dtype=object)
    for i in range(rank):
        for j in range(rank):
            prod = A.multiply(embedding[:, i], embedding[:, j])
            coords = linalg.solve_exact(embedding, prod)
            assert coords is not None and linalg.is_integral(coords, A.prime)
            structure[i, j, :] = coords
    unit = linalg.solve_exact(embedding, e)
    assert unit is not None and linalg.is_integral(unit, A.prime)
    corner = make_order(structure, unit, A.prime)
    return corner, embedding


def direct_product(A: Order, B: Order) -> Order:
    """Block-diagonal product order on the concatenated bases."""
    if A.prime != B.prime:
        raise InvalidOrderError("direct product needs a common prime")
    n = A.dim + B.dim
    structure = np.empty((n, n, n), dtype=object)
    structure[:] = Fraction(0)
    structure[: A.dim, : A.dim, : A.dim] = A.structure
    structure[A.dim:, A.dim:, A.dim:] = B.structure
    one = np.concatenate([A.one, B.one])
    return make_order(structure, one, A.prime)


def tensor_product(A: Order, B: Order) -> Order:
    """Tensor product order on the basis pairs (i, j) -> i * dim(B) + j."""
    if A.prime != B.prime:
        raise InvalidOrderError("tensor product needs a common prime")
    da, db = A.dim, B.dim
    n = da * db
    structure = np.empty((n, n, n), dtype=object)
    for i1 in range(da):
        for j1 in range(db):
            for i2 in range(da):
                for j2 in range(db):
                    block = np.outer(A.structure[i1, i2], B.structure[j1, j2])
                    structure[i1 * db + j1, i2 * db + j2, :] = block.reshape(n)
    one = np.outer(A.one, B.one).reshape(n)
    return make_order(structure, one, A.prime)


def regular_lattice_actions(A: Order) -> list:
    """Left regular action matrices, one per basis element."""
    return [A.left_matrix(A.basis_element(i)) for i in range(A.dim)]
