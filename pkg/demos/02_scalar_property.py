"""Deciding the projective scalar property two independent ways.

The direct algorithm searches the finitely many scalars p^t that the
Casimir orbit could reach; the regular-Gram algorithm reads the answer
off the Smith exponents of the regular character's Gram matrix.

Run:  python demos/02_scalar_property.py
"""

import symorders as so
from symorders.builders import (
    character_ring,
    cyclic_group_table,
    group_algebra,
    hecke_rank1,
    matrix_order,
    rank2_order,
    s3_character_ring_data,
    s3_group_algebra,
)
from symorders.forms import direct_product_form, tensor_product_form
from symorders.orders import direct_product, tensor_product


def verdict(A, s, label):
    cert = so.psp_direct(A, s)
    gram = so.psp_regular_gram(A)
    assert (cert is not None) == gram.verdict
    n = cert.n if cert else "-"
    print(f"  {label:26s} scalar property: {gram.verdict!s:5s}  n = {n}"
          f"  (Gram exponents {gram.exponents})")
    return cert


print("rank-2 local family: the property needs p = 2 and depth 1")
for m, p in [(1, 2), (2, 2), (1, 3), (3, 5)]:
    A, s = rank2_order(m, p)
    verdict(A, s, f"depth {m}, p = {p}")

print("group algebras and matrix orders always have it")
A, s = s3_group_algebra(3)
verdict(A, s, "three-points group algebra")
for n, p in [(1, 2), (2, 2), (2, 3)]:
    M, sm = matrix_order(n, p)
    verdict(M, sm, f"{n} x {n} matrices, p = {p}")

print("products can break it (factors with different exponents at p = 2)")
A1, s1 = matrix_order(1, 2)
B2, s2 = matrix_order(2, 2)
verdict(direct_product(A1, B2), direct_product_form(s1, s2), "trivial x 2x2")
verdict(direct_product(A1, A1), direct_product_form(s1, s1), "trivial x trivial")

print("tensor products preserve it (exponents add)")
table2, labels2 = cyclic_group_table(2)
C2, sc = group_algebra(table2, 2, labels=labels2)
verdict(tensor_product(C2, C2), tensor_product_form(sc, sc), "C2 tensor C2")

print("rank-1 Hecke orders: verdicts recorded per parameter, no congruence"
      " class is hard-coded")
for q in (3, 5, 7, 9):
    H, sh = hecke_rank1(q, 2)
    verdict(H, sh, f"q = {q} (q mod 4 = {q % 4})")

print("character rings: scalar property only in the abelian situation")
tab, sizes = s3_character_ring_data()
A, s = character_ring(tab, sizes, 3)
verdict(A, s, "characters of three points")
A, s = character_ring([[1, 1], [1, -1]], [1, 1], 2)
verdict(A, s, "characters of two points")
